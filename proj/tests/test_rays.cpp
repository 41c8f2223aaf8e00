#include <gtest/gtest.h>

#include <random>

#include "ksobs/rays.hpp"
#include "support.hpp"

using namespace ksobs;

namespace {

using Q = QuadScalar;

Vector<Q> v(std::initializer_list<int> xs) {
  Vector<Q> out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (int x : xs) out(i++) = Q(x);
  return out;
}

Subspace<Q> span_of(std::initializer_list<Vector<Q>> vs) { return span(std::vector<Vector<Q>>(vs)); }

Vector<Q> random_vector(std::mt19937_64& rng, int n, int range) {
  std::uniform_int_distribution<int> coef(-range, range);
  Vector<Q> out(n);
  for (int i = 0; i < n; ++i) out(i) = Q(coef(rng));
  return out;
}

}  // namespace

TEST(Canonicalize, Examples) {
  EXPECT_EQ(canonicalize(v({0, 2, 0})).vector(), v({0, 1, 0}));
  EXPECT_EQ(canonicalize(v({-1, 1, 1})).vector(), v({1, -1, -1}));
  try {
    canonicalize(v({0, 0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroVector);
  }
}

TEST(Canonicalize, SignAndScaleInvariant) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    auto x = random_vector(rng, 4, 5);
    if (is_zero_vector(x)) continue;
    const auto s = fixtures::random_quad(rng, 2, 9);
    if (s.is_zero()) continue;
    Vector<Q> scaled = x;
    for (Eigen::Index k = 0; k < scaled.size(); ++k) scaled(k) = scaled(k) * s;
    ASSERT_EQ(canonicalize(x), canonicalize(scaled));
  }
}

TEST(Inner, Examples) {
  EXPECT_EQ(inner(v({1, 0, -1}), v({1, 1, 1})), Q(0));
  EXPECT_EQ(inner(v({1, 0, -1}), v({1, 0, 1})), Q(0));
  EXPECT_EQ(inner(v({1, 1, 0}), v({1, 0, 0})), Q(1));
  try {
    inner(v({1, 0}), v({1, 0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
  }
}

TEST(Orthocomplement, Examples) {
  EXPECT_EQ(orthocomplement(span_of({v({1, 0, 0}), v({0, 1, 0})})), span_of({v({0, 0, 1})}));
  EXPECT_EQ(orthocomplement(span_of({v({1, 0, -1}), v({1, 1, 1})})), span_of({v({1, -2, 1})}));
  EXPECT_EQ(orthocomplement(span_of({v({1, 0, 1, 0}), v({-1, 0, 1, 0})})),
            span_of({v({0, 1, 0, 0}), v({0, 0, 0, 1})}));
  try {
    orthocomplement(span_of({v({1, 0}), v({0, 1})}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FullRank);
  }
}

TEST(Span, Examples) {
  const auto s = span_of({v({1, 0, 1, 0}), v({-1, 0, 1, 0})});
  Matrix<Q> expected(2, 4);
  expected << Q(1), Q(0), Q(0), Q(0), Q(0), Q(0), Q(1), Q(0);
  EXPECT_EQ(s.basis(), expected);
  EXPECT_EQ(span_of({v({0, 1, 0})}).basis(), Matrix<Q>(v({0, 1, 0}).transpose()));
  const auto dep = span_of({v({1, 1, 0}), v({2, 2, 0})});
  EXPECT_EQ(dep.rank(), 1);
  EXPECT_EQ(dep, span_of({v({1, 1, 0})}));
  EXPECT_THROW(span_of({v({0, 0, 0})}), Error);
}

TEST(Contains, Examples) {
  EXPECT_TRUE(contains(span_of({v({1, 0, 0}), v({0, 0, 1})}), span_of({v({1, 0, 0})})));
  EXPECT_FALSE(contains(span_of({v({1, 0, 0})}), span_of({v({0, 1, 0})})));
  EXPECT_TRUE(contains(span_of({v({1, 0, 0, 0}), v({0, 0, 1, 0})}), span_of({v({1, 0, 1, 0})})));
  EXPECT_THROW(contains(span_of({v({1, 0, 0})}), span_of({v({1, 0})})), Error);
}

TEST(SubspaceProperty, RrefIsUniqueAcrossGenerators) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    std::vector<Vector<Q>> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(random_vector(rng, 5, 4));
    bool all_zero = true;
    for (const auto& g : gens) all_zero = all_zero && is_zero_vector(g);
    if (all_zero) continue;
    const auto s = span(gens);
    // same space from shuffled, recombined generators
    std::vector<Vector<Q>> other = {gens[2] + gens[0], gens[1] - gens[2] * Q(3), gens[0] * Q(2)};
    std::vector<Vector<Q>> mixed = other;
    mixed.insert(mixed.end(), gens.begin(), gens.end());
    ASSERT_EQ(span(mixed), s);
    if (span(other).rank() == s.rank()) ASSERT_EQ(span(other), s);
  }
}

TEST(SubspaceProperty, OrthocomplementInvolutionAndRankSum) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    std::vector<Vector<Q>> gens;
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < count; ++k) gens.push_back(random_vector(rng, 4, 3));
    bool all_zero = true;
    for (const auto& g : gens) all_zero = all_zero && is_zero_vector(g);
    if (all_zero) continue;
    const auto s = span(gens);
    if (s.rank() == 4) continue;
    const auto perp = orthocomplement(s);
    ASSERT_EQ(s.rank() + perp.rank(), 4);
    ASSERT_TRUE(orthogonal(s, perp));
    ASSERT_EQ(orthocomplement(perp), s);
  }
}

TEST(InnerProperty, BilinearAndSymmetric) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 1000; ++i) {
    Vector<Q> x(3), y(3), z(3);
    for (int k = 0; k < 3; ++k) {
      x(k) = fixtures::random_quad(rng, 2, 20);
      y(k) = fixtures::random_quad(rng, 2, 20);
      z(k) = fixtures::random_quad(rng, 2, 20);
    }
    const auto c = fixtures::random_quad(rng, 2, 20);
    ASSERT_EQ(inner(x, y), inner(y, x));
    Vector<Q> combo(3);
    for (int k = 0; k < 3; ++k) combo(k) = x(k) * c + y(k);
    ASSERT_EQ(inner(combo, z), c * inner(x, z) + inner(y, z));
  }
}

TEST(Approx, OrthocomplementToleratesRounding) {
  using A = ApproxScalar;
  Vector<A> a(3), b(3);
  const double s = std::sqrt(0.5);
  a << A(s, 1e-12), A(s, 1e-12), A(0, 1e-12);
  b << A(s, 1e-12), A(-s, 1e-12), A(0, 1e-12);
  const auto perp = orthocomplement(span(std::vector<Vector<A>>{a, b}));
  ASSERT_EQ(perp.rank(), 1);
  EXPECT_TRUE(perp.contains_vector(make_vector<A>({A(0, 1e-12), A(0, 1e-12), A(1, 1e-12)})));
}
