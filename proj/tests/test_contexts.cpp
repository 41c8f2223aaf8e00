#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ksobs/contexts.hpp"
#include "ksobs/loops.hpp"
#include "support.hpp"

using namespace ksobs;

namespace {

using Q = QuadScalar;

Ray<Q> ray(std::initializer_list<int> xs) {
  Vector<Q> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (int x : xs) v(i++) = Q(x);
  return canonicalize(v);
}

const ExactCoordinates& exact(const RaySet& s) { return std::get<ExactCoordinates>(s.coords); }

std::vector<Ray<Q>> mermin_rays(const RaySet& set, const std::vector<std::string>& labels) {
  std::vector<Ray<Q>> out;
  for (const auto& l : labels) {
    auto it = std::find(set.labels.begin(), set.labels.end(), l);
    out.push_back(exact(set).rays.at(static_cast<std::size_t>(it - set.labels.begin())));
  }
  return out;
}

}  // namespace

TEST(Signatures, ParseAndDefaults) {
  EXPECT_EQ(parse_signature("2-1-1"), (Signature{2, 1, 1}));
  EXPECT_EQ(parse_signature("1,3"), (Signature{3, 1}));
  EXPECT_EQ(format_signature({2, 2}), "2-2");
  EXPECT_EQ(all_degenerate_signatures(3), (std::vector<Signature>{{2, 1}}));
  auto four = all_degenerate_signatures(4);
  std::sort(four.begin(), four.end());
  EXPECT_EQ(four, (std::vector<Signature>{{2, 1, 1}, {2, 2}, {3, 1}}));
}

TEST(MaximalContexts, Clifton) {
  const auto a = analyze(builtin("clifton8"));
  EXPECT_EQ(a.frame.contexts.size(), 7u);
  auto aux = a.frame.auxiliary_labels();
  std::sort(aux.begin(), aux.end());
  EXPECT_EQ(aux, (std::vector<std::string>{"A", "B", "C", "D", "E"}));
}

TEST(MaximalContexts, Peres) {
  const auto a = analyze(builtin("peres33"));
  EXPECT_EQ(a.frame.contexts.size(), 40u);
  EXPECT_EQ(a.frame.auxiliary_labels().size(), 24u);
  EXPECT_EQ(a.poset.maximal_count(), 40u);
}

TEST(MaximalContexts, CompletionOfTwoAxes) {
  const auto gf = maximal_contexts<Q>({ray({1, 0, 0}), ray({0, 1, 0})}, {"x", "y"}, true);
  ASSERT_EQ(gf.frame.contexts.size(), 1u);
  ASSERT_EQ(gf.rays.size(), 3u);
  EXPECT_EQ(gf.rays[2], ray({0, 0, 1}));
  EXPECT_EQ(gf.frame.auxiliary_labels().size(), 1u);
  EXPECT_TRUE(maximal_contexts<Q>({ray({1, 0, 0}), ray({0, 1, 0})}, {"x", "y"}, false).frame.contexts.empty());
}

TEST(MaximalContexts, InputOrderDoesNotMatter) {
  const auto set = builtin("clifton8");
  const auto& rays = exact(set).rays;
  std::vector<std::size_t> order(rays.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(41);
  auto contexts_by_ray = [](const GeometricFrame<Q>& gf) {
    std::vector<std::vector<std::vector<int>>> out;
    for (const auto& ctx : gf.frame.contexts) {
      std::vector<std::vector<int>> members;
      for (RayId r : ctx) {
        std::vector<int> coords;
        for (Eigen::Index k = 0; k < 3; ++k) {
          coords.push_back(static_cast<int>(gf.rays[static_cast<std::size_t>(r)].vector()(k).a().to_double()));
        }
        members.push_back(coords);
      }
      out.push_back(members);
    }
    return out;
  };
  const auto reference = contexts_by_ray(maximal_contexts(rays, set.labels, true));
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Ray<Q>> shuffled;
    std::vector<std::string> labels;
    for (auto i : order) {
      shuffled.push_back(rays[i]);
      labels.push_back(set.labels[i]);
    }
    EXPECT_EQ(contexts_by_ray(maximal_contexts(shuffled, labels, true)), reference);
  }
}

TEST(Subalgebras, Counts) {
  EXPECT_EQ(subalgebras_of(3, {{2, 1}}).size(), 3u);
  EXPECT_EQ(subalgebras_of(4, {{2, 2}}).size(), 3u);
  EXPECT_EQ(subalgebras_of(4, {{3, 1}}).size(), 4u);
  EXPECT_EQ(subalgebras_of(4, {{2, 1, 1}}).size(), 6u);
  for (const auto& c : subalgebras_of(3, {{2, 1}})) {
    EXPECT_EQ(c.block_count, 2);
    EXPECT_EQ(c.signature, (Signature{2, 1}));
  }
}

TEST(BuildPoset, SingleMaximalIn3D) {
  const auto gf = maximal_contexts<Q>({ray({1, 0, 0}), ray({0, 1, 0}), ray({0, 0, 1})}, {"a", "b", "c"}, false);
  const auto gp = build_poset(gf, {{2, 1}});
  EXPECT_EQ(gp.poset.algebras.size(), 4u);
  EXPECT_EQ(gp.poset.edges.size(), 3u);
  for (const auto& alg : gp.poset.algebras) {
    if (alg.maximal) continue;
    EXPECT_EQ(alg.atoms.size(), 2u);
    EXPECT_TRUE(gp.poset.includes(alg.id, 0));
  }
}

TEST(BuildPoset, MerminTetradsShareTwoTwoAlgebra) {
  const auto set = builtin("mermin24");
  const std::vector<std::string> labels = {"A1", "A2", "A3", "A4", "D1", "D2", "D3", "D4"};
  const auto rays = mermin_rays(set, labels);
  const auto gf = declared_contexts(rays, labels, {{"A1", "A2", "A3", "A4"}, {"D1", "D2", "D3", "D4"}});
  const auto gp = build_poset(gf, {{2, 2}});
  const auto& p = gp.poset;
  EXPECT_EQ(p.maximal_count(), 2u);
  EXPECT_EQ(p.algebras.size(), 2u + 3u + 3u - 1u);
  std::vector<AlgebraId> shared;
  for (const auto& alg : p.algebras) {
    if (!alg.maximal && p.maximal_parents(alg.id).size() == 2) shared.push_back(alg.id);
  }
  ASSERT_EQ(shared.size(), 1u);
  const auto& alg = p.algebra(shared.front());
  const auto d13 = span(std::vector<Ray<Q>>{rays[4], rays[6]});
  const auto d24 = span(std::vector<Ray<Q>>{rays[5], rays[7]});
  EXPECT_EQ(d13, span(std::vector<Ray<Q>>{rays[0], rays[1]}));
  EXPECT_EQ(d24, span(std::vector<Ray<Q>>{rays[2], rays[3]}));
  std::vector<Subspace<Q>> atoms;
  for (ProjectorId a : alg.atoms) atoms.push_back(gp.spaces.at(static_cast<std::size_t>(a)));
  EXPECT_TRUE(std::find(atoms.begin(), atoms.end(), d13) != atoms.end());
  EXPECT_TRUE(std::find(atoms.begin(), atoms.end(), d24) != atoms.end());
}

TEST(BuildPoset, DisjointMaximalsShareNothing) {
  // two bases of 3D with no common ray and no common 2-plane
  const std::vector<Ray<Q>> rays = {ray({1, 0, 0}), ray({0, 1, 1}), ray({0, 1, -1}),
                                    ray({1, 1, 0}), ray({1, -1, 0}), ray({0, 0, 1})};
  const auto gf = declared_contexts<Q>(rays, {"a", "b", "c", "d", "e", "f"}, {{"a", "b", "c"}, {"d", "e", "f"}});
  const auto gp = build_poset(gf, {{2, 1}});
  EXPECT_EQ(gp.poset.maximal_count(), 2u);
  EXPECT_EQ(gp.poset.algebras.size(), 8u);
  for (const auto& alg : gp.poset.algebras) EXPECT_EQ(gp.poset.maximal_parents(alg.id).size(), 1u);
  EXPECT_TRUE(reduce(gp.poset).degenerates.empty());
  // maximals alone
  const auto bare = build_poset(gf, {});
  EXPECT_EQ(bare.poset.algebras.size(), 2u);
  EXPECT_TRUE(bare.poset.edges.empty());
}

TEST(BuildPoset, CliftonSharedDegenerates) {
  const auto a = analyze(builtin("clifton8"));
  const auto g = reduce(a.poset);
  EXPECT_EQ(g.maximals.size(), 7u);
  EXPECT_EQ(g.degenerates.size(), 8u);
  for (const auto& d : g.degenerates) EXPECT_EQ(d.parents.size(), 2u);
}

TEST(BuildPoset, FourDimensionalSignatures) {
  const auto set = builtin("mermin24");
  AnalysisOptions o;
  o.source = ContextSource::Declared;
  const auto a = analyze(set, o);
  std::map<Signature, int> by_sig;
  for (const auto& alg : a.poset.algebras) {
    if (!alg.maximal) ++by_sig[alg.signature];
  }
  EXPECT_EQ(by_sig.size(), 3u);
  EXPECT_GT((by_sig[{2, 2}]), 0);
  EXPECT_GT((by_sig[{3, 1}]), 0);
  EXPECT_GT((by_sig[{2, 1, 1}]), 0);
  o.signatures = std::vector<Signature>{{2, 2}};
  const auto only22 = analyze(set, o);
  EXPECT_EQ(only22.poset.maximal_count(), 6u);
  EXPECT_EQ(only22.poset.algebras.size() - 6u, 9u);
}

TEST(BuildPoset, HasseEdgesAreTransitivelyReduced) {
  const auto set = builtin("mermin24");
  AnalysisOptions o;
  o.source = ContextSource::Declared;
  const auto a = analyze(set, o);
  const auto& p = a.poset;
  for (const auto& e : p.edges) {
    EXPECT_TRUE(p.includes(e.child, e.parent));
    for (AlgebraId mid : p.above[static_cast<std::size_t>(e.child)]) {
      EXPECT_FALSE(p.includes(mid, e.parent) && mid != e.parent) << p.algebra_label(e.child);
    }
  }
  // 3-1 and 2-2 algebras sit under 2-1-1 ones
  std::size_t inner_edges = 0;
  for (const auto& e : p.edges) inner_edges += !p.algebra(e.parent).maximal;
  EXPECT_GT(inner_edges, 0u);
}

TEST(Lift, PadsAndAddsAxisOnce) {
  const auto [rays, labels] = lift_dimension<Q>({ray({1, 0, -1}), ray({0, 1, 0})}, {"r1", "r3"}, 4);
  ASSERT_EQ(rays.size(), 3u);
  EXPECT_EQ(rays[0], ray({1, 0, -1, 0}));
  EXPECT_EQ(rays[2], ray({0, 0, 0, 1}));
  EXPECT_EQ(labels.back(), "Q");
  EXPECT_THROW((lift_dimension<Q>({ray({1, 0, 0})}, {"a"}, 3)), Error);
}
