#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "ksobs/loops.hpp"
#include "support.hpp"

using namespace ksobs;

namespace {

bool adjacent(const InclusionGraph& g, AlgebraId degenerate, AlgebraId maximal) {
  for (const auto& d : g.degenerates) {
    if (d.id() == degenerate) return std::binary_search(d.parents.begin(), d.parents.end(), maximal);
  }
  return false;
}

bool chordless(const InclusionGraph& g, const Loop& loop) {
  const auto& c = loop.cycle;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; i += 2) {
    for (std::size_t j = 1; j < n; j += 2) {
      const bool consecutive = j == (i + 1) % n || i == (j + 1) % n;
      if (adjacent(g, c[i], c[j]) != consecutive) return false;
    }
  }
  return true;
}

InclusionGraph reduced(const std::string& name, AnalysisOptions o = {}) { return reduce(analyze(builtin(name), o).poset); }

}  // namespace

TEST(Reduce, ParallelDegeneratesFactorThroughOne) {
  const auto poset = fixtures::parallel_tetrads({{3, 1}, {2, 1, 1}});
  const auto full = inclusion_graph(poset);
  std::size_t shared = 0;
  for (const auto& d : full.degenerates) shared += d.parents.size() == 2;
  EXPECT_EQ(shared, 3u);  // L_A, L_B and the 2-1-1 algebra {A, B, CD}
  const auto g = reduce(poset);
  ASSERT_EQ(g.degenerates.size(), 1u);
  EXPECT_EQ(g.degenerates[0].members.size(), 3u);
  bool has_211 = false;
  for (AlgebraId m : g.degenerates[0].members) has_211 = has_211 || poset.algebra(m).signature == Signature{2, 1, 1};
  EXPECT_TRUE(has_211);
  EXPECT_EQ(min_loop(g), std::nullopt);
  EXPECT_TRUE(enumerate_loops(g).empty());
}

TEST(Reduce, SingleParentNodesDropped) {
  const auto poset = fixtures::parallel_tetrads({{3, 1}});
  const auto full = inclusion_graph(poset);
  EXPECT_EQ(full.degenerates.size(), 6u);
  const auto g = reduce(poset);
  ASSERT_EQ(g.degenerates.size(), 1u);
  EXPECT_EQ(g.degenerates[0].members.size(), 2u);
}

TEST(Reduce, CliftonUnchanged) {
  const auto a = analyze(builtin("clifton8"));
  const auto full = inclusion_graph(a.poset);
  const auto g = reduce(full);
  for (const auto& d : g.degenerates) EXPECT_EQ(d.members.size(), 1u);
  std::size_t shared = 0;
  for (const auto& d : full.degenerates) shared += d.parents.size() >= 2;
  EXPECT_EQ(g.degenerates.size(), shared);
}

TEST(Reduce, Idempotent) {
  for (const auto& name : builtin_names()) {
    const auto g = reduced(name);
    EXPECT_EQ(reduce(g), g) << name;
  }
  const auto g = reduce(fixtures::parallel_tetrads(all_degenerate_signatures(4)));
  EXPECT_EQ(reduce(g), g);
}

TEST(EnumerateLoops, CliftonTwoFiveLoops) {
  const auto g = reduced("clifton8");
  EXPECT_TRUE(enumerate_loops(g, 4).empty());
  const auto loops = enumerate_loops(g, 5);
  ASSERT_EQ(loops.size(), 2u);
  std::vector<std::set<AlgebraId>> maximals;
  for (const auto& l : loops) {
    EXPECT_EQ(l.maximal_count(), 5u);
    EXPECT_EQ(l.length(), 10u);
    std::set<AlgebraId> ms;
    for (std::size_t i = 1; i < l.cycle.size(); i += 2) ms.insert(l.cycle[i]);
    maximals.push_back(ms);
  }
  std::vector<AlgebraId> common;
  std::set_intersection(maximals[0].begin(), maximals[0].end(), maximals[1].begin(), maximals[1].end(),
                        std::back_inserter(common));
  EXPECT_EQ(common.size(), 3u);
  std::set<AlgebraId> all = maximals[0];
  all.insert(maximals[1].begin(), maximals[1].end());
  EXPECT_EQ(all.size(), 7u);
}

TEST(EnumerateLoops, MerminFourLoops) {
  AnalysisOptions o;
  o.source = ContextSource::Declared;
  o.signatures = std::vector<Signature>{{2, 2}};
  const auto g = reduced("mermin24", o);
  EXPECT_EQ(g.maximals.size(), 6u);
  EXPECT_EQ(g.degenerates.size(), 9u);
  for (const auto& d : g.degenerates) EXPECT_EQ(d.parents.size(), 2u);
  const auto loops = enumerate_loops(g, 4);
  EXPECT_FALSE(loops.empty());
  for (const auto& l : loops) EXPECT_EQ(l.maximal_count(), 4u);
  EXPECT_EQ(min_loop(g), 8u);
}

TEST(EnumerateLoops, LoopsAreChordlessCanonicalAndSorted) {
  for (const auto& name : builtin_names()) {
    const auto g = reduced(name);
    const auto loops = enumerate_loops(g, 6);
    EXPECT_TRUE(std::is_sorted(loops.begin(), loops.end(), [](const Loop& x, const Loop& y) {
      return x.length() != y.length() ? x.length() < y.length() : x.cycle < y.cycle;
    })) << name;
    for (const auto& l : loops) {
      ASSERT_GE(l.length(), 6u) << name;
      ASSERT_EQ(l.length() % 2, 0u);
      EXPECT_TRUE(chordless(g, l)) << name;
      EXPECT_EQ(std::set<AlgebraId>(l.cycle.begin(), l.cycle.end()).size(), l.length()) << name;
      std::vector<AlgebraId> degenerates;
      for (std::size_t i = 0; i < l.cycle.size(); i += 2) degenerates.push_back(l.cycle[i]);
      EXPECT_EQ(l.cycle.front(), *std::min_element(degenerates.begin(), degenerates.end()));
      EXPECT_LT(l.cycle[1], l.cycle.back());
    }
  }
}

TEST(EnumerateLoops, RejectsTinyBound) {
  EXPECT_THROW(enumerate_loops(InclusionGraph{}, 1), Error);
  EXPECT_TRUE(enumerate_loops(InclusionGraph{}, 2).empty());
}

TEST(MinLoop, ThreeDimensionalGirth) {
  for (const auto& name : builtin_names()) {
    const auto set = builtin(name);
    if (set.dim != 3) continue;
    const auto g = reduced(name);
    EXPECT_TRUE(enumerate_loops(g, 4).empty()) << name;
    const auto m = min_loop(g);
    if (m) EXPECT_GE(*m, 10u) << name;
  }
  EXPECT_EQ(min_loop(reduced("clifton8")), 10u);
  EXPECT_EQ(min_loop(reduced("peres33")), 10u);
}

TEST(MinLoop, AgreesWithEnumeration) {
  for (const auto& name : builtin_names()) {
    const auto g = reduced(name);
    const auto loops = enumerate_loops(g, 6);
    if (!loops.empty()) EXPECT_EQ(min_loop(g), loops.front().length()) << name;
  }
}
