#pragma once

// Cycles in the bipartite graph joining each non-maximal algebra to the
// maximal algebras containing it.

#include <cstddef>
#include <optional>
#include <vector>

#include "ksobs/contexts.hpp"

namespace ksobs {

/// A non-maximal node: one algebra, or several merged because they sit
/// under exactly the same maximal algebras.
struct DegenerateNode {
  std::vector<AlgebraId> members;  // sorted; members.front() names the node
  std::vector<AlgebraId> parents;  // maximal algebras, sorted

  AlgebraId id() const { return members.front(); }
  friend bool operator==(const DegenerateNode&, const DegenerateNode&) = default;
};

struct InclusionGraph {
  std::vector<AlgebraId> maximals;          // sorted
  std::vector<DegenerateNode> degenerates;  // sorted by id()

  std::size_t edge_count() const;
  friend bool operator==(const InclusionGraph&, const InclusionGraph&) = default;
};

/// One node per non-maximal algebra, nothing merged or dropped.
InclusionGraph inclusion_graph(const WPoset& poset);

/// Merges nodes with identical parent sets and drops nodes with fewer than
/// two parents. Idempotent.
InclusionGraph reduce(const InclusionGraph& g);
inline InclusionGraph reduce(const WPoset& poset) { return reduce(inclusion_graph(poset)); }

struct Loop {
  /// Alternates degenerate node id and maximal id, starting from the
  /// smallest degenerate id, in the direction giving the smaller sequence.
  std::vector<AlgebraId> cycle;

  std::size_t length() const { return cycle.size(); }
  std::size_t maximal_count() const { return cycle.size() / 2; }
  friend auto operator<=>(const Loop&, const Loop&) = default;
};

/// Chordless cycles through at least three and at most max_maximals maximal
/// algebras, sorted by length then cycle. A cycle through only two maximals
/// has both its degenerate nodes joining the same pair and is not a loop.
std::vector<Loop> enumerate_loops(const InclusionGraph& g, std::size_t max_maximals = 6);

/// Length (in algebras) of the shortest loop, or nullopt when there is none.
std::optional<std::size_t> min_loop(const InclusionGraph& g);

}  // namespace ksobs
