#include "ksobs/loops.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace ksobs {

std::size_t InclusionGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& d : degenerates) n += d.parents.size();
  return n;
}

InclusionGraph inclusion_graph(const WPoset& poset) {
  InclusionGraph g;
  for (const auto& a : poset.algebras) {
    if (a.maximal) {
      g.maximals.push_back(a.id);
    } else {
      g.degenerates.push_back(DegenerateNode{{a.id}, poset.maximal_parents(a.id)});
    }
  }
  return g;
}

InclusionGraph reduce(const InclusionGraph& g) {
  std::map<std::vector<AlgebraId>, std::vector<AlgebraId>> by_parents;
  for (const auto& d : g.degenerates) {
    if (d.parents.size() < 2) continue;
    auto& members = by_parents[d.parents];
    members.insert(members.end(), d.members.begin(), d.members.end());
  }
  InclusionGraph out;
  out.maximals = g.maximals;
  for (auto& [parents, members] : by_parents) {
    std::sort(members.begin(), members.end());
    out.degenerates.push_back(DegenerateNode{members, parents});
  }
  std::sort(out.degenerates.begin(), out.degenerates.end(),
            [](const DegenerateNode& a, const DegenerateNode& b) { return a.id() < b.id(); });
  return out;
}

namespace {

// Bipartite adjacency over dense indices: degenerates first, then maximals.
struct Dense {
  std::size_t degenerate_count = 0;
  std::vector<AlgebraId> name;
  std::vector<std::vector<int>> adj;
  std::vector<std::set<int>> adj_set;

  explicit Dense(const InclusionGraph& g) : degenerate_count(g.degenerates.size()) {
    std::map<AlgebraId, int> maximal_index;
    for (const auto& d : g.degenerates) name.push_back(d.id());
    for (AlgebraId m : g.maximals) {
      maximal_index[m] = static_cast<int>(name.size());
      name.push_back(m);
    }
    adj.resize(name.size());
    for (std::size_t i = 0; i < g.degenerates.size(); ++i) {
      for (AlgebraId p : g.degenerates[i].parents) {
        const int j = maximal_index.at(p);
        adj[i].push_back(j);
        adj[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
      }
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    for (const auto& a : adj) adj_set.emplace_back(a.begin(), a.end());
  }

  bool adjacent(int u, int v) const { return adj_set[static_cast<std::size_t>(u)].contains(v); }
  bool is_maximal(int v) const { return static_cast<std::size_t>(v) >= degenerate_count; }
};

Loop canonical(const Dense& g, const std::vector<int>& path) {
  std::vector<AlgebraId> fwd;
  for (int v : path) fwd.push_back(g.name[static_cast<std::size_t>(v)]);
  std::vector<AlgebraId> rev{fwd.front()};
  rev.insert(rev.end(), fwd.rbegin(), fwd.rend() - 1);
  return Loop{std::min(fwd, rev)};
}

class CycleSearch {
 public:
  CycleSearch(const Dense& g, std::size_t max_maximals) : g_(g), max_maximals_(max_maximals) {}

  std::set<Loop> run() {
    for (std::size_t s = 0; s < g_.degenerate_count; ++s) {
      path_ = {static_cast<int>(s)};
      on_path_.assign(g_.name.size(), false);
      on_path_[s] = true;
      grow(0);
    }
    return std::move(found_);
  }

 private:
  // Start node is the smallest degenerate index on the cycle; ids are
  // assigned in increasing AlgebraId order so this is also the smallest id.
  void grow(std::size_t maximals) {
    const int start = path_.front();
    const int last = path_.back();
    for (int v : g_.adj[static_cast<std::size_t>(last)]) {
      if (on_path_[static_cast<std::size_t>(v)]) continue;
      const bool maximal = g_.is_maximal(v);
      if (!maximal && v < start) continue;
      const std::size_t m = maximals + (maximal ? 1 : 0);
      if (m > max_maximals_) continue;
      // v may touch only the path's last node, and the start when it closes
      bool chord = false;
      for (std::size_t i = 1; i + 1 < path_.size() && !chord; ++i) chord = g_.adjacent(v, path_[i]);
      if (chord) continue;
      const bool closes = path_.size() > 1 && g_.adjacent(v, start);
      path_.push_back(v);
      on_path_[static_cast<std::size_t>(v)] = true;
      if (closes) {
        if (m >= 3) found_.insert(canonical(g_, path_));
      } else {
        grow(m);
      }
      on_path_[static_cast<std::size_t>(v)] = false;
      path_.pop_back();
    }
  }

  const Dense& g_;
  std::size_t max_maximals_;
  std::vector<int> path_;
  std::vector<bool> on_path_;
  std::set<Loop> found_;
};

}  // namespace

std::vector<Loop> enumerate_loops(const InclusionGraph& g, std::size_t max_maximals) {
  if (max_maximals < 2) throw Error(ErrorCode::InvalidParams, "max_maximals must be at least 2");
  const Dense dense(g);
  auto found = CycleSearch(dense, max_maximals).run();
  std::vector<Loop> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const Loop& a, const Loop& b) { return a.length() < b.length(); });
  return out;
}

std::optional<std::size_t> min_loop(const InclusionGraph& g) {
  // a forest has no cycles at all
  const Dense dense(g);
  const std::size_t n = dense.name.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    }
    return x;
  };
  bool cyclic = false;
  for (std::size_t u = 0; u < dense.degenerate_count && !cyclic; ++u) {
    for (int v : dense.adj[u]) {
      const int a = find(static_cast<int>(u));
      const int b = find(v);
      if (a == b) {
        cyclic = true;
        break;
      }
      parent[static_cast<std::size_t>(a)] = b;
    }
  }
  if (!cyclic) return std::nullopt;
  for (std::size_t k = 3; k <= g.maximals.size(); ++k) {
    const auto loops = CycleSearch(dense, k).run();
    if (!loops.empty()) {
      std::size_t best = loops.begin()->length();
      for (const auto& l : loops) best = std::min(best, l.length());
      return best;
    }
  }
  return std::nullopt;
}

}  // namespace ksobs
