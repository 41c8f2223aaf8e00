#include "ksobs/contexts.hpp"

#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace ksobs {

Signature parse_signature(const std::string& text) {
  Signature sig;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) throw ParseError(pos, "expected atom rank in signature '" + text + "'");
    int rank = std::stoi(text.substr(start, pos - start));
    if (rank <= 0) throw ParseError(start, "atom ranks must be positive");
    sig.push_back(rank);
    if (pos < text.size()) {
      if (text[pos] != '-' && text[pos] != ',') throw ParseError(pos, "expected '-' or ','");
      ++pos;
      if (pos == text.size()) throw ParseError(pos, "dangling separator");
    }
  }
  if (sig.empty()) throw ParseError(0, "empty signature");
  std::sort(sig.rbegin(), sig.rend());
  return sig;
}

std::string format_signature(const Signature& sig) {
  std::string out;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) out += "-";
    out += std::to_string(sig[i]);
  }
  return out;
}

std::vector<Signature> all_degenerate_signatures(int dim) {
  std::vector<Signature> out;
  Signature current;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      if (current.size() > 1 && current.front() > 1) out.push_back(current);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      current.push_back(p);
      rec(remaining - p, p);
      current.pop_back();
    }
  };
  rec(dim, dim);
  return out;
}

std::optional<RayId> Frame::find(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<RayId>(it - labels.begin());
}

std::string next_free_label(std::size_t& counter, const std::vector<std::string>& taken) {
  for (;;) {
    std::size_t k = counter++;
    std::string label;
    do {
      label.insert(label.begin(), static_cast<char>('A' + k % 26));
      k = k / 26;
    } while (k-- > 0);
    if (std::find(taken.begin(), taken.end(), label) == taken.end()) return label;
  }
}

// ------------------------------------------------------------ coarsenings

std::vector<Coarsening> subalgebras_of(int atom_count, const std::vector<Signature>& signatures) {
  std::vector<Coarsening> out;
  std::vector<int> rgs(static_cast<std::size_t>(atom_count), 0);
  std::function<void(int, int)> rec = [&](int pos, int blocks) {
    if (pos == atom_count) {
      Signature sig(static_cast<std::size_t>(blocks), 0);
      for (int b : rgs) ++sig[static_cast<std::size_t>(b)];
      std::sort(sig.rbegin(), sig.rend());
      if (blocks < 2 || blocks == atom_count) return;
      if (std::find(signatures.begin(), signatures.end(), sig) == signatures.end()) return;
      out.push_back(Coarsening{rgs, blocks, sig});
      return;
    }
    for (int b = 0; b <= blocks && b < atom_count; ++b) {
      rgs[static_cast<std::size_t>(pos)] = b;
      rec(pos + 1, std::max(blocks, b + 1));
    }
  };
  if (atom_count > 0) rec(0, 0);
  return out;
}

// ----------------------------------------------------------------- WPoset

std::size_t WPoset::maximal_count() const {
  return static_cast<std::size_t>(
      std::count_if(algebras.begin(), algebras.end(), [](const Algebra& a) { return a.maximal; }));
}

bool WPoset::includes(AlgebraId child, AlgebraId parent) const {
  const auto& up = above.at(static_cast<std::size_t>(child));
  return std::binary_search(up.begin(), up.end(), parent);
}

std::vector<AlgebraId> WPoset::maximal_parents(AlgebraId a) const {
  std::vector<AlgebraId> out;
  for (const auto& r : algebra(a).realizations) out.push_back(r.maximal);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

const Realization* realization_on(const Algebra& a, AlgebraId maximal) {
  for (const auto& r : a.realizations) {
    if (r.maximal == maximal) return &r;
  }
  return nullptr;
}

// fine refines coarse when atoms sharing a block in fine also share one in coarse.
bool refines(const std::vector<int>& fine, const std::vector<int>& coarse) {
  std::map<int, int> seen;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    auto [it, inserted] = seen.emplace(fine[i], coarse[i]);
    if (!inserted && it->second != coarse[i]) return false;
  }
  return true;
}

}  // namespace

std::vector<int> WPoset::atom_map(AlgebraId child, AlgebraId parent) const {
  const Algebra& c = algebra(child);
  const Algebra& p = algebra(parent);
  if (child == parent) {
    std::vector<int> id(p.atoms.size());
    std::iota(id.begin(), id.end(), 0);
    return id;
  }
  for (const auto& rp : p.realizations) {
    const Realization* rc = realization_on(c, rp.maximal);
    if (rc == nullptr || !refines(rp.block_of, rc->block_of)) continue;
    std::vector<int> out(p.atoms.size(), -1);
    for (std::size_t i = 0; i < rp.block_of.size(); ++i) {
      out[static_cast<std::size_t>(rp.block_of[i])] = rc->block_of[i];
    }
    return out;
  }
  throw Error(ErrorCode::NotIncluded,
              "algebra " + std::to_string(child) + " is not included in " + std::to_string(parent));
}

std::optional<ProjectorId> WPoset::find_projector(const std::string& label) const {
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    if (projectors[i].label == label) return static_cast<ProjectorId>(i);
  }
  return std::nullopt;
}

std::optional<AlgebraId> WPoset::find_algebra(std::vector<ProjectorId> atoms) const {
  std::sort(atoms.begin(), atoms.end());
  for (const auto& a : algebras) {
    auto sorted = a.atoms;
    std::sort(sorted.begin(), sorted.end());
    if (sorted == atoms) return a.id;
  }
  return std::nullopt;
}

std::string WPoset::algebra_label(AlgebraId id) const {
  const Algebra& a = algebra(id);
  auto join = [&](const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < a.atoms.size(); ++i) {
      if (i) out += sep;
      out += projectors[static_cast<std::size_t>(a.atoms[i])].label;
    }
    return out;
  };
  if (a.maximal) return join(",");
  if (dim == 3 && a.signature == Signature{2, 1}) {
    for (ProjectorId p : a.atoms) {
      if (projectors[static_cast<std::size_t>(p)].rank == 1) return projectors[static_cast<std::size_t>(p)].label;
    }
  }
  return format_signature(a.signature) + ":" + join("|");
}

// ----------------------------------------------------------- construction

namespace detail {

PosetBuilder::PosetBuilder(const Frame& f) : frame(f) {
  poset.dim = f.dim;
  poset.auxiliary = f.auxiliary_labels();
  for (const auto& l : f.labels) poset.projectors.push_back(Projector{1, l});
}

ProjectorId PosetBuilder::add_projector(int rank, std::string label) {
  poset.projectors.push_back(Projector{rank, std::move(label)});
  return static_cast<ProjectorId>(poset.projectors.size() - 1);
}

std::string PosetBuilder::block_label(const std::vector<RayId>& block, const std::vector<RayId>& rest) const {
  auto lab = [&](RayId r) { return frame.labels[static_cast<std::size_t>(r)]; };
  if (rest.size() == 1) return "~" + lab(rest.front());
  std::string out = "<";
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i) out += ",";
    out += lab(block[i]);
  }
  return out + ">";
}

void PosetBuilder::finish(std::map<std::vector<ProjectorId>, std::vector<Realization>> degenerate,
                          const std::vector<std::vector<ProjectorId>>& maximal_atoms) {
  auto& algs = poset.algebras;
  std::set<std::vector<ProjectorId>> seen_maximals;
  for (std::size_t m = 0; m < maximal_atoms.size(); ++m) {
    auto key = maximal_atoms[m];
    std::sort(key.begin(), key.end());
    if (!seen_maximals.insert(key).second) {
      throw Error(ErrorCode::StructureError, "duplicate maximal context " + std::to_string(m));
    }
    Algebra a;
    a.id = static_cast<AlgebraId>(m);
    a.atoms = maximal_atoms[m];
    a.signature = Signature(a.atoms.size(), 1);
    a.maximal = true;
    Realization self{a.id, {}};
    self.block_of.resize(a.atoms.size());
    std::iota(self.block_of.begin(), self.block_of.end(), 0);
    a.realizations.push_back(std::move(self));
    algs.push_back(std::move(a));
  }
  for (auto& [atoms, reals] : degenerate) {
    Algebra a;
    a.id = static_cast<AlgebraId>(algs.size());
    a.atoms = atoms;
    for (ProjectorId p : atoms) a.signature.push_back(poset.projectors[static_cast<std::size_t>(p)].rank);
    std::sort(a.signature.rbegin(), a.signature.rend());
    std::sort(reals.begin(), reals.end(),
              [](const Realization& x, const Realization& y) { return x.maximal < y.maximal; });
    a.realizations = std::move(reals);
    algs.push_back(std::move(a));
  }

  // containment: two algebras are comparable only through a common maximal
  std::vector<std::vector<std::pair<AlgebraId, const Realization*>>> on_maximal(maximal_atoms.size());
  for (const auto& a : algs) {
    for (const auto& r : a.realizations) on_maximal[static_cast<std::size_t>(r.maximal)].emplace_back(a.id, &r);
  }
  poset.above.assign(algs.size(), {});
  for (const auto& group : on_maximal) {
    for (const auto& [child, rc] : group) {
      for (const auto& [parent, rp] : group) {
        if (child == parent) continue;
        if (algs[static_cast<std::size_t>(child)].maximal) continue;
        if (refines(rp->block_of, rc->block_of) && !refines(rc->block_of, rp->block_of)) {
          poset.above[static_cast<std::size_t>(child)].push_back(parent);
        }
      }
    }
  }
  for (auto& up : poset.above) {
    std::sort(up.begin(), up.end());
    up.erase(std::unique(up.begin(), up.end()), up.end());
  }
  for (std::size_t c = 0; c < algs.size(); ++c) {
    for (AlgebraId p : poset.above[c]) {
      bool covered = std::any_of(poset.above[c].begin(), poset.above[c].end(), [&](AlgebraId q) {
        return q != p && poset.includes(q, p);
      });
      if (!covered) poset.edges.push_back(HasseEdge{static_cast<AlgebraId>(c), p});
    }
  }
  std::sort(poset.edges.begin(), poset.edges.end());
}

}  // namespace detail

ProjectorId CombinatorialInterner::intern(const std::vector<RayId>& block, const std::vector<RayId>& rest,
                                          detail::PosetBuilder& builder) {
  auto b = block;
  auto r = rest;
  std::sort(b.begin(), b.end());
  std::sort(r.begin(), r.end());
  ProjectorId id = -1;
  if (auto it = by_span_.find(b); it != by_span_.end()) {
    id = it->second;
  } else if (auto jt = by_complement_.find(r); jt != by_complement_.end()) {
    id = jt->second;
  } else {
    id = builder.add_projector(static_cast<int>(block.size()), builder.block_label(block, rest));
  }
  by_span_.emplace(b, id);
  by_complement_.emplace(r, id);
  return id;
}

WPoset build_poset(const Frame& frame, const std::vector<Signature>& signatures) {
  CombinatorialInterner interner;
  return build_poset(frame, signatures, interner);
}

// ---------------------------------------------------------------- cliques

std::vector<std::vector<int>> maximal_cliques(const std::vector<std::vector<bool>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<std::vector<int>> out;
  std::vector<int> r;
  std::function<void(std::vector<int>, std::vector<int>)> bk = [&](std::vector<int> p, std::vector<int> x) {
    if (p.empty() && x.empty()) {
      auto c = r;
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
      return;
    }
    // pivot: vertex of p or x with most neighbours in p
    int pivot = -1;
    int best = -1;
    for (const auto* set : {&p, &x}) {
      for (int u : *set) {
        int cnt = 0;
        for (int v : p) cnt += adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] ? 1 : 0;
        if (cnt > best) {
          best = cnt;
          pivot = u;
        }
      }
    }
    std::vector<int> candidates;
    for (int v : p) {
      if (!adj[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(v)]) candidates.push_back(v);
    }
    for (int v : candidates) {
      std::vector<int> np;
      std::vector<int> nx;
      for (int u : p) {
        if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) np.push_back(u);
      }
      for (int u : x) {
        if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) nx.push_back(u);
      }
      r.push_back(v);
      bk(std::move(np), std::move(nx));
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  };
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  bk(all, {});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ksobs
