#pragma once

// Boolean subalgebras of projectors generated by a ray set, and the inclusion
// poset W they form.
//
// Algebras are stored by their atoms. Each atom is an interned projector id,
// so two algebras coming from different maximal contexts compare equal iff
// their atoms span the same subspaces. Every non-maximal algebra also records
// how it coarsens each maximal algebra containing it ("realizations"); that
// is all the containment and restriction machinery downstream needs, so the
// poset itself carries no scalars.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ksobs/errors.hpp"
#include "ksobs/rays.hpp"

namespace ksobs {

using RayId = int;
using ProjectorId = int;
using AlgebraId = int;

/// Atom ranks, sorted in decreasing order, e.g. {2, 1} or {1, 1, 1, 1}.
using Signature = std::vector<int>;

Signature parse_signature(const std::string& text);  // "2-1-1" or "2,1,1"
std::string format_signature(const Signature& sig);
/// Degenerate signatures of an n-dimensional space: every partition of n
/// other than {n} and {1,...,1}.
std::vector<Signature> all_degenerate_signatures(int dim);

struct Projector {
  int rank = 1;
  std::string label;
};

/// How an algebra coarsens a maximal algebra: block_of[i] is the index of
/// the algebra's atom containing the maximal's i-th atom.
struct Realization {
  AlgebraId maximal = -1;
  std::vector<int> block_of;
};

struct Algebra {
  AlgebraId id = -1;
  std::vector<ProjectorId> atoms;
  Signature signature;
  bool maximal = false;
  std::vector<Realization> realizations;
};

struct HasseEdge {
  AlgebraId child = -1;
  AlgebraId parent = -1;
  friend auto operator<=>(const HasseEdge&, const HasseEdge&) = default;
};

/// Maximal contexts over a labelled ray set. Rays past input_count are the
/// auxiliary rays introduced by completion.
struct Frame {
  int dim = 0;
  std::vector<std::string> labels;
  std::size_t input_count = 0;
  std::vector<std::vector<RayId>> contexts;

  std::vector<std::string> auxiliary_labels() const {
    return {labels.begin() + static_cast<std::ptrdiff_t>(input_count), labels.end()};
  }
  std::optional<RayId> find(const std::string& label) const;
};

class WPoset {
 public:
  int dim = 0;
  std::vector<Projector> projectors;
  std::vector<Algebra> algebras;
  std::vector<HasseEdge> edges;  // sorted
  std::vector<std::string> auxiliary;
  /// above[a]: strict supersets of a, sorted.
  std::vector<std::vector<AlgebraId>> above;

  std::size_t maximal_count() const;
  const Algebra& algebra(AlgebraId id) const { return algebras.at(static_cast<std::size_t>(id)); }
  bool includes(AlgebraId child, AlgebraId parent) const;
  /// Maximal algebras containing a (a itself when maximal).
  std::vector<AlgebraId> maximal_parents(AlgebraId a) const;
  /// For child included in parent: result[i] is the child atom containing
  /// the parent's i-th atom. Throws NotIncluded otherwise.
  std::vector<int> atom_map(AlgebraId child, AlgebraId parent) const;
  std::optional<ProjectorId> find_projector(const std::string& label) const;
  std::optional<AlgebraId> find_algebra(std::vector<ProjectorId> atoms) const;
  std::string algebra_label(AlgebraId id) const;
};

/// One coarsening of an n-atom maximal algebra: block_of[i] for each atom.
struct Coarsening {
  std::vector<int> block_of;
  int block_count = 0;
  Signature signature;
};

/// Coarsenings of an n-atom maximal algebra whose block-size multiset is in
/// signatures, in restricted-growth-string order.
std::vector<Coarsening> subalgebras_of(int atom_count, const std::vector<Signature>& signatures);

namespace detail {

struct PosetBuilder {
  const Frame& frame;
  WPoset poset;

  explicit PosetBuilder(const Frame& f);
  /// Registers a fresh projector and returns its id.
  ProjectorId add_projector(int rank, std::string label);
  std::string block_label(const std::vector<RayId>& block, const std::vector<RayId>& rest) const;
  void finish(std::map<std::vector<ProjectorId>, std::vector<Realization>> degenerate,
              const std::vector<std::vector<ProjectorId>>& maximal_atoms);
};

}  // namespace detail

/// Deduplicated union of the maximal contexts and their coarsenings with the
/// given signatures, with Hasse edges. The interner maps a block of rays of
/// one context to a projector id such that equal subspaces share an id:
///   ProjectorId intern(const std::vector<RayId>& block,
///                      const std::vector<RayId>& rest, detail::PosetBuilder&)
template <class Interner>
WPoset build_poset(const Frame& frame, const std::vector<Signature>& signatures, Interner& interner) {
  detail::PosetBuilder builder(frame);
  std::vector<std::vector<ProjectorId>> maximal_atoms;
  std::map<std::vector<ProjectorId>, std::vector<Realization>> degenerate;

  for (std::size_t m = 0; m < frame.contexts.size(); ++m) {
    const auto& ctx = frame.contexts[m];
    maximal_atoms.emplace_back(ctx.begin(), ctx.end());
    for (const auto& c : subalgebras_of(static_cast<int>(ctx.size()), signatures)) {
      std::vector<ProjectorId> block_ids(static_cast<std::size_t>(c.block_count));
      for (int b = 0; b < c.block_count; ++b) {
        std::vector<RayId> block;
        std::vector<RayId> rest;
        for (std::size_t i = 0; i < ctx.size(); ++i) {
          (c.block_of[i] == b ? block : rest).push_back(ctx[i]);
        }
        block_ids[static_cast<std::size_t>(b)] =
            block.size() == 1 ? block.front() : interner.intern(block, rest, builder);
      }
      std::vector<ProjectorId> atoms = block_ids;
      std::sort(atoms.begin(), atoms.end());
      Realization real;
      real.maximal = static_cast<AlgebraId>(m);
      for (int b : c.block_of) {
        const ProjectorId pid = block_ids[static_cast<std::size_t>(b)];
        real.block_of.push_back(static_cast<int>(
            std::lower_bound(atoms.begin(), atoms.end(), pid) - atoms.begin()));
      }
      degenerate[atoms].push_back(std::move(real));
    }
  }
  builder.finish(std::move(degenerate), maximal_atoms);
  return std::move(builder.poset);
}

/// Interner for datasets given only as labelled contexts: a block is
/// identified by its member rays, or by the rays of its complement within the
/// context (the orthocomplement of a span is unique).
class CombinatorialInterner {
 public:
  ProjectorId intern(const std::vector<RayId>& block, const std::vector<RayId>& rest,
                     detail::PosetBuilder& builder);

 private:
  std::map<std::vector<RayId>, ProjectorId> by_span_;
  std::map<std::vector<RayId>, ProjectorId> by_complement_;
};

WPoset build_poset(const Frame& frame, const std::vector<Signature>& signatures);

// ------------------------------------------------------------- geometry

template <class S>
struct GeometricFrame {
  Frame frame;
  std::vector<Ray<S>> rays;
};

template <class S>
struct GeometricPoset {
  WPoset poset;
  /// Range of every projector, indexed by ProjectorId.
  std::vector<Subspace<S>> spaces;
};

std::string next_free_label(std::size_t& counter, const std::vector<std::string>& taken);

template <class S>
std::vector<std::vector<bool>> orthogonality_graph(const std::vector<Ray<S>>& rays) {
  const std::size_t n = rays.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      adj[i][j] = adj[j][i] = orthogonal(rays[i], rays[j]);
    }
  }
  return adj;
}

/// All maximal cliques, each sorted ascending, in no particular order.
std::vector<std::vector<int>> maximal_cliques(const std::vector<std::vector<bool>>& adj);

/// Maximal contexts of a ray set: maximal orthogonal cliques of size n are
/// bases; with complete set, cliques of size n-1 get their unique missing ray
/// appended (recorded as auxiliary). Smaller cliques are dropped. Contexts
/// are sorted by the canonical forms of their members.
template <class S>
GeometricFrame<S> maximal_contexts(const std::vector<Ray<S>>& rays,
                                   const std::vector<std::string>& labels, bool complete) {
  GeometricFrame<S> out;
  out.rays = rays;
  out.frame.labels = labels;
  out.frame.input_count = rays.size();
  if (rays.empty()) return out;
  const auto n = static_cast<std::size_t>(rays.front().dim());
  out.frame.dim = static_cast<int>(n);
  for (const auto& r : rays) {
    if (static_cast<std::size_t>(r.dim()) != n) throw Error(ErrorCode::DimMismatch, "rays of mixed dimension");
  }

  std::vector<std::vector<Ray<S>>> contexts;
  for (const auto& clique : maximal_cliques(orthogonality_graph(rays))) {
    std::vector<Ray<S>> members;
    for (int i : clique) members.push_back(rays[static_cast<std::size_t>(i)]);
    if (members.size() == n - 1 && complete) {
      const auto missing = orthocomplement(span(members));
      members.push_back(canonicalize<S>(missing.basis().row(0).transpose()));
    } else if (members.size() != n) {
      continue;
    }
    std::sort(members.begin(), members.end(),
              [](const Ray<S>& a, const Ray<S>& b) { return compare(a, b) < 0; });
    contexts.push_back(std::move(members));
  }
  std::sort(contexts.begin(), contexts.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Ray<S>& x, const Ray<S>& y) { return compare(x, y) < 0; });
  });

  std::size_t aux_counter = 0;
  for (const auto& members : contexts) {
    std::vector<RayId> ids;
    for (const auto& m : members) {
      auto it = std::find(out.rays.begin(), out.rays.end(), m);
      if (it == out.rays.end()) {
        out.rays.push_back(m);
        out.frame.labels.push_back(next_free_label(aux_counter, out.frame.labels));
        it = out.rays.end() - 1;
      }
      ids.push_back(static_cast<RayId>(it - out.rays.begin()));
    }
    out.frame.contexts.push_back(std::move(ids));
  }
  return out;
}

/// Frame from contexts given by label; each must be an orthogonal basis.
template <class S>
GeometricFrame<S> declared_contexts(const std::vector<Ray<S>>& rays,
                                    const std::vector<std::string>& labels,
                                    const std::vector<std::vector<std::string>>& contexts) {
  GeometricFrame<S> out;
  out.rays = rays;
  out.frame.labels = labels;
  out.frame.input_count = rays.size();
  out.frame.dim = rays.empty() ? 0 : static_cast<int>(rays.front().dim());
  for (const auto& ctx : contexts) {
    std::vector<RayId> ids;
    for (const auto& l : ctx) {
      auto id = out.frame.find(l);
      if (!id) throw Error(ErrorCode::UnknownProjector, "context member '" + l + "' is not a ray label");
      ids.push_back(*id);
    }
    if (ids.size() != static_cast<std::size_t>(out.frame.dim)) {
      throw Error(ErrorCode::InvalidParams, "declared context does not have dim members");
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        if (!orthogonal(rays[static_cast<std::size_t>(ids[i])], rays[static_cast<std::size_t>(ids[j])])) {
          throw Error(ErrorCode::InvalidParams,
                      "declared context rays " + ctx[i] + " and " + ctx[j] + " are not orthogonal");
        }
      }
    }
    out.frame.contexts.push_back(std::move(ids));
  }
  return out;
}

template <class S>
class GeometricInterner {
 public:
  explicit GeometricInterner(const std::vector<Ray<S>>& rays) : rays_(rays) {
    for (const auto& r : rays) spaces_.push_back(span(std::vector<Ray<S>>{r}));
  }

  ProjectorId intern(const std::vector<RayId>& block, const std::vector<RayId>& rest,
                     detail::PosetBuilder& builder) {
    std::vector<Ray<S>> gens;
    for (RayId r : block) gens.push_back(rays_[static_cast<std::size_t>(r)]);
    Subspace<S> s = span(gens);
    for (std::size_t i = rays_.size(); i < spaces_.size(); ++i) {
      if (spaces_[i] == s) return static_cast<ProjectorId>(i);
    }
    spaces_.push_back(std::move(s));
    return builder.add_projector(static_cast<int>(block.size()), builder.block_label(block, rest));
  }

  std::vector<Subspace<S>> take_spaces() { return std::move(spaces_); }

 private:
  const std::vector<Ray<S>>& rays_;
  std::vector<Subspace<S>> spaces_;
};

template <class S>
GeometricPoset<S> build_poset(const GeometricFrame<S>& gf, const std::vector<Signature>& signatures) {
  GeometricInterner<S> interner(gf.rays);
  GeometricPoset<S> out;
  out.poset = build_poset(gf.frame, signatures, interner);
  out.spaces = interner.take_spaces();
  return out;
}

/// Zero-pads every ray to target_dim and appends the new axis rays, labelled
/// Q (or Q1, Q2, ... when more than one coordinate is added).
template <class S>
std::pair<std::vector<Ray<S>>, std::vector<std::string>> lift_dimension(
    const std::vector<Ray<S>>& rays, const std::vector<std::string>& labels, int target_dim) {
  const int dim = rays.empty() ? 0 : static_cast<int>(rays.front().dim());
  if (target_dim <= dim) {
    throw Error(ErrorCode::InvalidParams, "lift target dimension must exceed " + std::to_string(dim));
  }
  std::vector<Ray<S>> out;
  std::vector<std::string> out_labels = labels;
  for (const auto& r : rays) out.push_back(canonicalize<S>(pad<S>(r.vector(), target_dim)));
  const int added = target_dim - dim;
  for (int k = dim; k < target_dim; ++k) {
    Vector<S> e = Vector<S>::Zero(target_dim);
    e(k) = S(1);
    out.push_back(canonicalize<S>(e));
    std::string base = added == 1 ? "Q" : "Q" + std::to_string(k - dim + 1);
    std::string label = base;
    for (int suffix = 1; std::find(out_labels.begin(), out_labels.end(), label) != out_labels.end(); ++suffix) {
      label = base + "_" + std::to_string(suffix);
    }
    out_labels.push_back(label);
  }
  return {std::move(out), std::move(out_labels)};
}

}  // namespace ksobs
