#pragma once

// Oracles and fixtures shared by the unit tests and the acceptance runner.
// The oracles deliberately avoid the code paths they check: global elements
// are tested straight from realizations, not through restrict or Hasse edges.

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ksobs/analysis.hpp"
#include "ksobs/cli.hpp"
#include "ksobs/colouring.hpp"
#include "ksobs/contexts.hpp"
#include "ksobs/datasets.hpp"
#include "ksobs/presheaf.hpp"

namespace ksobs::fixtures {

inline QuadScalar random_quad(std::mt19937_64& rng, std::int64_t d, long long range) {
  std::uniform_int_distribution<long long> num(-range, range);
  std::uniform_int_distribution<long long> den(1, range);
  return QuadScalar(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), d);
}

/// Whether some choice of one atom per maximal algebra agrees on every
/// non-maximal algebra: all its realizations put the chosen atoms in the
/// same block. Enumerates every combination.
inline bool brute_force_sat(const WPoset& poset) {
  std::vector<AlgebraId> maximals;
  for (const auto& a : poset.algebras) {
    if (a.maximal) maximals.push_back(a.id);
  }
  std::vector<int> choice(maximals.size(), 0);
  std::vector<int> slot(poset.algebras.size(), -1);
  for (std::size_t i = 0; i < maximals.size(); ++i) slot[static_cast<std::size_t>(maximals[i])] = static_cast<int>(i);
  for (;;) {
    bool ok = true;
    for (const auto& a : poset.algebras) {
      if (a.maximal) continue;
      int block = -1;
      for (const auto& r : a.realizations) {
        const int atom = choice[static_cast<std::size_t>(slot[static_cast<std::size_t>(r.maximal)])];
        const int b = r.block_of[static_cast<std::size_t>(atom)];
        if (block >= 0 && b != block) ok = false;
        block = b;
      }
      if (!ok) break;
    }
    if (ok) return true;
    std::size_t k = 0;
    for (; k < maximals.size(); ++k) {
      const auto atoms = poset.algebra(maximals[k]).atoms.size();
      if (++choice[k] < static_cast<int>(atoms)) break;
      choice[k] = 0;
    }
    if (k == maximals.size()) return false;
  }
}

/// All chains low ⊂ mid ⊂ high of three distinct algebras.
inline std::vector<std::array<AlgebraId, 3>> three_level_chains(const WPoset& poset) {
  std::vector<std::array<AlgebraId, 3>> out;
  const auto n = static_cast<AlgebraId>(poset.algebras.size());
  for (AlgebraId low = 0; low < n; ++low) {
    for (AlgebraId mid : poset.above[static_cast<std::size_t>(low)]) {
      for (AlgebraId high : poset.above[static_cast<std::size_t>(mid)]) out.push_back({low, mid, high});
    }
  }
  return out;
}

/// Functoriality of restriction on every chain and every hom of the top.
inline bool functorial(const WPoset& poset, std::size_t* checked = nullptr) {
  std::size_t count = 0;
  for (const auto& [low, mid, high] : three_level_chains(poset)) {
    for (const auto& h : fiber(poset, high)) {
      ++count;
      if (restrict(poset, restrict(poset, h, mid), low) != restrict(poset, h, low)) return false;
    }
  }
  if (checked) *checked = count;
  return true;
}

/// Poset over a subset of the discovered contexts of an exact or
/// approximate built-in set, or of the declared contexts of a graph set.
inline WPoset sub_poset(const RaySet& set, const std::vector<std::size_t>& keep,
                        const std::vector<Signature>& signatures) {
  auto filter = [&](Frame& f) {
    std::vector<std::vector<RayId>> kept;
    for (std::size_t i : keep) kept.push_back(f.contexts.at(i));
    f.contexts = std::move(kept);
  };
  if (const auto* e = std::get_if<ExactCoordinates>(&set.coords)) {
    auto gf = maximal_contexts(e->rays, set.labels, true);
    filter(gf.frame);
    return build_poset(gf, signatures).poset;
  }
  if (const auto* a = std::get_if<ApproxCoordinates>(&set.coords)) {
    auto gf = maximal_contexts(a->rays, set.labels, true);
    filter(gf.frame);
    return build_poset(gf, signatures).poset;
  }
  Frame f = analyze(set).frame;
  filter(f);
  return build_poset(f, signatures);
}

inline Ray<QuadScalar> int_ray(std::initializer_list<int> xs) {
  Vector<QuadScalar> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (int x : xs) v(i++) = QuadScalar(x);
  return canonicalize(v);
}

/// Two 4D bases sharing the rays A and B: {A, B, C, D} and {A, B, E, F}
/// with span{C, D} = span{E, F}.
inline WPoset parallel_tetrads(const std::vector<Signature>& signatures) {
  const std::vector<Ray<QuadScalar>> rays = {int_ray({1, 0, 0, 0}), int_ray({0, 1, 0, 0}), int_ray({0, 0, 1, 0}),
                                             int_ray({0, 0, 0, 1}), int_ray({0, 0, 1, 1}), int_ray({0, 0, 1, -1})};
  const auto gf = declared_contexts<QuadScalar>(rays, {"A", "B", "C", "D", "E", "F"},
                                                {{"A", "B", "C", "D"}, {"A", "B", "E", "F"}});
  return build_poset(gf, signatures).poset;
}

inline std::size_t context_count(const RaySet& set) { return analyze(set).frame.contexts.size(); }

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

inline CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

inline std::string last_line(const std::string& text) {
  auto lines = lines_of(text);
  return lines.empty() ? "" : lines.back();
}

}  // namespace ksobs::fixtures
