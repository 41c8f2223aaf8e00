#pragma once

// Labelled ray sets: the built-in sets and the JSON file format.
//
// File format (one object):
//   "name": string, "dim": integer,
//   "mode": {"exact": {"d": int}} | {"approx": {"epsilon": number}} | {"graph": {}},
//   "rays": {"<label>": ["<scalar>", ...], ...}   (exact / approx)
//           ["<label>", ...]                        (graph: no coordinates)
//   "contexts": [["<label>", ...], ...]             optional; required for graph
//   "auxiliary": {"<label>": ["<scalar>", ...]}     optional names for rays
//                                                   created by completion
//   "provenance": string                            optional
// Exact scalars follow parse_scalar ("1/2", "0-1r" for -sqrt(d)); approximate
// ones are decimal strings (or JSON numbers) read at double precision.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ksobs/exactnum.hpp"
#include "ksobs/rays.hpp"

namespace ksobs {

template <class S>
struct Coordinates {
  std::vector<Ray<S>> rays;  // parallel to RaySet::labels
  std::vector<std::pair<std::string, Ray<S>>> auxiliary;
};

struct ExactCoordinates : Coordinates<QuadScalar> {
  std::int64_t d = 0;
};

struct ApproxCoordinates : Coordinates<ApproxScalar> {
  double epsilon = 1e-9;
};

/// Only labels and declared contexts; poset construction is combinatorial.
struct GraphOnly {};

struct RaySet {
  std::string name;
  int dim = 0;
  std::string provenance;
  std::vector<std::string> labels;
  std::variant<ExactCoordinates, ApproxCoordinates, GraphOnly> coords;
  std::vector<std::vector<std::string>> contexts;  // declared; may be empty

  bool is_exact() const { return std::holds_alternative<ExactCoordinates>(coords); }
  bool is_approx() const { return std::holds_alternative<ApproxCoordinates>(coords); }
  bool is_graph() const { return std::holds_alternative<GraphOnly>(coords); }
};

struct Cg10Params {
  double phi = 0.3;
  /// Both or neither. When absent, beta = -alpha and alpha in (0, pi/6]
  /// solves the constraint by bisection.
  std::optional<double> alpha;
  std::optional<double> beta;
  double epsilon = 1e-12;
};

/// Residual of sin(alpha) sin(beta) cos(alpha - beta) + tan^2(phi).
double cg10_residual(double phi, double alpha, double beta);
/// alpha with beta = -alpha; InvalidParams when |phi| > arctan(1/sqrt 8).
double cg10_solve_alpha(double phi);

std::vector<std::string> builtin_names();
/// UnknownDataset for an unrecognised name.
RaySet builtin(const std::string& name, const Cg10Params& cg10 = {});

struct Loaded {
  RaySet set;
  std::vector<std::string> warnings;  // merged duplicate rays
};

/// Validates, canonicalizes and merges rays equal up to sign. Throws
/// ParseError, ZeroVector or DimMismatch.
Loaded parse_rayset(const std::string& json_text);
Loaded load(const std::filesystem::path& path);

std::string to_json_text(const RaySet& set);
void save(const RaySet& set, const std::filesystem::path& path);

/// Zero-pads every ray, adds the new axis rays and extends each declared
/// context by them. InvalidParams when target_dim <= dim or for graph sets.
RaySet lift(const RaySet& set, int target_dim);

/// Floating copy of an exact set.
ApproxCoordinates to_approx(const ExactCoordinates& exact, double epsilon);

}  // namespace ksobs
