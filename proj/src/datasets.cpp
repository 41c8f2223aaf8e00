#include "ksobs/datasets.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ksobs/contexts.hpp"

namespace ksobs {

using Json = nlohmann::ordered_json;

namespace {

struct Row {
  std::string label;
  std::vector<std::string> coords;
};

template <class S>
Ray<S> ray_from(const std::vector<S>& coords) {
  Vector<S> v(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) v(static_cast<Eigen::Index>(i)) = coords[i];
  return canonicalize<S>(v);
}

Ray<QuadScalar> exact_ray(const std::vector<std::string>& coords, std::int64_t d) {
  std::vector<QuadScalar> xs;
  for (const auto& c : coords) xs.push_back(parse_scalar(c, d));
  return ray_from(xs);
}

template <class S>
Ray<S> completion_of(const Ray<S>& a, const Ray<S>& b) {
  return canonicalize<S>(orthocomplement(span(std::vector<Ray<S>>{a, b})).basis().row(0).transpose());
}

// Names the rays completion will add to the pairs given by member labels.
template <class Coords>
void name_completions(const RaySet& set, Coords& coords,
                      const std::vector<std::tuple<std::string, std::string, std::string>>& names) {
  auto ray = [&](const std::string& label) {
    for (std::size_t i = 0; i < set.labels.size(); ++i) {
      if (set.labels[i] == label) return coords.rays[i];
    }
    throw Error(ErrorCode::StructureError, "no ray " + label);
  };
  for (const auto& [name, a, b] : names) coords.auxiliary.emplace_back(name, completion_of(ray(a), ray(b)));
}

RaySet exact_set(std::string name, int dim, std::int64_t d, const std::vector<Row>& rows, std::string provenance) {
  RaySet set;
  set.name = std::move(name);
  set.dim = dim;
  set.provenance = std::move(provenance);
  ExactCoordinates coords;
  coords.d = d;
  for (const auto& r : rows) {
    set.labels.push_back(r.label);
    coords.rays.push_back(exact_ray(r.coords, d));
  }
  set.coords = std::move(coords);
  return set;
}

RaySet clifton8() {
  RaySet set = exact_set("clifton8", 3, 0,
                         {{"r1", {"1", "0", "-1"}},
                          {"r2", {"1", "0", "1"}},
                          {"r3", {"0", "1", "0"}},
                          {"r4", {"0", "0", "1"}},
                          {"r5", {"1", "-1", "0"}},
                          {"r6", {"1", "1", "0"}},
                          {"r7", {"1", "1", "1"}},
                          {"r8", {"-1", "1", "1"}}},
                         "Clifton's eight-ray definite prediction set: r7 = 1 forces r8 = 0. "
                         "Completion adds five rays; A..E name the completions of "
                         "{r1,r7}, {r3,r4}, {r5,r7}, {r2,r8}, {r6,r8}.");
  name_completions(set, std::get<ExactCoordinates>(set.coords),
                   {{"A", "r1", "r7"}, {"B", "r3", "r4"}, {"C", "r5", "r7"}, {"D", "r2", "r8"}, {"E", "r6", "r8"}});
  return set;
}

RaySet cg10(const Cg10Params& p) {
  const double bound = std::atan(1.0 / std::sqrt(8.0));
  if (!(std::abs(p.phi) <= bound) || p.phi == 0.0) {
    throw Error(ErrorCode::InvalidParams, "cg10 needs 0 < |phi| <= arctan(1/sqrt 8)");
  }
  if (p.alpha.has_value() != p.beta.has_value()) {
    throw Error(ErrorCode::InvalidParams, "cg10 alpha and beta go together");
  }
  const double alpha = p.alpha ? *p.alpha : cg10_solve_alpha(p.phi);
  const double beta = p.beta ? *p.beta : -alpha;
  if (alpha == beta || std::sin(alpha) == 0.0 || std::sin(beta) == 0.0) {
    throw Error(ErrorCode::InvalidParams, "cg10 needs alpha != beta and nonzero sines");
  }
  if (std::abs(cg10_residual(p.phi, alpha, beta)) > p.epsilon) {
    throw Error(ErrorCode::InvalidParams, "cg10 parameters violate the constraint equation");
  }
  const double t = std::tan(p.phi);
  const double cot = 1.0 / t;
  const std::vector<std::pair<std::string, std::vector<double>>> rows = {
      {"r1", {1, 0, 0}},
      {"r2", {0, std::cos(alpha), std::sin(alpha)}},
      {"r3", {cot, 1, -std::cos(alpha) / std::sin(alpha)}},
      {"r4", {t / std::sin(alpha), -std::sin(alpha), std::cos(alpha)}},
      {"r5", {0, std::cos(beta), std::sin(beta)}},
      {"r6", {cot, 1, -std::cos(beta) / std::sin(beta)}},
      {"r7", {t / std::sin(beta), -std::sin(beta), std::cos(beta)}},
      {"r8", {std::sin(p.phi), -std::cos(p.phi), 0}},
      {"r9", {0, 0, 1}},
      {"r10", {std::cos(p.phi), std::sin(p.phi), 0}},
  };
  RaySet set;
  set.name = "cg10";
  set.dim = 3;
  std::ostringstream prov;
  prov.precision(17);
  prov << "Ten-ray set of Cabello and Garcia-Alcaine: r1 = 1 forces r10 = 1. phi = " << p.phi
       << ", alpha = " << alpha << ", beta = " << beta
       << ". The third coordinate of r8 is taken as 0, which makes r8 "
          "orthogonal to r3, r6, r9 and r10 as the orthogonality diagram requires "
          "(and to nothing else). A..F name the completions of {r1,r2}, {r1,r5}, {r3,r8}, "
          "{r6,r8}, {r4,r7}, {r1,r9}.";
  set.provenance = prov.str();
  ApproxCoordinates coords;
  coords.epsilon = p.epsilon;
  for (const auto& [label, xs] : rows) {
    set.labels.push_back(label);
    std::vector<ApproxScalar> v;
    for (double x : xs) v.emplace_back(x, p.epsilon);
    coords.rays.push_back(ray_from(v));
  }
  name_completions(set, coords,
                   {{"A", "r1", "r2"}, {"B", "r1", "r5"}, {"C", "r3", "r8"},
                    {"D", "r6", "r8"}, {"E", "r4", "r7"}, {"F", "r1", "r9"}});
  set.coords = std::move(coords);
  return set;
}

RaySet peres33() {
  // Entries from {0, +-1, +-sqrt 2}: the three axes, the permutations of
  // (0, 1, +-1), (0, 1, +-sqrt 2) and (1, +-1, +-sqrt 2), up to sign.
  std::vector<Row> rows;
  std::vector<Ray<QuadScalar>> seen;
  const std::vector<std::string> values = {"0", "1", "-1", "0+1r", "0-1r"};
  for (const auto& a : values) {
    for (const auto& b : values) {
      for (const auto& c : values) {
        int zeros = 0;
        int ones = 0;
        for (const auto* x : {&a, &b, &c}) {
          zeros += *x == "0";
          ones += *x == "1" || *x == "-1";
        }
        const int roots = 3 - zeros - ones;
        const bool wanted = (zeros == 2 && ones == 1) || (zeros == 1 && ones == 2) ||
                            (zeros == 1 && ones == 1 && roots == 1) || (ones == 2 && roots == 1);
        if (!wanted) continue;
        auto r = exact_ray({a, b, c}, 2);
        if (std::find(seen.begin(), seen.end(), r) != seen.end()) continue;
        seen.push_back(r);
        std::vector<std::string> canon;
        for (Eigen::Index i = 0; i < 3; ++i) canon.push_back(render(r.vector()(i)));
        rows.push_back({"p" + std::to_string(rows.size() + 1), canon});
      }
    }
  }
  return exact_set("peres33", 3, 2, rows,
                   "Peres' 33 rays with coordinates in {0, +-1, +-sqrt 2}. Completion gives 40 "
                   "maximal contexts and 24 further rays; no valuation exists.");
}

RaySet mermin24() {
  RaySet set = exact_set("mermin24", 4, 0,
                         {{"A1", {"1", "0", "1", "0"}},  {"A2", {"-1", "0", "1", "0"}},
                          {"A3", {"0", "1", "0", "1"}},  {"A4", {"0", "1", "0", "-1"}},
                          {"B1", {"1", "1", "0", "0"}},  {"B2", {"1", "-1", "0", "0"}},
                          {"B3", {"0", "0", "1", "1"}},  {"B4", {"0", "0", "1", "-1"}},
                          {"C1", {"1", "0", "0", "1"}},  {"C2", {"1", "0", "0", "-1"}},
                          {"C3", {"0", "1", "1", "0"}},  {"C4", {"0", "1", "-1", "0"}},
                          {"D1", {"1", "0", "0", "0"}},  {"D2", {"0", "1", "0", "0"}},
                          {"D3", {"0", "0", "1", "0"}},  {"D4", {"0", "0", "0", "1"}},
                          {"E1", {"1", "1", "1", "1"}},  {"E2", {"-1", "1", "-1", "1"}},
                          {"E3", {"-1", "1", "1", "-1"}}, {"E4", {"1", "1", "-1", "-1"}},
                          {"F1", {"-1", "1", "1", "1"}}, {"F2", {"1", "-1", "1", "1"}},
                          {"F3", {"1", "1", "-1", "1"}}, {"F4", {"1", "1", "1", "-1"}}},
                         "Peres' 24 rays in four dimensions, grouped into the six tetrads A..F "
                         "behind Mermin's square of observables. Totally non-colourable.");
  for (const char* t : {"A", "B", "C", "D", "E", "F"}) {
    std::vector<std::string> ctx;
    for (int i = 1; i <= 4; ++i) ctx.push_back(t + std::to_string(i));
    set.contexts.push_back(std::move(ctx));
  }
  return set;
}

// Clifton's gadget on an input ray and an output ray: input = 1 forces
// output = 0. Internal rays are prefixed; `shared` maps internal names to
// rays of an earlier gadget.
void add_gadget(RaySet& set, const std::string& prefix, const std::string& in, const std::string& out,
                const std::map<std::string, std::string>& shared = {}) {
  auto name = [&](const std::string& local) {
    if (auto it = shared.find(local); it != shared.end()) return it->second;
    return prefix + local;
  };
  const std::vector<std::vector<std::string>> local = {
      {"1", "2", "3"}, {"4", "5", "6"}, {"1", "@in", "A"}, {"5", "@in", "C"},
      {"2", "@out", "D"}, {"6", "@out", "E"}, {"3", "4", "B"}};
  for (const auto& ctx : local) {
    std::vector<std::string> members;
    for (const auto& m : ctx) members.push_back(m == "@in" ? in : m == "@out" ? out : name(m));
    if (std::find(set.contexts.begin(), set.contexts.end(), members) != set.contexts.end()) continue;
    for (const auto& m : members) {
      if (std::find(set.labels.begin(), set.labels.end(), m) == set.labels.end()) set.labels.push_back(m);
    }
    set.contexts.push_back(std::move(members));
  }
}

RaySet cg_appendix(bool shared_input_context) {
  RaySet set;
  set.dim = 3;
  set.coords = GraphOnly{};
  set.labels = {"x", "u", "v", "y"};
  add_gadget(set, "g", "x", "u");
  if (shared_input_context) {
    set.name = "cg_appendix_b";
    add_gadget(set, "h", "x", "v", {{"1", "g1"}, {"A", "gA"}});
    set.provenance =
        "Graph-level reconstruction of the second appendix set of Cabello and Garcia-Alcaine: "
        "two Clifton gadgets x -> u = 0 and x -> v = 0 that share the context {g1, x, gA}, "
        "closed by the context {u, v, y}, so x = 1 forces y = 1. 14 contexts; after "
        "reduction the inclusion graph has 7 loops of at most 6 maximal algebras, the shortest "
        "of 10 algebras. No coordinates: only the orthogonality diagram is reproduced.";
  } else {
    set.name = "cg_appendix_a";
    add_gadget(set, "h", "x", "v");
    set.provenance =
        "Graph-level reconstruction of the first appendix set of Cabello and Garcia-Alcaine: "
        "two disjoint Clifton gadgets x -> u = 0 and x -> v = 0 closed by the context "
        "{u, v, y}, so x = 1 forces y = 1. 15 contexts; after reduction the inclusion graph "
        "has 6 loops of at most 6 maximal algebras, the shortest of 10 algebras. No "
        "coordinates: only the orthogonality diagram is reproduced.";
  }
  set.contexts.push_back({"u", "v", "y"});
  return set;
}

}  // namespace

double cg10_residual(double phi, double alpha, double beta) {
  const double t = std::tan(phi);
  return std::sin(alpha) * std::sin(beta) * std::cos(alpha - beta) + t * t;
}

double cg10_solve_alpha(double phi) {
  // with beta = -alpha the constraint reads s (1 - 2 s) = tan^2 phi for
  // s = sin^2 alpha, increasing on alpha in (0, pi/6]
  const double target = std::tan(phi) * std::tan(phi);
  if (target > 0.125 + 1e-15) throw Error(ErrorCode::InvalidParams, "|phi| exceeds arctan(1/sqrt 8)");
  auto f = [&](double a) {
    const double s = std::sin(a) * std::sin(a);
    return s * (1 - 2 * s) - target;
  };
  double lo = 0.0;
  double hi = std::numbers::pi / 6;
  for (int i = 0; i < 200 && hi - lo > 0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

std::vector<std::string> builtin_names() {
  return {"clifton8", "cg10", "cg_appendix_a", "cg_appendix_b", "peres33", "mermin24"};
}

RaySet builtin(const std::string& name, const Cg10Params& cg10_params) {
  if (name == "clifton8") return clifton8();
  if (name == "cg10") return cg10(cg10_params);
  if (name == "cg_appendix_a") return cg_appendix(false);
  if (name == "cg_appendix_b") return cg_appendix(true);
  if (name == "peres33") return peres33();
  if (name == "mermin24") return mermin24();
  throw Error(ErrorCode::UnknownDataset, "no built-in ray set named '" + name + "'");
}

// ---------------------------------------------------------------- JSON

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw ParseError(0, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) schema_error(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

template <class S, class ParseOne>
Ray<S> parse_ray(const std::string& label, const Json& coords, int dim, ParseOne parse_one) {
  if (!coords.is_array()) schema_error("ray '" + label + "' must be an array of scalars");
  if (coords.size() != static_cast<std::size_t>(dim)) {
    throw Error(ErrorCode::DimMismatch, "ray '" + label + "' has " + std::to_string(coords.size()) +
                                            " coordinates, expected " + std::to_string(dim));
  }
  std::vector<S> xs;
  for (const auto& c : coords) {
    try {
      xs.push_back(parse_one(c));
    } catch (const ParseError& e) {
      throw ParseError(e.position(), "ray '" + label + "': " + e.what());
    }
  }
  try {
    return ray_from(xs);
  } catch (const Error& e) {
    throw Error(e.code(), "ray '" + label + "': " + e.what());
  }
}

template <class S, class ParseOne>
void read_coordinates(const Json& doc, RaySet& set, Coordinates<S>& coords, ParseOne parse_one,
                      std::vector<std::string>& warnings, std::map<std::string, std::string>& renamed) {
  const Json& rays = field(doc, "rays");
  if (!rays.is_object()) schema_error("'rays' must map labels to coordinate arrays");
  for (const auto& [label, value] : rays.items()) {
    Ray<S> r = parse_ray<S>(label, value, set.dim, parse_one);
    auto it = std::find(coords.rays.begin(), coords.rays.end(), r);
    if (it != coords.rays.end()) {
      const auto& kept = set.labels[static_cast<std::size_t>(it - coords.rays.begin())];
      warnings.push_back("ray '" + label + "' is the same ray as '" + kept + "'; merged into '" + kept + "'");
      renamed[label] = kept;
      continue;
    }
    set.labels.push_back(label);
    coords.rays.push_back(std::move(r));
  }
  if (doc.contains("auxiliary")) {
    const Json& aux = doc.at("auxiliary");
    if (!aux.is_object()) schema_error("'auxiliary' must map labels to coordinate arrays");
    for (const auto& [label, value] : aux.items()) {
      coords.auxiliary.emplace_back(label, parse_ray<S>(label, value, set.dim, parse_one));
    }
  }
}

}  // namespace

Loaded parse_rayset(const std::string& json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, e.what());
  }
  if (!doc.is_object()) schema_error("ray set must be a JSON object");

  Loaded out;
  RaySet& set = out.set;
  set.name = string_field(doc, "name");
  const Json& dim = field(doc, "dim");
  if (!dim.is_number_integer() || dim.get<int>() < 2) schema_error("'dim' must be an integer >= 2");
  set.dim = dim.get<int>();
  if (doc.contains("provenance")) set.provenance = string_field(doc, "provenance");

  const Json& mode = field(doc, "mode");
  if (!mode.is_object() || mode.size() != 1) schema_error("'mode' must have exactly one of exact, approx, graph");
  std::map<std::string, std::string> renamed;
  if (mode.contains("exact")) {
    const Json& d = field(mode.at("exact"), "d");
    if (!d.is_number_integer() || !is_square_free(d.get<std::int64_t>())) {
      schema_error("'d' must be a non-negative square-free integer");
    }
    ExactCoordinates coords;
    coords.d = d.get<std::int64_t>();
    read_coordinates<QuadScalar>(
        doc, set, coords,
        [&](const Json& c) {
          if (!c.is_string()) throw ParseError(0, "exact scalars must be strings");
          return parse_scalar(c.get<std::string>(), coords.d);
        },
        out.warnings, renamed);
    set.coords = std::move(coords);
  } else if (mode.contains("approx")) {
    const Json& eps = field(mode.at("approx"), "epsilon");
    if (!eps.is_number() || !(eps.get<double>() > 0)) schema_error("'epsilon' must be a positive number");
    ApproxCoordinates coords;
    coords.epsilon = eps.get<double>();
    read_coordinates<ApproxScalar>(
        doc, set, coords,
        [&](const Json& c) {
          if (c.is_number()) return ApproxScalar(c.get<double>(), coords.epsilon);
          if (!c.is_string()) throw ParseError(0, "approximate scalars must be strings or numbers");
          return parse_approx(c.get<std::string>(), coords.epsilon);
        },
        out.warnings, renamed);
    set.coords = std::move(coords);
  } else if (mode.contains("graph")) {
    const Json& rays = field(doc, "rays");
    if (!rays.is_array()) schema_error("graph mode 'rays' must be an array of labels");
    for (const auto& r : rays) {
      if (!r.is_string()) schema_error("graph mode 'rays' must be an array of labels");
      set.labels.push_back(r.get<std::string>());
    }
    set.coords = GraphOnly{};
    if (!doc.contains("contexts")) schema_error("graph mode needs 'contexts'");
  } else {
    schema_error("'mode' must be exact, approx or graph");
  }

  for (std::size_t i = 0; i < set.labels.size(); ++i) {
    for (std::size_t j = i + 1; j < set.labels.size(); ++j) {
      if (set.labels[i] == set.labels[j]) schema_error("duplicate label '" + set.labels[i] + "'");
    }
  }

  if (doc.contains("contexts")) {
    const Json& ctxs = doc.at("contexts");
    if (!ctxs.is_array()) schema_error("'contexts' must be an array of label arrays");
    for (const auto& c : ctxs) {
      if (!c.is_array()) schema_error("'contexts' must be an array of label arrays");
      std::vector<std::string> members;
      for (const auto& m : c) {
        if (!m.is_string()) schema_error("context members must be labels");
        auto label = m.get<std::string>();
        if (auto it = renamed.find(label); it != renamed.end()) label = it->second;
        if (std::find(set.labels.begin(), set.labels.end(), label) == set.labels.end()) {
          schema_error("context member '" + label + "' is not a ray label");
        }
        members.push_back(std::move(label));
      }
      if (members.size() != static_cast<std::size_t>(set.dim)) {
        throw Error(ErrorCode::DimMismatch, "context with " + std::to_string(members.size()) +
                                                " members in dimension " + std::to_string(set.dim));
      }
      set.contexts.push_back(std::move(members));
    }
  }
  return out;
}

Loaded load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rayset(buf.str());
}

namespace {

template <class S>
Json coords_json(const Ray<S>& r) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < r.dim(); ++i) a.push_back(render(r.vector()(i)));
  return a;
}

template <class S>
void write_coordinates(Json& doc, const RaySet& set, const Coordinates<S>& coords) {
  Json rays = Json::object();
  for (std::size_t i = 0; i < set.labels.size(); ++i) rays[set.labels[i]] = coords_json(coords.rays[i]);
  doc["rays"] = std::move(rays);
}

}  // namespace

std::string to_json_text(const RaySet& set) {
  Json doc = Json::object();
  doc["name"] = set.name;
  doc["dim"] = set.dim;
  const Coordinates<QuadScalar>* exact_aux = nullptr;
  const Coordinates<ApproxScalar>* approx_aux = nullptr;
  if (const auto* e = std::get_if<ExactCoordinates>(&set.coords)) {
    doc["mode"] = {{"exact", {{"d", e->d}}}};
    write_coordinates(doc, set, *e);
    exact_aux = e;
  } else if (const auto* a = std::get_if<ApproxCoordinates>(&set.coords)) {
    doc["mode"] = {{"approx", {{"epsilon", a->epsilon}}}};
    write_coordinates(doc, set, *a);
    approx_aux = a;
  } else {
    doc["mode"] = {{"graph", Json::object()}};
    doc["rays"] = set.labels;
  }
  if (!set.contexts.empty()) doc["contexts"] = set.contexts;
  auto write_aux = [&](const auto& aux) {
    if (aux.empty()) return;
    Json j = Json::object();
    for (const auto& [label, ray] : aux) j[label] = coords_json(ray);
    doc["auxiliary"] = std::move(j);
  };
  if (exact_aux) write_aux(exact_aux->auxiliary);
  if (approx_aux) write_aux(approx_aux->auxiliary);
  if (!set.provenance.empty()) doc["provenance"] = set.provenance;
  return doc.dump(2) + "\n";
}

void save(const RaySet& set, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidParams, "cannot write " + path.string());
  out << to_json_text(set);
  if (!out) throw Error(ErrorCode::InvalidParams, "failed writing " + path.string());
}

// ---------------------------------------------------------------- lift

namespace {

template <class S, class Coords>
void lift_coordinates(RaySet& set, Coords& coords, int target_dim) {
  auto [rays, labels] = lift_dimension<S>(coords.rays, set.labels, target_dim);
  std::vector<std::string> added(labels.begin() + static_cast<std::ptrdiff_t>(set.labels.size()), labels.end());
  coords.rays = std::move(rays);
  set.labels = std::move(labels);
  for (auto& [label, ray] : coords.auxiliary) ray = canonicalize<S>(pad<S>(ray.vector(), target_dim));
  for (auto& ctx : set.contexts) ctx.insert(ctx.end(), added.begin(), added.end());
}

}  // namespace

RaySet lift(const RaySet& set, int target_dim) {
  if (target_dim <= set.dim) {
    throw Error(ErrorCode::InvalidParams,
                "lift target dimension " + std::to_string(target_dim) + " must exceed " + std::to_string(set.dim));
  }
  RaySet out = set;
  out.name = set.name + "_" + std::to_string(target_dim) + "d";
  out.dim = target_dim;
  if (auto* e = std::get_if<ExactCoordinates>(&out.coords)) {
    lift_coordinates<QuadScalar>(out, *e, target_dim);
  } else if (auto* a = std::get_if<ApproxCoordinates>(&out.coords)) {
    lift_coordinates<ApproxScalar>(out, *a, target_dim);
  } else {
    throw Error(ErrorCode::InvalidParams, "graph-only ray sets have no coordinates to lift");
  }
  out.provenance = set.provenance.empty() ? "" : set.provenance + " ";
  out.provenance += "Lifted to dimension " + std::to_string(target_dim) + " by zero-padding.";
  return out;
}

ApproxCoordinates to_approx(const ExactCoordinates& exact, double epsilon) {
  auto convert = [&](const Ray<QuadScalar>& r) {
    std::vector<ApproxScalar> xs;
    for (Eigen::Index i = 0; i < r.dim(); ++i) xs.emplace_back(r.vector()(i).to_double(), epsilon);
    return ray_from(xs);
  };
  ApproxCoordinates out;
  out.epsilon = epsilon;
  for (const auto& r : exact.rays) out.rays.push_back(convert(r));
  for (const auto& [label, r] : exact.auxiliary) out.auxiliary.emplace_back(label, convert(r));
  return out;
}

}  // namespace ksobs
