#include "ksobs/analysis.hpp"

#include <numeric>
#include <sstream>

namespace ksobs {

std::vector<Signature> default_signatures(int dim) {
  if (dim == 3) return {{2, 1}};
  return all_degenerate_signatures(dim);
}

namespace {

template <class S>
void name_auxiliary(GeometricFrame<S>& gf, const std::vector<std::pair<std::string, Ray<S>>>& names) {
  auto& labels = gf.frame.labels;
  const std::size_t first = gf.frame.input_count;
  std::vector<std::string> taken(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(first));
  std::vector<std::optional<std::string>> chosen(labels.size() - first);
  for (std::size_t i = first; i < labels.size(); ++i) {
    for (const auto& [name, ray] : names) {
      if (ray == gf.rays[i] && std::find(taken.begin(), taken.end(), name) == taken.end()) {
        chosen[i - first] = name;
        taken.push_back(name);
        break;
      }
    }
  }
  std::size_t counter = 0;
  for (std::size_t i = first; i < labels.size(); ++i) {
    if (!chosen[i - first]) {
      chosen[i - first] = next_free_label(counter, taken);
      taken.push_back(*chosen[i - first]);
    }
    labels[i] = *chosen[i - first];
  }
}

template <class S>
Analysis analyze_geometric(const RaySet& set, const Coordinates<S>& coords, const AnalysisOptions& options,
                           const std::vector<Signature>& signatures, std::string scalars) {
  GeometricFrame<S> gf;
  if (options.source == ContextSource::Declared) {
    if (set.contexts.empty()) throw Error(ErrorCode::InvalidParams, set.name + " declares no contexts");
    gf = declared_contexts(coords.rays, set.labels, set.contexts);
  } else {
    gf = maximal_contexts(coords.rays, set.labels, options.complete);
    name_auxiliary(gf, coords.auxiliary);
  }
  auto gp = build_poset(gf, signatures);
  return Analysis{std::move(gf.frame), std::move(gp.poset), std::move(scalars)};
}

std::string describe_eps(double eps) {
  std::ostringstream s;
  s << "approx eps=" << eps;
  return s.str();
}

}  // namespace

Analysis analyze(const RaySet& set, const AnalysisOptions& options) {
  const auto signatures = options.signatures.value_or(default_signatures(set.dim));
  for (const auto& sig : signatures) {
    if (std::accumulate(sig.begin(), sig.end(), 0) != set.dim || sig.size() < 2 ||
        sig.size() >= static_cast<std::size_t>(set.dim)) {
      throw Error(ErrorCode::InvalidParams,
                  "signature " + format_signature(sig) + " is not degenerate in dimension " + std::to_string(set.dim));
    }
  }

  if (set.is_graph()) {
    if (options.mode != ScalarMode::Auto) {
      throw Error(ErrorCode::InvalidParams, set.name + " has no coordinates; scalar mode does not apply");
    }
    Frame frame;
    frame.dim = set.dim;
    frame.labels = set.labels;
    frame.input_count = set.labels.size();
    for (const auto& ctx : set.contexts) {
      std::vector<RayId> ids;
      for (const auto& l : ctx) {
        auto id = frame.find(l);
        if (!id) throw Error(ErrorCode::UnknownProjector, "context member '" + l + "' is not a ray label");
        ids.push_back(*id);
      }
      frame.contexts.push_back(std::move(ids));
    }
    WPoset poset = build_poset(frame, signatures);
    return Analysis{std::move(frame), std::move(poset), "graph"};
  }

  if (const auto* exact = std::get_if<ExactCoordinates>(&set.coords)) {
    if (options.mode == ScalarMode::Approx) {
      return analyze_geometric(set, to_approx(*exact, options.approx_epsilon), options, signatures,
                               describe_eps(options.approx_epsilon));
    }
    return analyze_geometric(set, *exact, options, signatures, "exact d=" + std::to_string(exact->d));
  }
  const auto& approx = std::get<ApproxCoordinates>(set.coords);
  if (options.mode == ScalarMode::Exact) {
    throw Error(ErrorCode::InvalidParams, set.name + " has floating coordinates; exact mode is unavailable");
  }
  return analyze_geometric(set, approx, options, signatures, describe_eps(approx.epsilon));
}

}  // namespace ksobs
