#include "ksobs/certificate.hpp"

namespace ksobs {

namespace {

const std::string& label_of(const WPoset& poset, ProjectorId p) {
  return poset.projectors.at(static_cast<std::size_t>(p)).label;
}

Json atom_labels(const std::vector<ProjectorId>& atoms, const WPoset& poset) {
  Json a = Json::array();
  for (ProjectorId p : atoms) a.push_back(label_of(poset, p));
  return a;
}

}  // namespace

Json contexts_json(const std::vector<Context>& contexts, const WPoset& poset) {
  Json out = Json::array();
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    out.push_back({{"id", i}, {"atoms", atom_labels(contexts[i].atoms, poset)}});
  }
  return out;
}

Json trace_json(const PropagationTrace& trace, const WPoset& poset) {
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    steps.push_back({{"rule", to_string(s.rule)},
                     {"context", s.context},
                     {"ray", label_of(poset, s.subject)},
                     {"value", s.value ? 1 : 0},
                     {"premises", s.premises}});
  }
  return {{"outcome", trace.outcome == Outcome::Contradiction ? "contradiction" : "fixpoint"},
          {"steps", std::move(steps)}};
}

PropagationTrace trace_from_json(const Json& doc, const std::vector<Context>& contexts, const WPoset& poset) {
  try {
    if (doc.at("contexts") != contexts_json(contexts, poset)) {
      throw ParseError(0, "certificate contexts do not match the ray set's contexts");
    }
    PropagationTrace trace;
    const auto outcome = doc.at("outcome").get<std::string>();
    if (outcome != "contradiction" && outcome != "fixpoint") throw ParseError(0, "unknown outcome " + outcome);
    trace.outcome = outcome == "contradiction" ? Outcome::Contradiction : Outcome::Fixpoint;
    for (const auto& s : doc.at("steps")) {
      TraceStep step;
      auto rule = parse_rule(s.at("rule").get<std::string>());
      if (!rule) throw ParseError(0, "unknown rule " + s.at("rule").dump());
      step.rule = *rule;
      step.context = s.at("context").get<int>();
      const auto label = s.at("ray").get<std::string>();
      auto p = poset.find_projector(label);
      if (!p) throw ParseError(0, "unknown ray '" + label + "' in certificate");
      step.subject = *p;
      step.value = s.at("value").get<int>() != 0;
      step.premises = s.at("premises").get<std::vector<int>>();
      trace.steps.push_back(std::move(step));
    }
    return trace;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed certificate: ") + e.what());
  }
}

Json valuation_json(const PartialValuation& v, const WPoset& poset) {
  Json out = Json::object();
  for (const auto& [p, value] : v.assigned()) out[label_of(poset, p)] = value ? 1 : 0;
  return out;
}

Json search_json(const SearchResult& result, const std::vector<Context>& contexts, const WPoset& poset) {
  Json out = Json::object();
  if (const auto* sat = std::get_if<Sat>(&result)) {
    out["verdict"] = "sat";
    out["nodes"] = sat->nodes;
    Json element = Json::object();
    for (const auto& [a, atom] : sat->element) {
      element[poset.algebra_label(a)] = label_of(poset, poset.algebra(a).atoms[static_cast<std::size_t>(atom)]);
    }
    out["element"] = std::move(element);
    out["valuation"] = valuation_json(sat->valuation, poset);
    return out;
  }
  const auto& unsat = std::get<Unsat>(result);
  out["verdict"] = "unsat";
  out["nodes"] = unsat.nodes;
  out["contexts"] = contexts_json(contexts, poset);
  Json roots = Json::array();
  for (const auto& r : unsat.roots) {
    Json j = {{"ray", label_of(poset, r.atom)}, {"nodes", r.nodes}};
    if (r.refutation) {
      j["refutation"] = trace_json(*r.refutation, poset);
    } else {
      j["exhausted"] = true;
    }
    roots.push_back(std::move(j));
  }
  out["roots"] = std::move(roots);
  return out;
}

}  // namespace ksobs
