#pragma once

// JSON forms of propagation traces and search results. Steps name rays by
// label and contexts by index into the listed contexts, so a certificate can
// be checked against a ray set without trusting the program that wrote it.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ksobs/colouring.hpp"
#include "ksobs/contexts.hpp"

namespace ksobs {

using Json = nlohmann::ordered_json;

Json contexts_json(const std::vector<Context>& contexts, const WPoset& poset);
Json trace_json(const PropagationTrace& trace, const WPoset& poset);

/// Reads the "contexts" and "steps" of a certificate. Throws ParseError when
/// the listed contexts differ from `contexts` or a label is unknown.
PropagationTrace trace_from_json(const Json& doc, const std::vector<Context>& contexts, const WPoset& poset);

Json valuation_json(const PartialValuation& v, const WPoset& poset);
Json search_json(const SearchResult& result, const std::vector<Context>& contexts, const WPoset& poset);

}  // namespace ksobs
