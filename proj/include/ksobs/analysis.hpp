#pragma once

// From a RaySet to its maximal contexts and algebra poset, dispatching on the
// coordinate mode.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ksobs/contexts.hpp"
#include "ksobs/datasets.hpp"

namespace ksobs {

enum class ContextSource { Declared, Discovered };
enum class ScalarMode { Auto, Exact, Approx };

struct AnalysisOptions {
  /// Graph-only sets always use their declared contexts.
  ContextSource source = ContextSource::Discovered;
  bool complete = true;
  std::optional<std::vector<Signature>> signatures;  // default_signatures(dim) when unset
  ScalarMode mode = ScalarMode::Auto;
  double approx_epsilon = 1e-9;  // used when an exact set is run in approx mode
};

/// {2,1} in three dimensions, every degenerate signature otherwise.
std::vector<Signature> default_signatures(int dim);

struct Analysis {
  Frame frame;
  WPoset poset;
  std::string scalars;  // "exact d=2", "approx eps=1e-12", "graph"
};

/// Auxiliary rays matching a named completion in the set take that name;
/// the rest are lettered A, B, ... skipping taken labels.
Analysis analyze(const RaySet& set, const AnalysisOptions& options = {});

}  // namespace ksobs
