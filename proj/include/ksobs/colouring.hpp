#pragma once

// Zero/one valuations of projectors constrained by contexts (orthogonal
// resolutions of the identity: exactly one atom per context takes the value
// 1). Propagation records every derived value with the steps it relied on,
// so a contradiction doubles as a replayable certificate.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ksobs/contexts.hpp"
#include "ksobs/presheaf.hpp"

namespace ksobs {

struct Context {
  std::vector<ProjectorId> atoms;
  std::string label;
};

/// Maximal algebras only, in id order. This is the colouring view.
std::vector<Context> maximal_context_list(const WPoset& poset);

/// Every algebra of the poset as a context, followed by one context per
/// atom a of each non-maximal W realized on a maximal M: {a} together with
/// the atoms of M outside a. Together these say that the value of a is the
/// sum of the values of the M-atoms below it. Duplicate atom sets are
/// dropped. The first maximal_count() entries are the maximal algebras.
std::vector<Context> poset_context_list(const WPoset& poset);

class PartialValuation {
 public:
  PartialValuation() = default;
  explicit PartialValuation(std::size_t projector_count) : values_(projector_count, -1) {}

  std::size_t size() const { return values_.size(); }
  std::optional<bool> get(ProjectorId p) const;
  bool known(ProjectorId p) const { return values_.at(static_cast<std::size_t>(p)) >= 0; }
  void set(ProjectorId p, bool v) { values_.at(static_cast<std::size_t>(p)) = v ? 1 : 0; }
  std::vector<std::pair<ProjectorId, bool>> assigned() const;

  friend bool operator==(const PartialValuation&, const PartialValuation&) = default;

 private:
  std::vector<std::int8_t> values_;
};

enum class Rule { InitialAssignment, OnePerContextZero, LastAtomOne, Contradiction };
const char* to_string(Rule rule);
std::optional<Rule> parse_rule(const std::string& text);

struct TraceStep {
  Rule rule = Rule::InitialAssignment;
  int context = -1;  // index into the context list; -1 for initial values
  ProjectorId subject = -1;
  bool value = false;
  std::vector<int> premises;  // indices of earlier steps
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

enum class Outcome { Fixpoint, Contradiction };

struct PropagationTrace {
  std::vector<TraceStep> steps;
  Outcome outcome = Outcome::Fixpoint;
  friend bool operator==(const PropagationTrace&, const PropagationTrace&) = default;
};

struct Propagation {
  PartialValuation valuation;
  PropagationTrace trace;
};

/// Closes the initial values under the two context rules. Rules are applied
/// in rounds: every round reads the values fixed before it, visiting
/// contexts by index and atoms in order, so a step's premises always come
/// from earlier rounds. Stops at a fixpoint or at the first contradiction.
/// Throws UnknownProjector if an initial subject is in no context.
Propagation propagate(const std::vector<Context>& contexts,
                      const std::vector<std::pair<ProjectorId, bool>>& initial,
                      std::size_t projector_count);

/// Checks every step against its premises and that rerunning propagation
/// from the initial steps reproduces the trace. Returns a description of the
/// first problem, or nullopt if the trace is sound.
std::optional<std::string> replay(const std::vector<Context>& contexts, const PropagationTrace& trace,
                                  std::size_t projector_count);

struct Verified {
  PropagationTrace trace;
  /// Set when propagation alone reached a fixpoint and the contradiction
  /// needed an exhaustive search; counts the nodes it visited.
  std::optional<std::size_t> search_nodes;
};

struct NotForced {
  PartialValuation witness;  // every context has exactly one atom at 1
  PropagationTrace trace;
};

using DpsResult = std::variant<Verified, NotForced>;

/// Assumes the negation of predicted on top of input and tries to extend it
/// to a full colouring of the contexts.
DpsResult verify_dps(const std::vector<Context>& contexts,
                     const std::vector<std::pair<ProjectorId, bool>>& input,
                     std::pair<ProjectorId, bool> predicted, std::size_t projector_count);

struct RootBranch {
  ProjectorId atom = -1;
  /// Propagation trace when setting atom to 1 fails without branching.
  std::optional<PropagationTrace> refutation;
  std::size_t nodes = 0;
};

struct Sat {
  ElementCandidate element;
  PartialValuation valuation;
  std::size_t nodes = 0;
};

struct Unsat {
  std::size_t nodes = 0;
  std::vector<RootBranch> roots;  // one per atom of the first maximal algebra
};

using SearchResult = std::variant<Sat, Unsat>;

/// Backtracking search for a global element: decide which atom of each
/// maximal algebra (by id, atoms in order) takes the value 1 and propagate
/// after every decision. The first model in that order is returned.
SearchResult search_global(const WPoset& poset);

/// The choice of atom at value 1 in each algebra. Throws StructureError if
/// some algebra has no such atom.
ElementCandidate element_from(const WPoset& poset, const PartialValuation& valuation);

// ------------------------------------------------------------ parity

/// Linear system over GF(2): each constraint says the sum of its unknowns
/// equals its parity.
struct ParitySystem {
  int unknowns = 0;
  std::vector<std::vector<int>> constraints;
  std::vector<int> parity;

  /// Nine observables of the 3x3 square: rows and the first two columns
  /// multiply to +1, the last column to -1.
  static ParitySystem magic_square();
};

struct ParityResult {
  bool sat = false;
  std::vector<int> assignment;   // sat: one bit per unknown
  std::vector<int> combination;  // unsat: constraints whose sum reads 0 = 1
  int parity_sum = 0;            // unsat: sum of their parities mod 2
};

/// Throws InvalidParams beyond 64 unknowns or constraints.
ParityResult solve_parity(const ParitySystem& system);

inline ParityResult mermin_parity_check() { return solve_parity(ParitySystem::magic_square()); }

}  // namespace ksobs
