#include "ksobs/colouring.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace ksobs {

namespace {

std::string join_labels(const WPoset& poset, const std::vector<ProjectorId>& atoms) {
  std::string out;
  for (ProjectorId p : atoms) {
    if (!out.empty()) out += ",";
    out += poset.projectors.at(static_cast<std::size_t>(p)).label;
  }
  return out;
}

}  // namespace

std::vector<Context> maximal_context_list(const WPoset& poset) {
  std::vector<Context> out;
  for (const auto& a : poset.algebras) {
    if (a.maximal) out.push_back(Context{a.atoms, poset.algebra_label(a.id)});
  }
  return out;
}

std::vector<Context> poset_context_list(const WPoset& poset) {
  std::vector<Context> out = maximal_context_list(poset);
  std::set<std::vector<ProjectorId>> seen;
  auto add = [&](std::vector<ProjectorId> atoms, std::string label) {
    auto key = atoms;
    std::sort(key.begin(), key.end());
    if (seen.insert(key).second) out.push_back(Context{std::move(atoms), std::move(label)});
  };
  for (auto& c : out) {
    auto key = c.atoms;
    std::sort(key.begin(), key.end());
    seen.insert(key);
  }
  for (const auto& a : poset.algebras) {
    if (!a.maximal) add(a.atoms, poset.algebra_label(a.id));
  }
  for (const auto& a : poset.algebras) {
    if (a.maximal) continue;
    for (const auto& r : a.realizations) {
      const auto& m = poset.algebra(r.maximal);
      for (std::size_t b = 0; b < a.atoms.size(); ++b) {
        std::vector<ProjectorId> atoms{a.atoms[b]};
        for (std::size_t i = 0; i < m.atoms.size(); ++i) {
          if (r.block_of[i] != static_cast<int>(b)) atoms.push_back(m.atoms[i]);
        }
        std::string label = join_labels(poset, atoms);
        add(std::move(atoms), std::move(label));
      }
    }
  }
  return out;
}

std::optional<bool> PartialValuation::get(ProjectorId p) const {
  const auto v = values_.at(static_cast<std::size_t>(p));
  if (v < 0) return std::nullopt;
  return v == 1;
}

std::vector<std::pair<ProjectorId, bool>> PartialValuation::assigned() const {
  std::vector<std::pair<ProjectorId, bool>> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] >= 0) out.emplace_back(static_cast<ProjectorId>(i), values_[i] == 1);
  }
  return out;
}

const char* to_string(Rule rule) {
  switch (rule) {
    case Rule::InitialAssignment: return "InitialAssignment";
    case Rule::OnePerContextZero: return "OnePerContextZero";
    case Rule::LastAtomOne: return "LastAtomOne";
    case Rule::Contradiction: return "Contradiction";
  }
  return "?";
}

std::optional<Rule> parse_rule(const std::string& text) {
  for (Rule r : {Rule::InitialAssignment, Rule::OnePerContextZero, Rule::LastAtomOne, Rule::Contradiction}) {
    if (text == to_string(r)) return r;
  }
  return std::nullopt;
}

namespace {

class Propagator {
 public:
  Propagator(const std::vector<Context>& contexts, PartialValuation start)
      : contexts_(contexts), val_(std::move(start)), origin_(val_.size(), -1),
        pending_(val_.size(), -1), pending_step_(val_.size(), -1) {}

  Outcome run(const std::vector<std::pair<ProjectorId, bool>>& initial) {
    for (const auto& [p, v] : initial) {
      if (auto known = val_.get(p)) {
        if (*known == v) continue;
        std::vector<int> premises;
        if (origin_[idx(p)] >= 0) premises.push_back(origin_[idx(p)]);
        return contradict(-1, p, v, std::move(premises));
      }
      val_.set(p, v);
      origin_[idx(p)] = push(Rule::InitialAssignment, -1, p, v, {});
    }
    for (;;) {
      std::vector<ProjectorId> touched;
      for (std::size_t c = 0; c < contexts_.size(); ++c) {
        if (!visit(static_cast<int>(c), touched)) return trace_.outcome = Outcome::Contradiction;
      }
      if (touched.empty()) return trace_.outcome = Outcome::Fixpoint;
      for (ProjectorId p : touched) {
        val_.set(p, pending_[idx(p)] == 1);
        origin_[idx(p)] = pending_step_[idx(p)];
        pending_[idx(p)] = -1;
      }
    }
  }

  PartialValuation& valuation() { return val_; }
  PropagationTrace& trace() { return trace_; }

 private:
  static std::size_t idx(ProjectorId p) { return static_cast<std::size_t>(p); }

  int push(Rule rule, int context, ProjectorId subject, bool value, std::vector<int> premises) {
    std::erase(premises, -1);
    trace_.steps.push_back(TraceStep{rule, context, subject, value, std::move(premises)});
    return static_cast<int>(trace_.steps.size()) - 1;
  }

  Outcome contradict(int context, ProjectorId subject, bool value, std::vector<int> premises) {
    push(Rule::Contradiction, context, subject, value, std::move(premises));
    return trace_.outcome = Outcome::Contradiction;
  }

  // Returns false on contradiction.
  bool force(int context, ProjectorId p, bool value, Rule rule, std::vector<int> premises,
             std::vector<ProjectorId>& touched) {
    const auto i = idx(p);
    if (pending_[i] >= 0) {
      if ((pending_[i] == 1) == value) return true;
      premises.insert(premises.begin(), pending_step_[i]);
      contradict(context, p, value, std::move(premises));
      return false;
    }
    pending_[i] = value ? 1 : 0;
    pending_step_[i] = push(rule, context, p, value, std::move(premises));
    touched.push_back(p);
    return true;
  }

  bool visit(int c, std::vector<ProjectorId>& touched) {
    const auto& atoms = contexts_[static_cast<std::size_t>(c)].atoms;
    std::vector<ProjectorId> ones;
    std::vector<ProjectorId> unknown;
    for (ProjectorId a : atoms) {
      auto v = val_.get(a);
      if (!v) {
        unknown.push_back(a);
      } else if (*v) {
        ones.push_back(a);
      }
    }
    if (ones.size() >= 2) {
      contradict(c, ones[1], true, {origin_[idx(ones[0])], origin_[idx(ones[1])]});
      return false;
    }
    if (ones.size() == 1) {
      for (ProjectorId a : unknown) {
        if (!force(c, a, false, Rule::OnePerContextZero, {origin_[idx(ones[0])]}, touched)) return false;
      }
      return true;
    }
    if (unknown.size() > 1) return true;
    std::vector<int> zeros;
    for (ProjectorId a : atoms) {
      if (unknown.empty() || a != unknown.front()) zeros.push_back(origin_[idx(a)]);
    }
    if (unknown.empty()) {
      contradict(c, atoms.back(), false, std::move(zeros));
      return false;
    }
    return force(c, unknown.front(), true, Rule::LastAtomOne, std::move(zeros), touched);
  }

  const std::vector<Context>& contexts_;
  PartialValuation val_;
  std::vector<int> origin_;
  std::vector<std::int8_t> pending_;
  std::vector<int> pending_step_;
  PropagationTrace trace_;
};

void check_known(const std::vector<Context>& contexts, const std::vector<std::pair<ProjectorId, bool>>& values,
                 std::size_t projector_count) {
  for (const auto& [p, v] : values) {
    bool found = p >= 0 && static_cast<std::size_t>(p) < projector_count;
    if (found) {
      found = std::any_of(contexts.begin(), contexts.end(), [&](const Context& c) {
        return std::find(c.atoms.begin(), c.atoms.end(), p) != c.atoms.end();
      });
    }
    if (!found) {
      throw Error(ErrorCode::UnknownProjector, "projector " + std::to_string(p) + " is in no context");
    }
  }
}

bool has_one(const Context& c, const PartialValuation& v) {
  return std::any_of(c.atoms.begin(), c.atoms.end(), [&](ProjectorId a) { return v.get(a) == true; });
}

// Depth-first extension to a valuation giving every context one atom at 1.
// Branches on the first of the first `decisions` contexts that has no 1
// yet, falling back to any such context.
std::optional<PartialValuation> extend(const std::vector<Context>& contexts, std::size_t decisions,
                                       const PartialValuation& start, std::size_t& nodes) {
  ++nodes;
  const Context* branch = nullptr;
  for (std::size_t i = 0; i < contexts.size() && branch == nullptr; ++i) {
    if (!has_one(contexts[i], start) && i < decisions) branch = &contexts[i];
  }
  for (std::size_t i = 0; i < contexts.size() && branch == nullptr; ++i) {
    if (!has_one(contexts[i], start)) branch = &contexts[i];
  }
  if (branch == nullptr) return start;
  for (ProjectorId a : branch->atoms) {
    if (start.known(a)) continue;
    Propagator prop(contexts, start);
    if (prop.run({{a, true}}) == Outcome::Contradiction) continue;
    if (auto found = extend(contexts, decisions, prop.valuation(), nodes)) return found;
  }
  return std::nullopt;
}

}  // namespace

Propagation propagate(const std::vector<Context>& contexts,
                      const std::vector<std::pair<ProjectorId, bool>>& initial, std::size_t projector_count) {
  check_known(contexts, initial, projector_count);
  Propagator prop(contexts, PartialValuation(projector_count));
  prop.run(initial);
  return Propagation{std::move(prop.valuation()), std::move(prop.trace())};
}

namespace {

bool in_context(const Context& c, ProjectorId p) {
  return std::find(c.atoms.begin(), c.atoms.end(), p) != c.atoms.end();
}

// Premises justify subject = value inside context c by one of the two rules.
bool justifies(const Context& c, ProjectorId subject, bool value, const std::vector<const TraceStep*>& premises) {
  if (!in_context(c, subject)) return false;
  if (!value) {
    return premises.size() == 1 && premises[0]->value && premises[0]->subject != subject &&
           in_context(c, premises[0]->subject);
  }
  std::set<ProjectorId> zero;
  for (const auto* p : premises) {
    if (p->value || !in_context(c, p->subject)) return false;
    zero.insert(p->subject);
  }
  for (ProjectorId a : c.atoms) {
    if (a != subject && !zero.contains(a)) return false;
  }
  return true;
}

std::optional<std::string> check_step(const std::vector<Context>& contexts, const PropagationTrace& trace,
                                      std::size_t i) {
  const auto& s = trace.steps[i];
  std::vector<const TraceStep*> premises;
  for (int p : s.premises) {
    if (p < 0 || static_cast<std::size_t>(p) >= i) return "premise " + std::to_string(p) + " is not an earlier step";
    premises.push_back(&trace.steps[static_cast<std::size_t>(p)]);
  }
  const bool has_context = s.context >= 0 && static_cast<std::size_t>(s.context) < contexts.size();
  if (!has_context && (s.context != -1 || s.rule == Rule::OnePerContextZero || s.rule == Rule::LastAtomOne)) {
    return "unknown context " + std::to_string(s.context);
  }
  switch (s.rule) {
    case Rule::InitialAssignment:
      if (!premises.empty()) return std::string("initial assignment with premises");
      return std::nullopt;
    case Rule::OnePerContextZero:
      if (s.value || !justifies(contexts[static_cast<std::size_t>(s.context)], s.subject, false, premises)) {
        return std::string("OnePerContextZero not justified");
      }
      return std::nullopt;
    case Rule::LastAtomOne:
      if (!s.value || !justifies(contexts[static_cast<std::size_t>(s.context)], s.subject, true, premises)) {
        return std::string("LastAtomOne not justified");
      }
      return std::nullopt;
    case Rule::Contradiction: break;
  }
  if (i + 1 != trace.steps.size()) return std::string("contradiction is not the last step");
  // clash with an earlier value for the same subject
  for (std::size_t k = 0; k < premises.size(); ++k) {
    if (premises[k]->subject != s.subject || premises[k]->value == s.value) continue;
    if (!has_context) return std::nullopt;
    auto rest = premises;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
    if (justifies(contexts[static_cast<std::size_t>(s.context)], s.subject, s.value, rest)) return std::nullopt;
  }
  if (has_context) {
    const auto& c = contexts[static_cast<std::size_t>(s.context)];
    std::set<ProjectorId> ones;
    std::set<ProjectorId> zeros;
    for (const auto* p : premises) {
      if (!in_context(c, p->subject)) continue;
      (p->value ? ones : zeros).insert(p->subject);
    }
    if (ones.size() >= 2) return std::nullopt;
    if (zeros.size() == c.atoms.size()) return std::nullopt;
  }
  return std::string("contradiction not justified");
}

}  // namespace

std::optional<std::string> replay(const std::vector<Context>& contexts, const PropagationTrace& trace,
                                  std::size_t projector_count) {
  std::vector<std::pair<ProjectorId, bool>> initial;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    if (s.subject < 0 || static_cast<std::size_t>(s.subject) >= projector_count) {
      return "step " + std::to_string(i) + ": unknown projector " + std::to_string(s.subject);
    }
    if (auto problem = check_step(contexts, trace, i)) return "step " + std::to_string(i) + ": " + *problem;
    if (s.rule == Rule::InitialAssignment || (s.rule == Rule::Contradiction && s.context == -1)) {
      initial.emplace_back(s.subject, s.value);
    }
  }
  const bool ends_in_contradiction = !trace.steps.empty() && trace.steps.back().rule == Rule::Contradiction;
  if (ends_in_contradiction != (trace.outcome == Outcome::Contradiction)) {
    return std::string("outcome does not match the final step");
  }
  Propagation again;
  try {
    again = propagate(contexts, initial, projector_count);
  } catch (const Error& e) {
    return std::string(e.what());
  }
  if (again.trace != trace) return std::string("rerunning propagation diverges from the recorded trace");
  return std::nullopt;
}

DpsResult verify_dps(const std::vector<Context>& contexts, const std::vector<std::pair<ProjectorId, bool>>& input,
                     std::pair<ProjectorId, bool> predicted, std::size_t projector_count) {
  auto initial = input;
  initial.emplace_back(predicted.first, !predicted.second);
  auto prop = propagate(contexts, initial, projector_count);
  if (prop.trace.outcome == Outcome::Contradiction) return Verified{std::move(prop.trace), std::nullopt};
  std::size_t nodes = 0;
  if (auto witness = extend(contexts, contexts.size(), prop.valuation, nodes)) {
    return NotForced{std::move(*witness), std::move(prop.trace)};
  }
  return Verified{std::move(prop.trace), nodes};
}

ElementCandidate element_from(const WPoset& poset, const PartialValuation& valuation) {
  ElementCandidate out;
  for (const auto& a : poset.algebras) {
    int chosen = -1;
    for (std::size_t i = 0; i < a.atoms.size(); ++i) {
      if (valuation.get(a.atoms[i]) == true) {
        if (chosen >= 0) throw Error(ErrorCode::StructureError, "two atoms at 1 in " + poset.algebra_label(a.id));
        chosen = static_cast<int>(i);
      }
    }
    if (chosen < 0) throw Error(ErrorCode::StructureError, "no atom at 1 in " + poset.algebra_label(a.id));
    out.emplace(a.id, chosen);
  }
  return out;
}

SearchResult search_global(const WPoset& poset) {
  const auto contexts = poset_context_list(poset);
  const std::size_t decisions = poset.maximal_count();
  const PartialValuation empty(poset.projectors.size());
  if (contexts.empty()) return Sat{ElementCandidate{}, empty, 1};

  Unsat unsat;
  unsat.nodes = 1;
  for (ProjectorId a : contexts.front().atoms) {
    RootBranch branch{a, std::nullopt, 0};
    Propagator prop(contexts, empty);
    if (prop.run({{a, true}}) == Outcome::Contradiction) {
      branch.refutation = std::move(prop.trace());
      branch.nodes = 1;
    } else if (auto found = extend(contexts, decisions, prop.valuation(), branch.nodes)) {
      auto element = element_from(poset, *found);
      if (auto v = find_violation(poset, element)) {
        throw Error(ErrorCode::StructureError, "search produced an incompatible element");
      }
      return Sat{std::move(element), std::move(*found), unsat.nodes + branch.nodes};
    }
    unsat.nodes += branch.nodes;
    unsat.roots.push_back(std::move(branch));
  }
  return unsat;
}

// ------------------------------------------------------------ parity

ParitySystem ParitySystem::magic_square() {
  ParitySystem s;
  s.unknowns = 9;
  for (int r = 0; r < 3; ++r) {
    s.constraints.push_back({3 * r, 3 * r + 1, 3 * r + 2});
    s.parity.push_back(0);
  }
  for (int c = 0; c < 3; ++c) {
    s.constraints.push_back({c, 3 + c, 6 + c});
    s.parity.push_back(c == 2 ? 1 : 0);
  }
  return s;
}

ParityResult solve_parity(const ParitySystem& system) {
  const std::size_t m = system.constraints.size();
  if (system.unknowns > 64 || m > 64 || system.parity.size() != m) {
    throw Error(ErrorCode::InvalidParams, "parity system too large or malformed");
  }
  struct Row {
    std::uint64_t vars = 0;
    std::uint64_t used = 0;  // which original constraints were summed into this row
    int parity = 0;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < m; ++i) {
    Row r;
    for (int v : system.constraints[i]) {
      if (v < 0 || v >= system.unknowns) throw Error(ErrorCode::InvalidParams, "unknown out of range");
      r.vars ^= std::uint64_t{1} << v;
    }
    r.used = std::uint64_t{1} << i;
    r.parity = system.parity[i] & 1;
    rows.push_back(r);
  }

  std::vector<int> pivot_row(static_cast<std::size_t>(system.unknowns), -1);
  std::size_t rank = 0;
  for (int v = 0; v < system.unknowns && rank < m; ++v) {
    const std::uint64_t bit = std::uint64_t{1} << v;
    std::size_t p = rank;
    while (p < m && (rows[p].vars & bit) == 0) ++p;
    if (p == m) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r != rank && (rows[r].vars & bit) != 0) {
        rows[r].vars ^= rows[rank].vars;
        rows[r].used ^= rows[rank].used;
        rows[r].parity ^= rows[rank].parity;
      }
    }
    pivot_row[static_cast<std::size_t>(v)] = static_cast<int>(rank);
    ++rank;
  }

  ParityResult out;
  for (std::size_t r = rank; r < m; ++r) {
    if (rows[r].vars == 0 && rows[r].parity == 1) {
      for (std::size_t i = 0; i < m; ++i) {
        if ((rows[r].used >> i) & 1) out.combination.push_back(static_cast<int>(i));
      }
      for (int i : out.combination) out.parity_sum ^= system.parity[static_cast<std::size_t>(i)] & 1;
      return out;
    }
  }
  out.sat = true;
  out.assignment.assign(static_cast<std::size_t>(system.unknowns), 0);
  for (int v = 0; v < system.unknowns; ++v) {
    const int r = pivot_row[static_cast<std::size_t>(v)];
    if (r >= 0) out.assignment[static_cast<std::size_t>(v)] = rows[static_cast<std::size_t>(r)].parity;
  }
  return out;
}

}  // namespace ksobs
