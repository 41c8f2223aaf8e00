#pragma once

// The dual presheaf over a WPoset. A homomorphism from an algebra into
// {0, 1} is determined by the single atom it sends to 1, so fibers are
// indexed by atoms and restriction is the atom map of an inclusion.

#include <map>
#include <optional>
#include <vector>

#include "ksobs/contexts.hpp"

namespace ksobs {

struct Hom {
  AlgebraId algebra = -1;
  int atom = -1;
  friend auto operator<=>(const Hom&, const Hom&) = default;
};

/// Chosen atom per algebra; total when every algebra of the poset has a key.
using ElementCandidate = std::map<AlgebraId, int>;

struct Violation {
  HasseEdge edge;
  Hom expected;  // restriction of the parent's choice
  Hom found;     // the child's own choice
};

std::vector<Hom> fiber(const WPoset& poset, AlgebraId algebra);

/// Restriction along child ⊆ h.algebra. NotIncluded if there is no inclusion.
Hom restrict(const WPoset& poset, const Hom& h, AlgebraId child);

/// First Hasse edge (in sorted order) where the candidate is not compatible,
/// or nullopt for a global element. Throws IncompleteCandidate when an
/// algebra has no choice.
std::optional<Violation> find_violation(const WPoset& poset, const ElementCandidate& candidate);

inline bool is_global(const WPoset& poset, const ElementCandidate& candidate) {
  return !find_violation(poset, candidate).has_value();
}

/// Homs on parent whose restriction to h.algebra is h.
std::vector<Hom> preimage(const WPoset& poset, const Hom& h, AlgebraId parent);

}  // namespace ksobs
