#include "ksobs/presheaf.hpp"

#include <string>

namespace ksobs {

std::vector<Hom> fiber(const WPoset& poset, AlgebraId algebra) {
  std::vector<Hom> out;
  const auto n = static_cast<int>(poset.algebra(algebra).atoms.size());
  for (int i = 0; i < n; ++i) out.push_back(Hom{algebra, i});
  return out;
}

Hom restrict(const WPoset& poset, const Hom& h, AlgebraId child) {
  const auto map = poset.atom_map(child, h.algebra);
  if (h.atom < 0 || static_cast<std::size_t>(h.atom) >= map.size()) {
    throw Error(ErrorCode::InvalidParams, "hom atom index out of range");
  }
  const int target = map[static_cast<std::size_t>(h.atom)];
  if (target < 0) {
    throw Error(ErrorCode::StructureError, "no atom of algebra " + std::to_string(child) +
                                               " contains the chosen atom");
  }
  return Hom{child, target};
}

std::optional<Violation> find_violation(const WPoset& poset, const ElementCandidate& candidate) {
  std::string missing;
  for (const auto& a : poset.algebras) {
    if (!candidate.contains(a.id)) missing += (missing.empty() ? "" : ", ") + std::to_string(a.id);
  }
  if (!missing.empty()) throw Error(ErrorCode::IncompleteCandidate, "no choice for algebras " + missing);

  for (const auto& e : poset.edges) {
    const Hom parent{e.parent, candidate.at(e.parent)};
    const Hom found{e.child, candidate.at(e.child)};
    const Hom expected = restrict(poset, parent, e.child);
    if (expected != found) return Violation{e, expected, found};
  }
  return std::nullopt;
}

std::vector<Hom> preimage(const WPoset& poset, const Hom& h, AlgebraId parent) {
  const auto map = poset.atom_map(h.algebra, parent);
  std::vector<Hom> out;
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map[i] == h.atom) out.push_back(Hom{parent, static_cast<int>(i)});
  }
  return out;
}

}  // namespace ksobs
