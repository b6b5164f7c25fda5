#pragma once

// JSON serialization of structures, towers and maps, plus DOT export.
// Formats are documented in docs/formats/. Serialization is canonical:
// identical values produce identical text.

#include <string>

#include "katetov/limits.hpp"
#include "katetov/structures.hpp"
#include "katetov/tower.hpp"

namespace katetov {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string structure_to_json(const FiniteStructure& s);
FiniteStructure structure_from_json(const std::string& text);

// Tower truncation: seed, depth, levels, links and element descriptors.
// The loader rebuilds the tower from the seed and verifies the stored
// levels against the reconstruction.
std::string tower_to_json(const TowerHandle& t);
TowerHandle tower_from_json(const std::string& text,
                            std::size_t level_budget = kDefaultLevelBudget);

std::string partial_map_to_json(const PartialMap& m);
PartialMap partial_map_from_json(const std::string& text);

std::string endo_truncation_to_json(const EndoTruncation& e);
EndoTruncation endo_truncation_from_json(const std::string& text);

// A list of endomorphisms of `base` given as element maps:
// [{"map": [[x, y], ...], "kind": "homomorphism"}, ...]
std::vector<Morphism> endo_list_from_json(const FiniteStructure& base, const std::string& text);
std::string endo_list_to_json(const std::vector<Morphism>& endos);

// DOT export: plain graphs, digraphs and tournaments draw their edges;
// posets and linear orders draw the Hasse diagram (cover relation).
std::string to_dot(const FiniteStructure& s);

}  // namespace katetov
