#pragma once

// Limit-level services over towers: iterated functor images of a
// morphism, back-and-forth partial isomorphisms between two towers,
// extension of partial morphisms to truncated endomorphisms, embedding
// of endomorphism monoids, and the pointwise-topology probe.

#include "katetov/tower.hpp"

namespace katetov {

// A partial map between (or within) towers, by address pairing.
struct PartialMap {
  std::vector<TowerAddress> domain;
  std::vector<TowerAddress> images;
  MorphismKind kind = MorphismKind::Isomorphism;
};

// A truncated endomorphism: canonical input addresses up to depth_in map
// to addresses with levels up to depth_out, compatibly with the links.
struct EndoTruncation {
  int depth_in = 0;
  int depth_out = 0;
  std::vector<std::pair<TowerAddress, TowerAddress>> table;  // sorted by key

  const TowerAddress* image_of(const TowerAddress& canonical_key) const;
};

// K^0(f) .. K^depth(f) between the towers over source(f) and target(f);
// the towers supply the memoized K-objects and are expanded on demand.
std::vector<Morphism> k_omega_morphism(const Morphism& f, int depth, TowerHandle& source_tower,
                                       TowerHandle& target_tower);
std::vector<Morphism> k_omega_morphism(const Morphism& f, int depth);

// Validates that a pairing is a partial isomorphism in the colimits.
bool partial_iso_valid(TowerHandle& t1, TowerHandle& t2, const PartialMap& m);

// Extends `seed` by `steps` alternating forth/back points, choosing the
// least canonical unmatched address and the least valid witness; the
// opposite tower is expanded (one level past the constraint set) when no
// witness exists in the frozen part. Never returns an invalid map.
PartialMap back_and_forth(TowerHandle& t1, TowerHandle& t2, PartialMap seed, int steps);

// Ensures `point` (in t1 if forward, else in t2) is matched, extending
// the map by one targeted step if needed.
PartialMap extend_match_at(TowerHandle& t1, TowerHandle& t2, PartialMap m, TowerAddress point,
                           bool forward);

// Extends a partial morphism within the tower to an endomorphism of the
// depth-truncation, following the limit construction: present domain and
// codomain closures as towers, apply the iterated functor, and conjugate
// by back-and-forth identifications. Reports the output depth used.
EndoTruncation extend_partial_morphism(TowerHandle& tower, const PartialMap& f, int depth);

// K^omega images of endomorphisms of the tower seed, as truncations.
std::vector<EndoTruncation> embed_endomorphisms(TowerHandle& tower,
                                                const std::vector<Morphism>& endos, int depth);

// Composition of truncations where defined (for the monoid laws).
EndoTruncation compose_truncations(TowerHandle& tower, const EndoTruncation& g,
                                   const EndoTruncation& f);

struct ContinuityReport {
  bool ok = true;              // per-index biconditional between base and K-level agreement
  bool hypothesis_met = true;  // some tail agrees on S
  int stabilization_index = -1;
};

// Checks that K(f_n) agrees with K(f) on K(<S>) exactly at the indices
// where f_n agrees with f on S.
ContinuityReport continuity_probe(const Morphism& f, const std::vector<Morphism>& sequence,
                                  const std::vector<ElementId>& generating_subset);

}  // namespace katetov
