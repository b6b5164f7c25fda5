#pragma once

// Free amalgams, one-point-extension pushouts in the category of all
// homomorphisms, their composition into mixed pushouts, and the generic
// one-point-extension functor built from iterated pushouts.

#include "katetov/kfunctor.hpp"
#include "katetov/structures.hpp"

namespace katetov {

struct PushoutSquare {
  Morphism f;  // A0 -> A1 (homomorphism)
  Morphism g;  // A0 -> A2 (embedding)
  Morphism p;  // A1 -> apex (embedding)
  Morphism q;  // A2 -> apex
  bool certified = false;  // bounded universality certificate ran and passed

  const FiniteStructure& apex() const { return p.target; }
};

struct FreeAmalgamResult {
  FiniteStructure amalgam;
  Morphism left;   // B1 -> amalgam
  Morphism right;  // B2 -> amalgam
};

// Free amalgam of j1 : A -> B1 and j2 : A -> B2 over the common A.
// Classes with free amalgamation only (graphs, clique-free graphs,
// digraphs); relations are exactly unioned, nothing crosses the sides.
FreeAmalgamResult free_amalgam(const Morphism& j1, const Morphism& j2);

// Pushout of a graph homomorphism f : A0 -> A1 against a one-point
// extension of A0. The apex adjoins one vertex carrying the f-image of
// the new point's relations. Certified by brute-force cocone
// enumeration when small enough (see certify_universality).
PushoutSquare one_point_pushout(const Morphism& f, const OnePointExtension& g);

// Pushout of f against an arbitrary embedding g, via the one-point
// decomposition of g and composition of the squares.
PushoutSquare mixed_pushout(const Morphism& f, const Morphism& g);

// Brute-force universality check over all commuting cocones into
// carriers of size <= min(|apex| + size_slack, |A1| + |A2|). Returns
// false on any counterexample to existence or uniqueness of the
// mediating homomorphism.
bool certify_universality(const PushoutSquare& square, int size_slack = 2);

// Whether running the certificate is feasible (the enumeration is
// exponential in |A1| + |A2|).
bool certificate_feasible(const PushoutSquare& square);

// p is a one-point extension: the apex adds exactly one element over
// p's image and is generated by it.
bool is_one_point_over(const Morphism& p);

// The generic functor value on a graph: the iterated pushout over the
// deduplicated list of one-point extensions. Realizes exactly the same
// extension types as the hand-crafted K.
KObjectResult generic_k(const FiniteStructure& a);

// Whether the K-object realizes the extension over its eta (witness
// search for the new point's relation profile).
bool realizes_extension(const KObjectResult& k, const OnePointExtension& e);

}  // namespace katetov
