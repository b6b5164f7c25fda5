#pragma once

// The one-point-extension functor K for each supported class: K on
// objects, K on morphisms, the natural embedding eta : A -> K(A), and
// resolution of one-point extensions through K(A).
//
// K(A) adjoins, for every possible relationship a new element can have
// to A, one witness element. The payload descriptors below record that
// relationship per class.

#include <variant>

#include "katetov/structures.hpp"

namespace katetov {

struct OldPayload {
  ElementId id;
  friend auto operator<=>(const OldPayload&, const OldPayload&) = default;
};
// Graph / KnFreeGraph: the neighbourhood of the new vertex.
struct SetPayload {
  std::vector<ElementId> members;  // sorted
  friend auto operator<=>(const SetPayload&, const SetPayload&) = default;
};
// Digraph: in-neighbours point at the new vertex, out-neighbours receive
// an arc from it; the two sets are disjoint.
struct InOutPayload {
  std::vector<ElementId> in, out;  // sorted
  friend auto operator<=>(const InOutPayload&, const InOutPayload&) = default;
};
// LinearOrder: a cut (lower, upper) partitioning the carrier.
struct CutPayload {
  std::vector<ElementId> lower, upper;  // sorted by id
  friend auto operator<=>(const CutPayload&, const CutPayload&) = default;
};
// Poset: finite disjoint sets (lower, upper) with every lower element
// below every upper element; the new point sits strictly between them.
struct BoundsPayload {
  std::vector<ElementId> lower, upper;  // sorted
  friend auto operator<=>(const BoundsPayload&, const BoundsPayload&) = default;
};
// Tournament: a sequence over the carrier of length <= |carrier|; the
// entries are exactly the in-neighbours of the new vertex.
struct SeqPayload {
  std::vector<ElementId> entries;
  friend auto operator<=>(const SeqPayload&, const SeqPayload&) = default;
};
// BooleanAlgebra: half (bit 0 or 1) of a split base atom.
struct AtomHalfPayload {
  int bit;
  ElementId atom;
  friend auto operator<=>(const AtomHalfPayload&, const AtomHalfPayload&) = default;
};
// RationalMetric: a Katetov function on the base, by element position.
struct KatetovPayload {
  std::vector<Rational> values;
  friend bool operator==(const KatetovPayload&, const KatetovPayload&) = default;
  friend bool operator<(const KatetovPayload& a, const KatetovPayload& b);
};

using KElement = std::variant<OldPayload, SetPayload, InOutPayload, CutPayload, BoundsPayload,
                              SeqPayload, AtomHalfPayload, KatetovPayload>;

std::string describe(const KElement& e);

struct KObjectResult {
  FiniteStructure object;           // K(A)
  Morphism eta;                     // embedding A -> K(A)
  std::vector<KElement> index;      // descriptor per element position of K(A)
  std::map<KElement, ElementId> lookup;  // inverse of index

  ElementId element_for(const KElement& e) const;  // throws if absent
};

// Which morphism kinds the class's category admits. Embeddings always;
// homomorphisms only where a functorial image exists (graphs, posets,
// Boolean algebras, metric spaces; digraphs for injective maps only).
bool kind_allowed(const ClassTag& tag, MorphismKind kind);

// Size caps: K(A) is exponential in |A|.
std::size_t k_object_size_cap(StructureKind kind);

KObjectResult k_object(const FiniteStructure& a);

// Functorial action on a validated morphism of allowed kind.
Morphism k_morphism(const Morphism& f);

// Same, reusing already-computed K-objects of the source and target.
Morphism k_morphism_between(const Morphism& f, const KObjectResult& ka, const KObjectResult& kb);

// An embedding g : extension -> K(base) with g o inclusion = eta_base.
Morphism resolve_extension(const OnePointExtension& e);

}  // namespace katetov
