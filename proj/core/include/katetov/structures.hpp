#pragma once

// Finite first-order structures for the seven discrete classes plus
// finite rational metric spaces, with validated morphisms, brute-force
// isomorphism testing, and exhaustive enumeration of one-point
// extensions. Everything downstream (functors, towers, limits) is
// checked against the enumerators defined here.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "katetov/rational.hpp"

namespace katetov {

using ElementId = std::int32_t;
using IdPair = std::pair<ElementId, ElementId>;

enum class StructureKind {
  Graph,
  KnFreeGraph,    // parameter n >= 3: forbidden clique size
  Digraph,        // irreflexive, (x,y) present => (y,x) absent
  LinearOrder,
  Poset,
  Tournament,
  BooleanAlgebra,  // elements are the atoms; carrier = powerset of atoms
  RationalMetric,  // parameter q >= 1: distances are multiples of 1/q in [0,1]
};

struct ClassTag {
  StructureKind kind = StructureKind::Graph;
  int param = 0;  // n for KnFreeGraph, q for RationalMetric, unused otherwise

  friend bool operator==(const ClassTag&, const ClassTag&) = default;
};

std::string kind_name(StructureKind kind);
bool is_graph_like(StructureKind kind);   // Graph or KnFreeGraph
bool is_order_like(StructureKind kind);   // Poset or LinearOrder
bool is_arc_like(StructureKind kind);     // Digraph or Tournament

// A finite structure of one of the supported classes.
//
// Elements are opaque ids with the total order of the `elements` vector
// (strictly increasing). Relation storage by class:
//   graph-like:  `pairs` holds normalized 2-subsets {a,b} with a < b
//   arc-like:    `pairs` holds ordered arcs (a,b)
//   order-like:  `pairs` holds the strict part a < b of the order;
//                reflexivity is implicit
//   boolean:     `elements` are the atoms, `pairs` unused
//   metric:      `dist` is a square matrix indexed by element position
struct FiniteStructure {
  ClassTag tag;
  std::vector<ElementId> elements;
  std::set<IdPair> pairs;
  std::vector<std::vector<Rational>> dist;

  std::size_t size() const { return elements.size(); }
  bool has_element(ElementId e) const;
  int index_of(ElementId e) const;  // -1 if absent

  bool adjacent(ElementId a, ElementId b) const;  // graph-like
  bool has_arc(ElementId a, ElementId b) const;   // arc-like
  bool leq(ElementId a, ElementId b) const;       // order-like, reflexive
  const Rational& distance(ElementId a, ElementId b) const;
};

// Constructors normalize relation payloads; they do not validate class
// axioms (call validate for that).
FiniteStructure make_graph(std::vector<ElementId> elements, const std::vector<IdPair>& edges);
FiniteStructure make_kn_free_graph(int n, std::vector<ElementId> elements,
                                   const std::vector<IdPair>& edges);
FiniteStructure make_digraph(std::vector<ElementId> elements, const std::vector<IdPair>& arcs);
FiniteStructure make_tournament(std::vector<ElementId> elements, const std::vector<IdPair>& arcs);
// Order relations are given by their strict pairs; the transitive closure
// is NOT taken (validate reports missing transitivity instead).
FiniteStructure make_poset(std::vector<ElementId> elements, const std::vector<IdPair>& strict);
FiniteStructure make_linear_order(std::vector<ElementId> elements,
                                  const std::vector<IdPair>& strict);
// Chain a0 < a1 < ... in the listed element order.
FiniteStructure make_chain(std::vector<ElementId> elements);
FiniteStructure make_boolean_algebra(std::vector<ElementId> atoms);
FiniteStructure make_metric(int q, std::vector<ElementId> elements,
                            std::vector<std::vector<Rational>> matrix);

struct ValidationReport {
  bool ok = true;
  std::string violation;  // names the first violated axiom when !ok
};

ValidationReport validate(const FiniteStructure& s);

// Exhaustive clique search on a graph-like structure.
bool contains_clique(const FiniteStructure& s, int clique_size);

// ---------------------------------------------------------------------------
// Morphisms

enum class MorphismKind { Homomorphism, Embedding, Isomorphism };

std::string kind_name(MorphismKind kind);

// An element map between structures of the same class.
//
// For Boolean algebras the map sends atoms to disjoint atom-subsets of
// the target (f(a) = join of atom_map[a]) and extends to the carrier
// join-homomorphically; for every other class point_map is used.
struct Morphism {
  FiniteStructure source;
  FiniteStructure target;
  std::map<ElementId, ElementId> point_map;
  std::map<ElementId, std::vector<ElementId>> atom_map;
  MorphismKind kind = MorphismKind::Homomorphism;

  ElementId apply(ElementId e) const;
  const std::vector<ElementId>& apply_atoms(ElementId atom) const;
};

Morphism identity_morphism(const FiniteStructure& s);
// g after f; requires target(f) == source(g) elementwise. The kind of the
// composite is the weaker of the two kinds.
Morphism compose(const Morphism& g, const Morphism& f);

ValidationReport check_morphism(const Morphism& f);

// ---------------------------------------------------------------------------
// Isomorphism testing

inline constexpr std::size_t kIsoSizeCap = 9;

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Encoding of the relationship of an element pair; two pairs can
// correspond under an isomorphism iff their codes match.
std::int64_t relation_code(const FiniteStructure& s, ElementId a, ElementId b);

// Brute-force search with invariant pruning; deterministic given the
// element orders. Throws CapacityError above kIsoSizeCap.
std::optional<Morphism> iso_test(const FiniteStructure& a, const FiniteStructure& b);

// All automorphisms, in lexicographic order of the induced position map.
std::vector<Morphism> automorphisms(const FiniteStructure& s);

// ---------------------------------------------------------------------------
// Substructures

// Induced substructure on a subset of elements (relational and metric
// classes). The subset keeps its ids.
FiniteStructure induced_substructure(const FiniteStructure& s,
                                     const std::vector<ElementId>& subset);

// Boolean algebras: the subalgebra generated by a set of carrier
// elements (given as atom bitmasks). Returns the blocks of the induced
// atom partition; each block is one atom of the subalgebra.
std::vector<std::uint64_t> generated_subalgebra_blocks(const FiniteStructure& s,
                                                       const std::vector<std::uint64_t>& carrier);

// ---------------------------------------------------------------------------
// One-point extensions

// A one-point extension of `base`: `extension` is generated by the
// inclusion image plus one new element. For relational/metric classes
// this is exactly one extra element (`new_element`); for Boolean
// algebras the generator is a new carrier element (`new_carrier`, an
// atom bitmask over the extension's atom positions).
struct OnePointExtension {
  FiniteStructure base;
  FiniteStructure extension;
  Morphism inclusion;
  ElementId new_element = -1;
  std::uint64_t new_carrier = 0;
};

// Complete, duplicate-free enumeration up to isomorphism over the base
// (isomorphisms fixing the base pointwise). Deterministic order derived
// from the element order.
std::vector<OnePointExtension> enumerate_one_point_extensions(const FiniteStructure& base);

// Fresh id strictly above every element of the given structures.
ElementId fresh_element_id(const FiniteStructure& s);

}  // namespace katetov
