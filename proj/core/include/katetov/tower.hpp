#pragma once

// Lazily expanded chains seed -> K(seed) -> K^2(seed) -> ... with
// addressed elements, the finite-iterate absorption of embeddings, and
// the extension-property verifier that certifies convergence to the
// homogeneous limit.

#include <cstddef>
#include <optional>

#include "katetov/kfunctor.hpp"
#include "katetov/structures.hpp"

namespace katetov {

inline constexpr std::size_t kDefaultLevelBudget = 50'000;

struct TowerAddress {
  int level = 0;
  ElementId id = 0;
  friend auto operator<=>(const TowerAddress&, const TowerAddress&) = default;
};

// Memoized tower. Levels already computed are never recomputed or
// renumbered; expansion is the only mutation and must be exclusive.
// Reads of expanded levels are safe to share.
class TowerHandle {
 public:
  TowerHandle(FiniteStructure seed, std::size_t level_budget = kDefaultLevelBudget);

  static TowerHandle iterate(FiniteStructure seed, int depth,
                             std::size_t level_budget = kDefaultLevelBudget);

  const ClassTag& tag() const { return seed_.tag; }
  int frozen_depth() const { return static_cast<int>(steps_.size()); }
  std::size_t level_budget() const { return budget_; }

  // Expands until depth levels exist; throws CapacityError with the
  // offending level size if the budget would be exceeded.
  void expand_to(int depth);

  const FiniteStructure& level(int i) const;
  const Morphism& link(int i) const;                  // level i -> level i+1
  const std::vector<KElement>& level_index(int i) const;  // levels >= 1

  // Composed link embedding level `from` -> level `to`.
  Morphism composed_link(int from, int to) const;

  // Image of an address at a (weakly deeper) level; expands on demand.
  ElementId resolve(const TowerAddress& a, int target_level);

  // Least-level representative of the same colimit point.
  TowerAddress canonical(const TowerAddress& a) const;

  // Push a list of addresses to a common level (the max of their levels,
  // or `at_least` if deeper) and return the element ids there.
  std::vector<ElementId> elements_at(const std::vector<TowerAddress>& addrs, int level);

  // The K-object data of level i+1 viewed as K(level i).
  const KObjectResult& step(int i) const;

 private:
  FiniteStructure seed_;
  std::vector<KObjectResult> steps_;  // steps_[i]: level i -> level i+1
  std::size_t budget_;
};

// A certificate that `extension` (over the substructure at `base`
// addresses) is realized inside level `witness_level` over the links.
struct ExtensionCertificate {
  std::vector<TowerAddress> base;
  OnePointExtension extension;
  int witness_level = 0;
  Morphism witness;  // extension -> level(witness_level)
};

struct EpCounterexample {
  std::vector<TowerAddress> base;
  OnePointExtension extension;
  std::string reason;
};

struct EpReport {
  bool ok = true;
  std::vector<ExtensionCertificate> certificates;
  std::optional<EpCounterexample> counterexample;
};

// For every substructure A of level(base_depth) with |A| <= size_bound
// and every one-point extension of A, constructs and checks a witness at
// level base_depth + 1. `jobs` > 1 fans the checks out over threads.
EpReport verify_extension_property(TowerHandle& tower, int base_depth, int size_bound,
                                   int jobs = 1);

struct AbsorbResult {
  int steps = 0;   // length of the one-point chain
  Morphism h;      // B -> K^steps(A) with h o g = eta^steps
};

// Finite-iterate absorption: an embedding g : A -> B factors through
// K^n(A) over the composed eta. For isomorphisms n = 1 and h = eta o g^-1.
AbsorbResult absorb_extension(const FiniteStructure& a, const FiniteStructure& b,
                              const Morphism& g);

// Inverse of a validated isomorphism.
Morphism invert_isomorphism(const Morphism& f);

// Relabels B so that the embedding g : A -> B becomes the identity
// inclusion of A. Returns the relabeled structure and the isomorphism
// B -> B'. Pointed classes only.
std::pair<FiniteStructure, Morphism> relabel_over_base(const FiniteStructure& a,
                                                       const FiniteStructure& b,
                                                       const Morphism& g);

// One-point steps from A up to a relabeled superstructure (identity
// inclusions all the way).
std::vector<OnePointExtension> one_point_chain_over(const FiniteStructure& a,
                                                    const FiniteStructure& relabeled_b);

// eta^n as a concrete embedding A -> K^n(A).
Morphism iterated_eta(const FiniteStructure& a, int n);

// Substructures of a level usable by the verifier: the abstract
// structure together with its embedding into the level. Relational and
// metric classes enumerate element subsets; Boolean algebras enumerate
// subalgebras with at most `size_bound` atoms.
struct LevelSubstructure {
  FiniteStructure structure;
  Morphism embedding;  // structure -> level
  std::vector<TowerAddress> addresses;
};
std::vector<LevelSubstructure> level_substructures(TowerHandle& tower, int depth, int size_bound);

}  // namespace katetov
