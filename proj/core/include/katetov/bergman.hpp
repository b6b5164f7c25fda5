#pragma once

// The strong-distortion machinery: a natural pairing functor with
// retractions, the chain L_1 -> L_2 -> ... of iterated pairs over a
// finite truncation, the endomorphisms sigma / tau / phi / beta of its
// colimit, the identities they satisfy, and the five-generator word
// encoding of arbitrary endomorphism sequences.

#include <optional>

#include "katetov/tower.hpp"

namespace katetov {

// F(C, D) with the two natural embeddings; for C == D also the fold-back
// retractions (left_retract o left = id = right_retract o right).
struct JepResult {
  FiniteStructure object;
  Morphism left;   // C -> F(C,D)
  Morphism right;  // D -> F(C,D)
  std::optional<Morphism> left_retract;
  std::optional<Morphism> right_retract;
  std::map<ElementId, std::pair<int, ElementId>> origin;  // element -> (0 left / 1 right, preimage)
};

// Classes with a retractive natural pairing here: coproducts for graphs,
// digraphs and posets; the distance-1 join for metric spheres. Boolean
// algebras use boolean_product below (their unit insertions are not
// Boolean homomorphisms, so they do not fit the Morphism type).
JepResult jep(const FiniteStructure& c, const FiniteStructure& d);

// F(f, g) : F(C, D) -> F(C', D') for f : C -> C', g : D -> D'.
Morphism jep_map(const JepResult& src, const JepResult& dst, const Morphism& f, const Morphism& g);

// The Boolean product F(C, D) = C x D with carrier-level unit insertions
// and projections (bitmask tables over atom positions).
struct BooleanProduct {
  FiniteStructure object;  // atoms: C's atoms then D's, relabeled apart
  std::vector<std::uint64_t> left_insert;    // C-carrier -> object carrier, c -> (c, 1)
  std::vector<std::uint64_t> right_insert;   // D-carrier -> object carrier, d -> (1, d)
  std::vector<std::uint64_t> left_project;   // object carrier -> C-carrier
  std::vector<std::uint64_t> right_project;  // object carrier -> D-carrier
};
BooleanProduct boolean_product(const FiniteStructure& c, const FiniteStructure& d);
// F(f, g) on Boolean products is an honest Boolean homomorphism.
Morphism boolean_product_map(const BooleanProduct& src, const BooleanProduct& dst,
                             const Morphism& f, const Morphism& g);

// ---------------------------------------------------------------------------
// The chain L_1 = L, L_{n+1} = (L_n, L) over a finite truncation.

struct ChainPoint {
  int level = 1;  // 1-based
  ElementId id = 0;
  friend auto operator<=>(const ChainPoint&, const ChainPoint&) = default;
};

class ChainHandle {
 public:
  ChainHandle(FiniteStructure truncation, int depth);

  const FiniteStructure& base() const { return base_; }
  int depth() const { return static_cast<int>(levels_.size()); }
  const FiniteStructure& level(int n) const;  // 1-based
  const JepResult& pairing(int n) const;      // glues L_{n+1} = (L_n, L)
  const Morphism& lambda(int n) const;        // L_n -> L_{n+1}

  // copy index (1-based) and base element of an L_n element
  std::pair<int, ElementId> decode(int n, ElementId e) const;
  ElementId encode(int n, int copy, ElementId base) const;

 private:
  FiniteStructure base_;
  std::vector<FiniteStructure> levels_;
  std::vector<JepResult> pairings_;
  std::vector<std::map<ElementId, std::pair<int, ElementId>>> decode_;
};

// [rho, id]_{n-1} : L_n -> L_{n+1} (embedding; shifts every copy up).
Morphism shift_map(const ChainHandle& chain, int n);
// [rho*, id]_{n-1} : L_{n+1} -> L_n (folds the two innermost copies).
Morphism fold_map(const ChainHandle& chain, int n);
// [f_1, .., f_n] : L_n -> L_n acting copy-wise.
Morphism tuple_map(const ChainHandle& chain, const std::vector<Morphism>& fs, int n);
// The fold-everything cone c_n : L_n -> L with c_{n+1} o lambda = c_n.
Morphism beta_cone(const ChainHandle& chain, int n);

// Colimit endomorphism actions on chain points.
ChainPoint sigma_point(const ChainHandle& chain, const ChainPoint& p);
ChainPoint tau_point(const ChainHandle& chain, const ChainPoint& p);
ChainPoint phi_point(const ChainHandle& chain, const std::vector<Morphism>& fs,
                     const ChainPoint& p);
ElementId beta_point(const ChainHandle& chain, const ChainPoint& p);

struct DistortionReport {
  bool ok = true;
  int first_identity_checks = 0;   // beta o phi o iota_1 = f_1, per point
  int shifted_identity_checks = 0;  // beta o tau^n o phi o sigma^n o iota_1 = f_{n+1}
  std::vector<std::string> mismatches;
};

// Pointwise verification of the two distortion identities for all
// n <= n_max over the given endomorphism prefix.
DistortionReport verify_distortion(const ChainHandle& chain, const std::vector<Morphism>& fs,
                                   int n_max);

// ---------------------------------------------------------------------------
// Word encoding over the five lifted generators.

enum class Generator { Alpha, Beta, Sigma, Tau, Phi };

struct GeneratorWord {
  int n = 1;                       // which member of the sequence it reproduces
  std::vector<Generator> letters;  // applied right to left
  std::size_t length() const { return letters.size(); }
};

// f_1 -> beta phi alpha; f_{m+1} -> beta tau^m phi sigma^m alpha.
// Always of length 2n + 1.
GeneratorWord encode_word(int n);

// A retraction of one tower level: r maps level+1 elements to tower
// points with r o eta = id on the level; old elements fold back, new
// elements go to the least colimit point adjacent to their payload.
struct LevelRetraction {
  int level = 0;
  std::map<ElementId, TowerAddress> map;  // level+1 element -> tower point
};
LevelRetraction graph_retraction(TowerHandle& tower, int level);

struct WordEvaluation {
  bool ok = true;
  int points_checked = 0;
  int depth_used = 0;  // tower depth exercised by the lift consistency checks
  std::vector<std::string> mismatches;
};

// Evaluates the word for f_n over the chain colimit, on every base
// point, against f_n itself; additionally checks the depth-1 naturality
// squares of the lifted generators and the retraction identity backing
// the beta lift. Graph truncations only.
WordEvaluation evaluate_word(const FiniteStructure& truncation, const std::vector<Morphism>& fs,
                             int n, int chain_depth);

}  // namespace katetov
