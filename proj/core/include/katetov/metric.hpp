#pragma once

// Katetov functions over finite rational metric spaces: the two defining
// inequalities, the sup metric, the pushforward along nonexpansive maps,
// and the sphere-mode K(X) object feeding the tower machinery.
//
// Everything here is exact rational arithmetic; no floating point.

#include "katetov/kfunctor.hpp"
#include "katetov/structures.hpp"

namespace katetov {

// A rational-valued function on a finite metric space. `values` is
// indexed by element position in `base`. Sphere mode keeps values in
// [0,1]; general mode allows any nonnegative rational.
struct KatetovFunction {
  FiniteStructure base;  // RationalMetric
  std::vector<Rational> values;
};

// |phi(x) - phi(y)| <= d(x,y) <= phi(x) + phi(y) for all pairs.
bool is_katetov(const KatetovFunction& phi);

// max_x |phi(x) - psi(x)|; requires equal bases.
Rational sup_distance(const KatetovFunction& phi, const KatetovFunction& psi);

// phi^f(y) = min_x (d_Y(y, f(x)) + phi(x)); requires a nonexpansive f
// from phi's base and a nonempty base. General (uncapped) mode.
KatetovFunction push(const KatetovFunction& phi, const Morphism& f);

// Sphere-mode pushforward, capped at diameter 1. This is the morphism
// action matching sphere_k_object.
KatetovFunction push_sphere(const KatetovFunction& phi, const Morphism& f);

// hat(a) = d(., a).
KatetovFunction hat(const FiniteStructure& x, ElementId a);

struct PushDistanceCheck {
  Rational pushed;    // sup distance of the pushforwards
  Rational original;  // sup distance of the inputs
  bool nonexpansive;  // pushed <= original
  bool equal;         // pushed == original
};

// Checks sup(phi^f, psi^f) <= sup(phi, psi); equality is expected
// exactly when f is an isometric embedding.
PushDistanceCheck nonexpansive_push_distance(const KatetovFunction& phi,
                                             const KatetovFunction& psi, const Morphism& f);

// K(X) for a sphere-mode space: all Katetov functions with values on the
// 1/q grid in [0,1], metrized by sup distance, with eta = hat.
KObjectResult sphere_k_object(const FiniteStructure& x);

// Embedding of a one-point metric extension into K(X); rejects
// extensions that duplicate a point (zero distance) or leave the q-grid.
Morphism realize_metric_extension(const OnePointExtension& e);

// The Katetov function of an element of K(X), read off the descriptor.
KatetovFunction function_of(const FiniteStructure& base, const KObjectResult& k,
                            ElementId element);

}  // namespace katetov
