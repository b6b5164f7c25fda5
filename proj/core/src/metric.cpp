#include "katetov/metric.hpp"

#include <algorithm>

namespace katetov {

namespace {

void require_metric_base(const KatetovFunction& phi) {
  if (phi.base.tag.kind != StructureKind::RationalMetric)
    throw ContractError("Katetov functions live over rational metric spaces");
  if (phi.values.size() != phi.base.size())
    throw ContractError("Katetov function not total on its base");
}

void require_nonexpansive(const Morphism& f) {
  if (f.source.tag.kind != StructureKind::RationalMetric ||
      f.target.tag.kind != StructureKind::RationalMetric)
    throw ContractError("pushforward needs metric spaces");
  for (ElementId a : f.source.elements)
    for (ElementId b : f.source.elements)
      if (f.target.distance(f.apply(a), f.apply(b)) > f.source.distance(a, b))
        throw ContractError("pushforward needs a nonexpansive map; this one expands a pair");
}

}  // namespace

bool is_katetov(const KatetovFunction& phi) {
  require_metric_base(phi);
  const std::size_t n = phi.base.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& d = phi.base.dist[i][j];
      if (abs(phi.values[i] - phi.values[j]) > d) return false;
      if (d > phi.values[i] + phi.values[j]) return false;
    }
  return true;
}

Rational sup_distance(const KatetovFunction& phi, const KatetovFunction& psi) {
  require_metric_base(phi);
  require_metric_base(psi);
  if (phi.base.elements != psi.base.elements || phi.base.dist != psi.base.dist)
    throw ContractError("sup_distance: base mismatch");
  Rational sup(0);
  for (std::size_t i = 0; i < phi.values.size(); ++i) {
    const Rational diff = abs(phi.values[i] - psi.values[i]);
    if (diff > sup) sup = diff;
  }
  return sup;
}

KatetovFunction push(const KatetovFunction& phi, const Morphism& f) {
  require_metric_base(phi);
  require_nonexpansive(f);
  if (phi.base.size() == 0) throw ContractError("push: empty base has no minimum");
  KatetovFunction out;
  out.base = f.target;
  for (ElementId y : f.target.elements) {
    Rational best = f.target.distance(y, f.apply(phi.base.elements[0])) + phi.values[0];
    for (std::size_t i = 1; i < phi.base.size(); ++i) {
      const Rational cand = f.target.distance(y, f.apply(phi.base.elements[i])) + phi.values[i];
      if (cand < best) best = cand;
    }
    out.values.push_back(best);
  }
  return out;
}

KatetovFunction push_sphere(const KatetovFunction& phi, const Morphism& f) {
  require_metric_base(phi);
  require_nonexpansive(f);
  KatetovFunction out;
  out.base = f.target;
  for (ElementId y : f.target.elements) {
    Rational best(1);
    for (std::size_t i = 0; i < phi.base.size(); ++i) {
      const Rational cand = f.target.distance(y, f.apply(phi.base.elements[i])) + phi.values[i];
      if (cand < best) best = cand;
    }
    out.values.push_back(best);
  }
  return out;
}

KatetovFunction hat(const FiniteStructure& x, ElementId a) {
  if (x.index_of(a) < 0) throw ContractError("hat: unknown element");
  KatetovFunction out;
  out.base = x;
  for (ElementId e : x.elements) out.values.push_back(x.distance(e, a));
  return out;
}

PushDistanceCheck nonexpansive_push_distance(const KatetovFunction& phi,
                                             const KatetovFunction& psi, const Morphism& f) {
  const Rational original = sup_distance(phi, psi);
  const Rational pushed = sup_distance(push(phi, f), push(psi, f));
  return {pushed, original, pushed <= original, pushed == original};
}

KObjectResult sphere_k_object(const FiniteStructure& x) {
  if (x.tag.kind != StructureKind::RationalMetric)
    throw ContractError("sphere_k_object: rational metric spaces only");
  return k_object(x);
}

Morphism realize_metric_extension(const OnePointExtension& e) {
  if (e.base.tag.kind != StructureKind::RationalMetric)
    throw ContractError("realize_metric_extension: rational metric spaces only");
  const auto report = validate(e.extension);
  if (!report.ok)
    throw ContractError("realize_metric_extension: invalid extension (" + report.violation + ")");
  return resolve_extension(e);
}

KatetovFunction function_of(const FiniteStructure& base, const KObjectResult& k,
                            ElementId element) {
  const int pos = k.object.index_of(element);
  if (pos < 0) throw ContractError("function_of: unknown element");
  const auto* payload = std::get_if<KatetovPayload>(&k.index[pos]);
  if (!payload) throw ContractError("function_of: element is not a Katetov function");
  return {base, payload->values};
}

}  // namespace katetov
