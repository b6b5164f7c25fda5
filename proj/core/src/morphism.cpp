#include <algorithm>

#include "katetov/structures.hpp"

namespace katetov {

ElementId Morphism::apply(ElementId e) const {
  const auto it = point_map.find(e);
  if (it == point_map.end()) throw ContractError("morphism not defined on element");
  return it->second;
}

const std::vector<ElementId>& Morphism::apply_atoms(ElementId atom) const {
  const auto it = atom_map.find(atom);
  if (it == atom_map.end()) throw ContractError("morphism not defined on atom");
  return it->second;
}

Morphism identity_morphism(const FiniteStructure& s) {
  Morphism m;
  m.source = s;
  m.target = s;
  m.kind = MorphismKind::Isomorphism;
  if (s.tag.kind == StructureKind::BooleanAlgebra) {
    for (ElementId a : s.elements) m.atom_map[a] = {a};
  } else {
    for (ElementId e : s.elements) m.point_map[e] = e;
  }
  return m;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.target.tag == g.source.tag) || f.target.elements != g.source.elements)
    throw ContractError("compose: middle objects disagree");
  Morphism out;
  out.source = f.source;
  out.target = g.target;
  out.kind = std::min(f.kind, g.kind, [](MorphismKind a, MorphismKind b) {
    auto rank = [](MorphismKind k) {
      return k == MorphismKind::Homomorphism ? 0 : k == MorphismKind::Embedding ? 1 : 2;
    };
    return rank(a) < rank(b);
  });
  if (f.source.tag.kind == StructureKind::BooleanAlgebra) {
    for (const auto& [a, mids] : f.atom_map) {
      std::vector<ElementId> image;
      for (ElementId b : mids) {
        const auto& gs = g.apply_atoms(b);
        image.insert(image.end(), gs.begin(), gs.end());
      }
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      out.atom_map[a] = std::move(image);
    }
  } else {
    for (const auto& [a, b] : f.point_map) out.point_map[a] = g.apply(b);
  }
  return out;
}

namespace {

ValidationReport fail(const std::string& what) { return {false, what}; }

ValidationReport check_structural(const Morphism& f) {
  if (!(f.source.tag == f.target.tag)) return fail("structural: source/target class mismatch");
  if (f.source.tag.kind == StructureKind::BooleanAlgebra) {
    for (ElementId a : f.source.elements)
      if (!f.atom_map.count(a)) return fail("structural: map not total on atoms");
    for (const auto& [a, image] : f.atom_map) {
      if (!f.source.has_element(a)) return fail("structural: atom outside source");
      for (ElementId b : image)
        if (!f.target.has_element(b)) return fail("structural: image atom outside target");
    }
    return {};
  }
  for (ElementId e : f.source.elements)
    if (!f.point_map.count(e)) return fail("structural: map not total on source");
  for (const auto& [a, b] : f.point_map) {
    if (!f.source.has_element(a)) return fail("structural: element outside source");
    if (!f.target.has_element(b)) return fail("structural: image outside target");
  }
  return {};
}

bool injective(const Morphism& f) {
  std::vector<ElementId> images;
  for (const auto& [a, b] : f.point_map) images.push_back(b);
  std::sort(images.begin(), images.end());
  return std::adjacent_find(images.begin(), images.end()) == images.end();
}

ValidationReport check_graph_like(const Morphism& f) {
  for (const auto& [a, b] : f.source.pairs)
    if (!f.target.adjacent(f.apply(a), f.apply(b)))
      return fail("edge not preserved (loops are forbidden in the target)");
  if (f.kind == MorphismKind::Homomorphism) return {};
  if (!injective(f)) return fail("embedding not injective");
  for (std::size_t i = 0; i < f.source.size(); ++i)
    for (std::size_t j = i + 1; j < f.source.size(); ++j) {
      const ElementId a = f.source.elements[i], b = f.source.elements[j];
      if (!f.source.adjacent(a, b) && f.target.adjacent(f.apply(a), f.apply(b)))
        return fail("embedding does not reflect edges");
    }
  return {};
}

ValidationReport check_arc_like(const Morphism& f) {
  for (const auto& [a, b] : f.source.pairs)
    if (!f.target.has_arc(f.apply(a), f.apply(b))) return fail("arc not preserved");
  if (f.kind == MorphismKind::Homomorphism) return {};
  if (!injective(f)) return fail("embedding not injective");
  for (ElementId a : f.source.elements)
    for (ElementId b : f.source.elements)
      if (a != b && !f.source.has_arc(a, b) && f.target.has_arc(f.apply(a), f.apply(b)))
        return fail("embedding does not reflect arcs");
  return {};
}

ValidationReport check_order_like(const Morphism& f) {
  for (const auto& [a, b] : f.source.pairs)
    if (!f.target.leq(f.apply(a), f.apply(b))) return fail("order not preserved");
  if (f.kind == MorphismKind::Homomorphism) return {};
  if (!injective(f)) return fail("embedding not injective");
  for (ElementId a : f.source.elements)
    for (ElementId b : f.source.elements)
      if (a != b && !f.source.leq(a, b) && f.target.leq(f.apply(a), f.apply(b)))
        return fail("embedding does not reflect the order");
  return {};
}

ValidationReport check_boolean(const Morphism& f) {
  std::vector<ElementId> all;
  for (const auto& [a, image] : f.atom_map) {
    std::vector<ElementId> sorted = image;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return fail("atom image contains duplicates");
    all.insert(all.end(), sorted.begin(), sorted.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    return fail("atom images not disjoint (meets not preserved)");
  if (all != f.target.elements) return fail("atom images do not cover the target (top not preserved)");
  if (f.kind == MorphismKind::Homomorphism) return {};
  for (const auto& [a, image] : f.atom_map)
    if (image.empty()) return fail("embedding kills an atom");
  if (f.kind == MorphismKind::Embedding) return {};
  for (const auto& [a, image] : f.atom_map)
    if (image.size() != 1) return fail("isomorphism must map atoms to atoms");
  return {};
}

ValidationReport check_metric(const Morphism& f) {
  for (ElementId a : f.source.elements)
    for (ElementId b : f.source.elements) {
      const Rational& d = f.source.distance(a, b);
      const Rational& e = f.target.distance(f.apply(a), f.apply(b));
      if (f.kind == MorphismKind::Homomorphism) {
        if (e > d) return fail("map is expansive");
      } else if (e != d) {
        return fail("embedding not isometric");
      }
    }
  return {};
}

bool surjective(const Morphism& f) {
  if (f.source.tag.kind == StructureKind::BooleanAlgebra)
    return f.atom_map.size() == f.target.elements.size() &&
           std::all_of(f.atom_map.begin(), f.atom_map.end(),
                       [](const auto& kv) { return kv.second.size() == 1; });
  std::vector<ElementId> images;
  for (const auto& [a, b] : f.point_map) images.push_back(b);
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  return images == f.target.elements;
}

}  // namespace

ValidationReport check_morphism(const Morphism& f) {
  if (auto r = check_structural(f); !r.ok) return r;
  ValidationReport r;
  switch (f.source.tag.kind) {
    case StructureKind::Graph:
    case StructureKind::KnFreeGraph: r = check_graph_like(f); break;
    case StructureKind::Digraph:
    case StructureKind::Tournament: r = check_arc_like(f); break;
    case StructureKind::Poset:
    case StructureKind::LinearOrder: r = check_order_like(f); break;
    case StructureKind::BooleanAlgebra: r = check_boolean(f); break;
    case StructureKind::RationalMetric: r = check_metric(f); break;
  }
  if (!r.ok) return r;
  if (f.kind == MorphismKind::Isomorphism && !surjective(f))
    return fail("isomorphism not surjective");
  return {};
}

}  // namespace katetov
