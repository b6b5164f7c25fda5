#include <algorithm>

#include "katetov/structures.hpp"

namespace katetov {

namespace {

// Cheap per-element invariants used to prune the permutation search.
std::vector<std::int64_t> element_profile(const FiniteStructure& s, ElementId e) {
  std::vector<std::int64_t> p;
  switch (s.tag.kind) {
    case StructureKind::Graph:
    case StructureKind::KnFreeGraph: {
      std::int64_t deg = 0;
      for (ElementId x : s.elements) deg += s.adjacent(e, x);
      p.push_back(deg);
      break;
    }
    case StructureKind::Digraph:
    case StructureKind::Tournament: {
      std::int64_t in = 0, out = 0;
      for (ElementId x : s.elements) {
        in += s.has_arc(x, e);
        out += s.has_arc(e, x);
      }
      p.push_back(in);
      p.push_back(out);
      break;
    }
    case StructureKind::Poset:
    case StructureKind::LinearOrder: {
      std::int64_t below = 0, above = 0;
      for (ElementId x : s.elements) {
        if (x == e) continue;
        below += s.leq(x, e);
        above += s.leq(e, x);
      }
      p.push_back(below);
      p.push_back(above);
      break;
    }
    case StructureKind::BooleanAlgebra: break;
    case StructureKind::RationalMetric: {
      std::vector<Rational> ds;
      for (ElementId x : s.elements) ds.push_back(s.distance(e, x));
      std::sort(ds.begin(), ds.end());
      for (const Rational& d : ds) {
        p.push_back(d.num);
        p.push_back(d.den);
      }
      break;
    }
  }
  return p;
}

}  // namespace

std::int64_t relation_code(const FiniteStructure& s, ElementId a, ElementId b) {
  switch (s.tag.kind) {
    case StructureKind::Graph:
    case StructureKind::KnFreeGraph: return s.adjacent(a, b);
    case StructureKind::Digraph:
    case StructureKind::Tournament: return s.has_arc(a, b) + 2 * s.has_arc(b, a);
    case StructureKind::Poset:
    case StructureKind::LinearOrder: return (a != b && s.leq(a, b)) + 2 * (a != b && s.leq(b, a));
    case StructureKind::BooleanAlgebra: return 0;
    case StructureKind::RationalMetric: {
      const Rational& d = s.distance(a, b);
      return d.num * 1000003 + d.den;
    }
  }
  return 0;
}

namespace {

struct IsoSearch {
  const FiniteStructure& a;
  const FiniteStructure& b;
  std::vector<std::vector<std::int64_t>> profile_a, profile_b;
  std::vector<int> assignment;  // position in a -> position in b
  std::vector<bool> used;

  bool compatible(int i, int p) const {
    if (profile_a[i] != profile_b[p]) return false;
    for (int j = 0; j < i; ++j) {
      if (relation_code(a, a.elements[j], a.elements[i]) !=
          relation_code(b, b.elements[assignment[j]], b.elements[p]))
        return false;
    }
    return true;
  }

  template <typename Visit>
  bool search(int i, Visit&& visit) {
    const int m = static_cast<int>(a.size());
    if (i == m) return visit(assignment);
    for (int p = 0; p < m; ++p) {
      if (used[p] || !compatible(i, p)) continue;
      used[p] = true;
      assignment[i] = p;
      if (search(i + 1, visit)) return true;
      used[p] = false;
    }
    return false;
  }
};

Morphism from_position_map(const FiniteStructure& a, const FiniteStructure& b,
                           const std::vector<int>& assignment) {
  Morphism m;
  m.source = a;
  m.target = b;
  m.kind = MorphismKind::Isomorphism;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.tag.kind == StructureKind::BooleanAlgebra)
      m.atom_map[a.elements[i]] = {b.elements[assignment[i]]};
    else
      m.point_map[a.elements[i]] = b.elements[assignment[i]];
  }
  return m;
}

}  // namespace

std::optional<Morphism> iso_test(const FiniteStructure& a, const FiniteStructure& b) {
  if (a.size() > kIsoSizeCap || b.size() > kIsoSizeCap)
    throw CapacityError("iso_test: size cap exceeded");
  if (!(a.tag == b.tag) || a.size() != b.size()) return std::nullopt;
  if (a.tag.kind == StructureKind::BooleanAlgebra) {
    // any atom bijection is an isomorphism of the powerset algebras
    std::vector<int> id_map(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) id_map[i] = static_cast<int>(i);
    return from_position_map(a, b, id_map);
  }
  IsoSearch s{a, b, {}, {}, std::vector<int>(a.size()), std::vector<bool>(a.size())};
  for (ElementId e : a.elements) s.profile_a.push_back(element_profile(a, e));
  for (ElementId e : b.elements) s.profile_b.push_back(element_profile(b, e));
  std::optional<Morphism> found;
  s.search(0, [&](const std::vector<int>& assignment) {
    found = from_position_map(a, b, assignment);
    return true;
  });
  return found;
}

std::vector<Morphism> automorphisms(const FiniteStructure& s) {
  if (s.size() > kIsoSizeCap) throw CapacityError("automorphisms: size cap exceeded");
  if (s.tag.kind == StructureKind::BooleanAlgebra) {
    // all atom permutations
    std::vector<int> perm(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) perm[i] = static_cast<int>(i);
    std::vector<Morphism> out;
    do {
      out.push_back(from_position_map(s, s, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }
  IsoSearch search{s, s, {}, {}, std::vector<int>(s.size()), std::vector<bool>(s.size())};
  for (ElementId e : s.elements) search.profile_a.push_back(element_profile(s, e));
  search.profile_b = search.profile_a;
  std::vector<Morphism> out;
  search.search(0, [&](const std::vector<int>& assignment) {
    out.push_back(from_position_map(s, s, assignment));
    return false;  // keep enumerating
  });
  return out;
}

}  // namespace katetov
