#include <algorithm>

#include "katetov/structures.hpp"

namespace katetov {

namespace {

Morphism inclusion_of(const FiniteStructure& base, const FiniteStructure& ext) {
  Morphism m = identity_morphism(base);
  m.target = ext;
  m.kind = MorphismKind::Embedding;
  return m;
}

OnePointExtension relational_extension(const FiniteStructure& base, FiniteStructure ext,
                                       ElementId x) {
  OnePointExtension e;
  e.base = base;
  e.new_element = x;
  e.extension = std::move(ext);
  e.inclusion = inclusion_of(base, e.extension);
  return e;
}

void enumerate_graph_like(const FiniteStructure& base, std::vector<OnePointExtension>& out) {
  const std::size_t k = base.size();
  const ElementId x = fresh_element_id(base);
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
    FiniteStructure ext = base;
    ext.elements.push_back(x);
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) ext.pairs.insert({std::min(base.elements[i], x), std::max(base.elements[i], x)});
    if (base.tag.kind == StructureKind::KnFreeGraph && !validate(ext).ok) continue;
    out.push_back(relational_extension(base, std::move(ext), x));
  }
}

void enumerate_digraph(const FiniteStructure& base, std::vector<OnePointExtension>& out) {
  const std::size_t k = base.size();
  const ElementId x = fresh_element_id(base);
  std::vector<int> role(k, 0);  // 0 unrelated, 1 in-neighbour, 2 out-neighbour
  while (true) {
    FiniteStructure ext = base;
    ext.elements.push_back(x);
    for (std::size_t i = 0; i < k; ++i) {
      if (role[i] == 1) ext.pairs.insert({base.elements[i], x});
      if (role[i] == 2) ext.pairs.insert({x, base.elements[i]});
    }
    out.push_back(relational_extension(base, std::move(ext), x));
    std::size_t i = 0;
    while (i < k && role[i] == 2) role[i++] = 0;
    if (i == k) break;
    ++role[i];
  }
}

void enumerate_tournament(const FiniteStructure& base, std::vector<OnePointExtension>& out) {
  const std::size_t k = base.size();
  const ElementId x = fresh_element_id(base);
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
    FiniteStructure ext = base;
    ext.elements.push_back(x);
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1)
        ext.pairs.insert({base.elements[i], x});
      else
        ext.pairs.insert({x, base.elements[i]});
    }
    out.push_back(relational_extension(base, std::move(ext), x));
  }
}

void enumerate_linear_order(const FiniteStructure& base, std::vector<OnePointExtension>& out) {
  const std::size_t k = base.size();
  const ElementId x = fresh_element_id(base);
  std::vector<ElementId> ranked = base.elements;
  std::sort(ranked.begin(), ranked.end(),
            [&](ElementId a, ElementId b) { return a != b && base.leq(a, b); });
  for (std::size_t cut = 0; cut <= k; ++cut) {
    FiniteStructure ext = base;
    ext.elements.push_back(x);
    for (std::size_t i = 0; i < k; ++i) {
      if (i < cut)
        ext.pairs.insert({ranked[i], x});
      else
        ext.pairs.insert({x, ranked[i]});
    }
    out.push_back(relational_extension(base, std::move(ext), x));
  }
}

void enumerate_poset(const FiniteStructure& base, std::vector<OnePointExtension>& out) {
  const std::size_t k = base.size();
  const ElementId x = fresh_element_id(base);
  auto down_closed = [&](std::uint64_t mask) {
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1)
        for (std::size_t j = 0; j < k; ++j)
          if (base.leq(base.elements[j], base.elements[i]) && !(mask >> j & 1)) return false;
    return true;
  };
  auto up_closed = [&](std::uint64_t mask) {
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1)
        for (std::size_t j = 0; j < k; ++j)
          if (base.leq(base.elements[i], base.elements[j]) && !(mask >> j & 1)) return false;
    return true;
  };
  for (std::uint64_t down = 0; down < (std::uint64_t(1) << k); ++down) {
    if (!down_closed(down)) continue;
    for (std::uint64_t up = 0; up < (std::uint64_t(1) << k); ++up) {
      if (down & up) continue;
      if (!up_closed(up)) continue;
      bool dominated = true;
      for (std::size_t i = 0; dominated && i < k; ++i)
        if (down >> i & 1)
          for (std::size_t j = 0; j < k; ++j)
            if ((up >> j & 1) && !base.leq(base.elements[i], base.elements[j])) {
              dominated = false;
              break;
            }
      if (!dominated) continue;
      FiniteStructure ext = base;
      ext.elements.push_back(x);
      for (std::size_t i = 0; i < k; ++i) {
        if (down >> i & 1) ext.pairs.insert({base.elements[i], x});
        if (up >> i & 1) ext.pairs.insert({x, base.elements[i]});
      }
      out.push_back(relational_extension(base, std::move(ext), x));
    }
  }
}

void enumerate_boolean(const FiniteStructure& base, std::vector<OnePointExtension>& out) {
  const std::size_t k = base.size();
  // The extension type over the base is determined by the set of atoms
  // that split; the new carrier element is the join of the lower halves.
  for (std::uint64_t split = 1; split < (std::uint64_t(1) << k); ++split) {
    OnePointExtension e;
    e.base = base;
    ElementId next = fresh_element_id(base);
    std::vector<ElementId> atoms;
    std::vector<ElementId> lower_parts;
    Morphism incl;
    incl.kind = MorphismKind::Embedding;
    for (std::size_t i = 0; i < k; ++i) {
      const ElementId a = base.elements[i];
      if (split >> i & 1) {
        atoms.push_back(next);
        atoms.push_back(next + 1);
        lower_parts.push_back(next);
        incl.atom_map[a] = {next, next + 1};
        next += 2;
      } else {
        atoms.push_back(a);
        incl.atom_map[a] = {a};
      }
    }
    e.extension = make_boolean_algebra(atoms);
    incl.source = base;
    incl.target = e.extension;
    e.inclusion = std::move(incl);
    for (ElementId p : lower_parts) e.new_carrier |= std::uint64_t(1) << e.extension.index_of(p);
    out.push_back(std::move(e));
  }
}

void enumerate_metric(const FiniteStructure& base, std::vector<OnePointExtension>& out) {
  const std::size_t k = base.size();
  const int q = base.tag.param;
  const ElementId x = fresh_element_id(base);
  std::vector<int> value(k, 1);  // numerators over q; 0 would duplicate a point
  auto katetov_ok = [&]() {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const Rational vi(value[i], q), vj(value[j], q);
        const Rational& d = base.dist[i][j];
        if (abs(vi - vj) > d || d > vi + vj) return false;
      }
    return true;
  };
  if (k == 0) {
    FiniteStructure ext = base;
    ext.elements.push_back(x);
    ext.dist.assign(1, {Rational(0)});
    out.push_back(relational_extension(base, std::move(ext), x));
    return;
  }
  while (true) {
    if (katetov_ok()) {
      FiniteStructure ext = base;
      ext.elements.push_back(x);
      ext.dist.assign(k + 1, std::vector<Rational>(k + 1, Rational(0)));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) ext.dist[i][j] = base.dist[i][j];
      for (std::size_t i = 0; i < k; ++i) {
        ext.dist[i][k] = Rational(value[i], q);
        ext.dist[k][i] = ext.dist[i][k];
      }
      out.push_back(relational_extension(base, std::move(ext), x));
    }
    std::size_t i = 0;
    while (i < k && value[i] == q) value[i++] = 1;
    if (i == k) break;
    ++value[i];
  }
}

}  // namespace

std::vector<OnePointExtension> enumerate_one_point_extensions(const FiniteStructure& base) {
  if (base.size() > kIsoSizeCap)
    throw CapacityError("enumerate_one_point_extensions: size cap exceeded");
  std::vector<OnePointExtension> out;
  switch (base.tag.kind) {
    case StructureKind::Graph:
    case StructureKind::KnFreeGraph: enumerate_graph_like(base, out); break;
    case StructureKind::Digraph: enumerate_digraph(base, out); break;
    case StructureKind::Tournament: enumerate_tournament(base, out); break;
    case StructureKind::LinearOrder: enumerate_linear_order(base, out); break;
    case StructureKind::Poset: enumerate_poset(base, out); break;
    case StructureKind::BooleanAlgebra: enumerate_boolean(base, out); break;
    case StructureKind::RationalMetric: enumerate_metric(base, out); break;
  }
  return out;
}

}  // namespace katetov
