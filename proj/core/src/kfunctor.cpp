#include "katetov/kfunctor.hpp"

#include <algorithm>
#include <sstream>

namespace katetov {

bool operator<(const KatetovPayload& a, const KatetovPayload& b) {
  return std::lexicographical_compare(a.values.begin(), a.values.end(), b.values.begin(),
                                      b.values.end());
}

namespace {

std::vector<ElementId> mask_to_elements(const FiniteStructure& a, std::uint64_t mask) {
  std::vector<ElementId> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (mask >> i & 1) out.push_back(a.elements[i]);
  return out;
}

std::vector<ElementId> image_set(const Morphism& f, const std::vector<ElementId>& xs) {
  std::vector<ElementId> out;
  out.reserve(xs.size());
  for (ElementId x : xs) out.push_back(f.apply(x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string join_ids(const std::vector<ElementId>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  return os.str();
}

}  // namespace

std::string describe(const KElement& e) {
  std::ostringstream os;
  if (const auto* p = std::get_if<OldPayload>(&e)) {
    os << "old(" << p->id << ")";
  } else if (const auto* p = std::get_if<SetPayload>(&e)) {
    os << "new{" << join_ids(p->members) << "}";
  } else if (const auto* p = std::get_if<InOutPayload>(&e)) {
    os << "new(in{" << join_ids(p->in) << "},out{" << join_ids(p->out) << "})";
  } else if (const auto* p = std::get_if<CutPayload>(&e)) {
    os << "cut({" << join_ids(p->lower) << "},{" << join_ids(p->upper) << "})";
  } else if (const auto* p = std::get_if<BoundsPayload>(&e)) {
    os << "between({" << join_ids(p->lower) << "},{" << join_ids(p->upper) << "})";
  } else if (const auto* p = std::get_if<SeqPayload>(&e)) {
    os << "seq<" << join_ids(p->entries) << ">";
  } else if (const auto* p = std::get_if<AtomHalfPayload>(&e)) {
    os << "half(" << p->bit << "," << p->atom << ")";
  } else if (const auto* p = std::get_if<KatetovPayload>(&e)) {
    os << "fn(";
    for (std::size_t i = 0; i < p->values.size(); ++i) os << (i ? "," : "") << p->values[i];
    os << ")";
  }
  return os.str();
}

ElementId KObjectResult::element_for(const KElement& e) const {
  const auto it = lookup.find(e);
  if (it == lookup.end())
    throw ContractError("K-object has no element with descriptor " + describe(e));
  return it->second;
}

bool kind_allowed(const ClassTag& tag, MorphismKind kind) {
  if (kind != MorphismKind::Homomorphism) return true;
  switch (tag.kind) {
    case StructureKind::Graph:
    case StructureKind::Poset:
    case StructureKind::BooleanAlgebra:
    case StructureKind::RationalMetric:
    case StructureKind::Digraph: return true;
    case StructureKind::KnFreeGraph:
    case StructureKind::LinearOrder:
    case StructureKind::Tournament: return false;
  }
  return false;
}

std::size_t k_object_size_cap(StructureKind) { return 50'000; }

// ---------------------------------------------------------------------------
// K on objects

namespace {

void check_capacity(std::size_t predicted, const char* what) {
  if (predicted > k_object_size_cap(StructureKind::Graph))
    throw CapacityError(std::string(what) + ": K(A) would have " + std::to_string(predicted) +
                        " elements, over the budget");
}

// base^exp, saturating just past the size cap
std::size_t saturating_power(std::size_t base, std::size_t exp) {
  const std::size_t cap = k_object_size_cap(StructureKind::Graph) + 1;
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap;
    r *= base;
  }
  return r;
}

struct Builder {
  FiniteStructure object;
  std::vector<KElement> index;
  ElementId next_id = 0;

  ElementId add(KElement e) {
    const ElementId id = next_id++;
    object.elements.push_back(id);
    index.push_back(std::move(e));
    return id;
  }
};

KObjectResult finish(const FiniteStructure& a, Builder b, Morphism eta) {
  eta.source = a;
  eta.target = b.object;
  eta.kind = MorphismKind::Embedding;
  KObjectResult out{std::move(b.object), std::move(eta), std::move(b.index), {}};
  for (std::size_t i = 0; i < out.index.size(); ++i)
    out.lookup.emplace(out.index[i], out.object.elements[i]);
  return out;
}

KObjectResult k_object_graph_like(const FiniteStructure& a) {
  const std::size_t k = a.size();
  check_capacity(k + saturating_power(2, k), "graph");
  Builder b;
  b.object.tag = a.tag;
  b.next_id = fresh_element_id(a);
  Morphism eta;
  for (ElementId e : a.elements) {
    b.object.elements.push_back(e);
    b.index.push_back(OldPayload{e});
    eta.point_map[e] = e;
  }
  b.object.pairs = a.pairs;
  const int forbidden = a.tag.kind == StructureKind::KnFreeGraph ? a.tag.param : 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
    auto members = mask_to_elements(a, mask);
    // a neighbourhood containing a (n-1)-clique would complete a forbidden clique
    if (forbidden && contains_clique(induced_substructure(a, members), forbidden - 1)) continue;
    const ElementId v = b.add(SetPayload{members});
    for (ElementId m : members) b.object.pairs.insert({std::min(m, v), std::max(m, v)});
  }
  return finish(a, std::move(b), std::move(eta));
}

KObjectResult k_object_digraph(const FiniteStructure& a) {
  const std::size_t k = a.size();
  check_capacity(k + saturating_power(3, k), "digraph");
  Builder b;
  b.object.tag = a.tag;
  b.next_id = fresh_element_id(a);
  Morphism eta;
  for (ElementId e : a.elements) {
    b.object.elements.push_back(e);
    b.index.push_back(OldPayload{e});
    eta.point_map[e] = e;
  }
  b.object.pairs = a.pairs;
  std::vector<int> role(k, 0);
  while (true) {
    std::vector<ElementId> in, out;
    for (std::size_t i = 0; i < k; ++i) {
      if (role[i] == 1) in.push_back(a.elements[i]);
      if (role[i] == 2) out.push_back(a.elements[i]);
    }
    const ElementId v = b.add(InOutPayload{in, out});
    for (ElementId m : in) b.object.pairs.insert({m, v});
    for (ElementId m : out) b.object.pairs.insert({v, m});
    std::size_t i = 0;
    while (i < k && role[i] == 2) role[i++] = 0;
    if (i == k) break;
    ++role[i];
  }
  return finish(a, std::move(b), std::move(eta));
}

KObjectResult k_object_linear_order(const FiniteStructure& a) {
  const std::size_t k = a.size();
  check_capacity(2 * k + 1, "linear order");
  Builder b;
  b.object.tag = a.tag;
  b.next_id = fresh_element_id(a);
  Morphism eta;
  for (ElementId e : a.elements) {
    b.object.elements.push_back(e);
    b.index.push_back(OldPayload{e});
    eta.point_map[e] = e;
  }
  b.object.pairs = a.pairs;
  std::vector<ElementId> ranked = a.elements;
  std::sort(ranked.begin(), ranked.end(),
            [&](ElementId x, ElementId y) { return x != y && a.leq(x, y); });
  std::vector<std::pair<ElementId, CutPayload>> cuts;
  for (std::size_t c = 0; c <= k; ++c) {
    std::vector<ElementId> lower(ranked.begin(), ranked.begin() + c);
    std::vector<ElementId> upper(ranked.begin() + c, ranked.end());
    std::sort(lower.begin(), lower.end());
    std::sort(upper.begin(), upper.end());
    CutPayload payload{lower, upper};
    const ElementId v = b.add(payload);
    for (ElementId m : lower) b.object.pairs.insert({m, v});
    for (ElementId m : upper) b.object.pairs.insert({v, m});
    cuts.emplace_back(v, std::move(payload));
  }
  for (const auto& [v1, c1] : cuts)
    for (const auto& [v2, c2] : cuts) {
      if (v1 == v2) continue;
      // cut1 below cut2 iff some element lies above cut1 and below cut2
      std::vector<ElementId> meet;
      std::set_intersection(c1.upper.begin(), c1.upper.end(), c2.lower.begin(), c2.lower.end(),
                            std::back_inserter(meet));
      if (!meet.empty()) b.object.pairs.insert({v1, v2});
    }
  return finish(a, std::move(b), std::move(eta));
}

KObjectResult k_object_poset(const FiniteStructure& a) {
  const std::size_t k = a.size();
  // disjoint bound pairs are at most 3^k
  check_capacity(k + saturating_power(3, k), "poset");
  Builder b;
  b.object.tag = a.tag;
  b.next_id = fresh_element_id(a);
  Morphism eta;
  for (ElementId e : a.elements) {
    b.object.elements.push_back(e);
    b.index.push_back(OldPayload{e});
    eta.point_map[e] = e;
  }
  b.object.pairs = a.pairs;
  std::vector<std::pair<ElementId, BoundsPayload>> news;
  for (std::uint64_t lo = 0; lo < (std::uint64_t(1) << k); ++lo)
    for (std::uint64_t hi = 0; hi < (std::uint64_t(1) << k); ++hi) {
      if (lo & hi) continue;  // overlapping bounds would identify the new point with an old one
      bool dominated = true;
      for (std::size_t i = 0; dominated && i < k; ++i)
        if (lo >> i & 1)
          for (std::size_t j = 0; j < k; ++j)
            if ((hi >> j & 1) && !a.leq(a.elements[i], a.elements[j])) {
              dominated = false;
              break;
            }
      if (!dominated) continue;
      BoundsPayload payload{mask_to_elements(a, lo), mask_to_elements(a, hi)};
      const ElementId v = b.add(payload);
      news.emplace_back(v, std::move(payload));
    }
  // order between old elements and new points
  for (const auto& [v, p] : news) {
    for (ElementId e : a.elements) {
      bool below = false, above = false;
      for (ElementId u : p.lower) below = below || a.leq(e, u);
      for (ElementId u : p.upper) above = above || a.leq(u, e);
      if (below) b.object.pairs.insert({e, v});
      if (above) b.object.pairs.insert({v, e});
    }
  }
  // order between new points
  for (const auto& [v1, p1] : news)
    for (const auto& [v2, p2] : news) {
      if (v1 == v2) continue;
      bool rel = false;
      for (ElementId x : p1.upper) {
        for (ElementId y : p2.lower)
          if (a.leq(x, y)) {
            rel = true;
            break;
          }
        if (rel) break;
      }
      if (rel) b.object.pairs.insert({v1, v2});
    }
  return finish(a, std::move(b), std::move(eta));
}

KObjectResult k_object_tournament(const FiniteStructure& a) {
  const std::size_t k = a.size();
  std::size_t predicted = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t p = saturating_power(k, i);
    predicted = predicted > k_object_size_cap(a.tag.kind) ? predicted : predicted + p;
  }
  check_capacity(k + predicted, "tournament");
  Builder b;
  b.object.tag = a.tag;
  b.next_id = fresh_element_id(a);
  Morphism eta;
  for (ElementId e : a.elements) {
    b.object.elements.push_back(e);
    b.index.push_back(OldPayload{e});
    eta.point_map[e] = e;
  }
  b.object.pairs = a.pairs;
  // all sequences over the carrier of length <= |carrier|, in shortlex order
  std::vector<std::pair<ElementId, SeqPayload>> seqs;
  std::vector<std::vector<ElementId>> current{{}};
  for (std::size_t len = 0; len <= k; ++len) {
    for (const auto& s : current) seqs.emplace_back(b.add(SeqPayload{s}), SeqPayload{s});
    if (len == k) break;
    std::vector<std::vector<ElementId>> longer;
    for (const auto& s : current)
      for (ElementId e : a.elements) {
        auto t = s;
        t.push_back(e);
        longer.push_back(std::move(t));
      }
    current = std::move(longer);
  }
  for (const auto& [v, s] : seqs) {
    for (ElementId e : a.elements) {
      const bool appears = std::find(s.entries.begin(), s.entries.end(), e) != s.entries.end();
      if (appears)
        b.object.pairs.insert({e, v});
      else
        b.object.pairs.insert({v, e});
    }
  }
  for (const auto& [v1, s1] : seqs)
    for (const auto& [v2, s2] : seqs) {
      if (v1 == v2) continue;
      if (s1.entries.size() < s2.entries.size()) {
        b.object.pairs.insert({v1, v2});
      } else if (s1.entries.size() == s2.entries.size()) {
        for (std::size_t i = 0; i < s1.entries.size(); ++i)
          if (s1.entries[i] != s2.entries[i]) {
            if (a.has_arc(s1.entries[i], s2.entries[i])) b.object.pairs.insert({v1, v2});
            break;
          }
      }
    }
  return finish(a, std::move(b), std::move(eta));
}

KObjectResult k_object_boolean(const FiniteStructure& a) {
  check_capacity(2 * a.size(), "boolean algebra");
  Builder b;
  b.object.tag = a.tag;
  Morphism eta;
  for (ElementId atom : a.elements) {
    const ElementId low = b.add(AtomHalfPayload{0, atom});
    const ElementId high = b.add(AtomHalfPayload{1, atom});
    eta.atom_map[atom] = {low, high};
  }
  return finish(a, std::move(b), std::move(eta));
}

std::vector<KatetovPayload> grid_katetov_functions(const FiniteStructure& a) {
  const std::size_t k = a.size();
  const int q = a.tag.param;
  std::vector<KatetovPayload> out;
  if (k == 0) {
    out.push_back(KatetovPayload{{}});
    return out;
  }
  std::vector<int> value(k, 0);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const Rational vi(value[i], q), vj(value[j], q);
        const Rational& d = a.dist[i][j];
        if (abs(vi - vj) > d || d > vi + vj) {
          ok = false;
          break;
        }
      }
    if (ok) {
      std::vector<Rational> values;
      values.reserve(k);
      for (std::size_t i = 0; i < k; ++i) values.emplace_back(value[i], q);
      out.push_back(KatetovPayload{std::move(values)});
    }
    std::size_t i = 0;
    while (i < k && value[i] == q) value[i++] = 0;
    if (i == k) break;
    ++value[i];
  }
  return out;
}

KObjectResult k_object_metric(const FiniteStructure& a) {
  const std::size_t k = a.size();
  const int q = a.tag.param;
  check_capacity(saturating_power(static_cast<std::size_t>(q) + 1, k), "metric");
  Builder b;
  b.object.tag = a.tag;
  const auto fns = grid_katetov_functions(a);
  for (const auto& fn : fns) b.add(fn);
  const std::size_t m = fns.size();
  b.object.dist.assign(m, std::vector<Rational>(m, Rational(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Rational sup(0);
      for (std::size_t t = 0; t < k; ++t) {
        const Rational diff = abs(fns[i].values[t] - fns[j].values[t]);
        if (diff > sup) sup = diff;
      }
      b.object.dist[i][j] = sup;
    }
  Morphism eta;
  for (std::size_t i = 0; i < k; ++i) {
    KatetovPayload hat;
    for (std::size_t j = 0; j < k; ++j) hat.values.push_back(a.dist[j][i]);
    const auto it = std::find(fns.begin(), fns.end(), hat);
    eta.point_map[a.elements[i]] = b.object.elements[it - fns.begin()];
  }
  return finish(a, std::move(b), std::move(eta));
}

}  // namespace

KObjectResult k_object(const FiniteStructure& a) {
  switch (a.tag.kind) {
    case StructureKind::Graph:
    case StructureKind::KnFreeGraph: return k_object_graph_like(a);
    case StructureKind::Digraph: return k_object_digraph(a);
    case StructureKind::LinearOrder: return k_object_linear_order(a);
    case StructureKind::Poset: return k_object_poset(a);
    case StructureKind::Tournament: return k_object_tournament(a);
    case StructureKind::BooleanAlgebra: return k_object_boolean(a);
    case StructureKind::RationalMetric: return k_object_metric(a);
  }
  throw ContractError("k_object: unknown class");
}

// ---------------------------------------------------------------------------
// K on morphisms

namespace {

// Upward closure of a set in the target order.
std::vector<ElementId> up_closure(const FiniteStructure& s, const std::vector<ElementId>& xs) {
  std::vector<ElementId> out;
  for (ElementId e : s.elements)
    for (ElementId x : xs)
      if (s.leq(x, e)) {
        out.push_back(e);
        break;
      }
  return out;
}

Rational capped_push_value(const Morphism& f, const std::vector<Rational>& phi, ElementId y) {
  // min over x of d(y, f(x)) + phi(x), capped at the sphere diameter 1
  Rational best(1);
  for (std::size_t i = 0; i < f.source.size(); ++i) {
    const Rational cand = f.target.distance(y, f.apply(f.source.elements[i])) + phi[i];
    if (cand < best) best = cand;
  }
  return best;
}

}  // namespace

Morphism k_morphism(const Morphism& f) {
  return k_morphism_between(f, k_object(f.source), k_object(f.target));
}

Morphism k_morphism_between(const Morphism& f, const KObjectResult& ka, const KObjectResult& kb) {
  if (!kind_allowed(f.source.tag, f.kind))
    throw ContractError("k_morphism: morphism kind not admitted by the class " +
                        kind_name(f.source.tag.kind));
  if (f.source.tag.kind == StructureKind::Digraph && f.kind == MorphismKind::Homomorphism) {
    std::set<ElementId> images;
    for (const auto& [x, y] : f.point_map) images.insert(y);
    if (images.size() != f.point_map.size())
      throw ContractError(
          "k_morphism: digraph homomorphisms must be injective (a collapse admits no "
          "functorial image)");
  }
  Morphism out;
  out.source = ka.object;
  out.target = kb.object;
  out.kind = f.kind;

  if (f.source.tag.kind == StructureKind::BooleanAlgebra) {
    for (std::size_t i = 0; i < ka.index.size(); ++i) {
      const auto& half = std::get<AtomHalfPayload>(ka.index[i]);
      std::vector<ElementId> image;
      for (ElementId t : f.apply_atoms(half.atom))
        image.push_back(kb.element_for(AtomHalfPayload{half.bit, t}));
      std::sort(image.begin(), image.end());
      out.atom_map[ka.object.elements[i]] = std::move(image);
    }
    return out;
  }

  for (std::size_t i = 0; i < ka.index.size(); ++i) {
    const ElementId src = ka.object.elements[i];
    const KElement& desc = ka.index[i];
    KElement mapped;
    if (const auto* p = std::get_if<OldPayload>(&desc)) {
      mapped = OldPayload{f.apply(p->id)};
    } else if (const auto* p = std::get_if<SetPayload>(&desc)) {
      mapped = SetPayload{image_set(f, p->members)};
    } else if (const auto* p = std::get_if<InOutPayload>(&desc)) {
      mapped = InOutPayload{image_set(f, p->in), image_set(f, p->out)};
    } else if (const auto* p = std::get_if<CutPayload>(&desc)) {
      const auto upper = up_closure(f.target, image_set(f, p->upper));
      std::vector<ElementId> lower;
      std::set_difference(f.target.elements.begin(), f.target.elements.end(), upper.begin(),
                          upper.end(), std::back_inserter(lower));
      mapped = CutPayload{lower, upper};
    } else if (const auto* p = std::get_if<BoundsPayload>(&desc)) {
      const auto lo = image_set(f, p->lower);
      const auto hi = image_set(f, p->upper);
      std::vector<ElementId> meet;
      std::set_intersection(lo.begin(), lo.end(), hi.begin(), hi.end(), std::back_inserter(meet));
      if (meet.empty()) {
        mapped = BoundsPayload{lo, hi};
      } else {
        // a collapse pinches the gap shut; the image is the unique old
        // element caught between the bounds
        mapped = OldPayload{meet.front()};
      }
    } else if (const auto* p = std::get_if<SeqPayload>(&desc)) {
      std::vector<ElementId> entries;
      entries.reserve(p->entries.size());
      for (ElementId e : p->entries) entries.push_back(f.apply(e));
      mapped = SeqPayload{std::move(entries)};
    } else if (const auto* p = std::get_if<KatetovPayload>(&desc)) {
      std::vector<Rational> values;
      for (ElementId y : f.target.elements) values.push_back(capped_push_value(f, p->values, y));
      mapped = KatetovPayload{std::move(values)};
    }
    out.point_map[src] = kb.element_for(mapped);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Resolution of one-point extensions

Morphism resolve_extension(const OnePointExtension& e) {
  const KObjectResult k = k_object(e.base);
  const FiniteStructure& ext = e.extension;
  Morphism g;
  g.source = ext;
  g.target = k.object;
  g.kind = MorphismKind::Embedding;

  if (e.base.tag.kind == StructureKind::BooleanAlgebra) {
    for (ElementId a : e.base.elements) {
      const auto& parts = e.inclusion.apply_atoms(a);
      if (parts.size() == 1) {
        g.atom_map[parts[0]] = {k.element_for(AtomHalfPayload{0, a}),
                                k.element_for(AtomHalfPayload{1, a})};
      } else {
        // the half lying under the new carrier element goes to bit 0
        for (ElementId part : parts) {
          const bool under = e.new_carrier >> ext.index_of(part) & 1;
          g.atom_map[part] = {k.element_for(AtomHalfPayload{under ? 0 : 1, a})};
        }
      }
    }
    return g;
  }

  for (ElementId a : e.base.elements) g.point_map[e.inclusion.apply(a)] = k.eta.apply(a);
  const ElementId x = e.new_element;
  KElement payload;
  switch (e.base.tag.kind) {
    case StructureKind::Graph:
    case StructureKind::KnFreeGraph: {
      std::vector<ElementId> members;
      for (ElementId a : e.base.elements)
        if (ext.adjacent(e.inclusion.apply(a), x)) members.push_back(a);
      payload = SetPayload{members};
      break;
    }
    case StructureKind::Digraph: {
      std::vector<ElementId> in, out;
      for (ElementId a : e.base.elements) {
        if (ext.has_arc(e.inclusion.apply(a), x)) in.push_back(a);
        if (ext.has_arc(x, e.inclusion.apply(a))) out.push_back(a);
      }
      payload = InOutPayload{in, out};
      break;
    }
    case StructureKind::LinearOrder: {
      std::vector<ElementId> lower, upper;
      for (ElementId a : e.base.elements) {
        if (ext.leq(e.inclusion.apply(a), x)) lower.push_back(a);
        if (ext.leq(x, e.inclusion.apply(a))) upper.push_back(a);
      }
      payload = CutPayload{lower, upper};
      break;
    }
    case StructureKind::Poset: {
      std::vector<ElementId> lower, upper;
      for (ElementId a : e.base.elements) {
        if (ext.leq(e.inclusion.apply(a), x)) lower.push_back(a);
        if (ext.leq(x, e.inclusion.apply(a))) upper.push_back(a);
      }
      payload = BoundsPayload{lower, upper};
      break;
    }
    case StructureKind::Tournament: {
      std::vector<ElementId> entries;
      for (ElementId a : e.base.elements)
        if (ext.has_arc(e.inclusion.apply(a), x)) entries.push_back(a);
      payload = SeqPayload{entries};
      break;
    }
    case StructureKind::RationalMetric: {
      std::vector<Rational> values;
      for (ElementId a : e.base.elements) values.push_back(ext.distance(e.inclusion.apply(a), x));
      payload = KatetovPayload{values};
      break;
    }
    case StructureKind::BooleanAlgebra: break;  // handled above
  }
  g.point_map[x] = k.element_for(payload);
  return g;
}

}  // namespace katetov
