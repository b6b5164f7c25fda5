#include "katetov/pushout.hpp"

#include <algorithm>

#include "katetov/tower.hpp"

namespace katetov {

namespace {

bool free_amalgamation_class(StructureKind kind) {
  return kind == StructureKind::Graph || kind == StructureKind::KnFreeGraph ||
         kind == StructureKind::Digraph;
}

void require_graph(const ClassTag& tag, const char* what) {
  if (tag.kind != StructureKind::Graph)
    throw ContractError(std::string(what) +
                        ": only the graph category has pushouts of all homomorphisms here");
}

}  // namespace

FreeAmalgamResult free_amalgam(const Morphism& j1, const Morphism& j2) {
  if (!free_amalgamation_class(j1.source.tag.kind))
    throw ContractError("free_amalgam: class without free amalgamation: " +
                        kind_name(j1.source.tag.kind));
  if (j1.kind == MorphismKind::Homomorphism || j2.kind == MorphismKind::Homomorphism)
    throw ContractError("free_amalgam: both legs must be embeddings");
  for (const auto* j : {&j1, &j2})
    if (const auto r = check_morphism(*j); !r.ok)
      throw ContractError(std::string("free_amalgam: invalid leg: ") + r.violation);
  if (j1.source.elements != j2.source.elements || !(j1.source.tag == j2.source.tag))
    throw ContractError("free_amalgam: legs do not share the base");

  const FiniteStructure& a = j1.source;
  const FiniteStructure& b1 = j1.target;
  const FiniteStructure& b2 = j2.target;

  // carrier: B1 as-is, B2's non-base part relabeled fresh
  FiniteStructure c;
  c.tag = b1.tag;
  c.elements = b1.elements;
  std::map<ElementId, ElementId> into_c;  // B2 element -> amalgam element
  for (ElementId x : a.elements) into_c[j2.apply(x)] = j1.apply(x);
  ElementId next = fresh_element_id(b1);
  for (ElementId y : b2.elements)
    if (!into_c.count(y)) {
      into_c[y] = next++;
      c.elements.push_back(into_c[y]);
    }
  std::sort(c.elements.begin(), c.elements.end());

  c.pairs = b1.pairs;
  for (const auto& [x, y] : b2.pairs) {
    IdPair p{into_c[x], into_c[y]};
    if (is_graph_like(c.tag.kind) && p.first > p.second) std::swap(p.first, p.second);
    c.pairs.insert(p);
  }

  FreeAmalgamResult out;
  out.amalgam = std::move(c);
  out.left = identity_morphism(b1);
  out.left.target = out.amalgam;
  out.left.kind = MorphismKind::Embedding;
  Morphism right;
  right.source = b2;
  right.target = out.amalgam;
  right.kind = MorphismKind::Embedding;
  right.point_map = std::move(into_c);
  out.right = std::move(right);
  return out;
}

PushoutSquare one_point_pushout(const Morphism& f, const OnePointExtension& e) {
  require_graph(f.source.tag, "one_point_pushout");
  if (const auto r = check_morphism(f); !r.ok)
    throw ContractError("one_point_pushout: invalid f: " + r.violation);
  if (f.source.elements != e.base.elements)
    throw ContractError("one_point_pushout: f and the extension disagree on the base");

  const FiniteStructure& a1 = f.target;
  FiniteStructure apex = a1;
  const ElementId xhat = fresh_element_id(a1);
  apex.elements.push_back(xhat);
  std::sort(apex.elements.begin(), apex.elements.end());
  for (ElementId a : e.base.elements)
    if (e.extension.adjacent(e.inclusion.apply(a), e.new_element)) {
      const ElementId fa = f.apply(a);
      apex.pairs.insert({std::min(fa, xhat), std::max(fa, xhat)});
    }

  PushoutSquare sq;
  sq.f = f;
  sq.g = e.inclusion;
  sq.p = identity_morphism(a1);
  sq.p.target = apex;
  sq.p.kind = MorphismKind::Embedding;
  Morphism q;
  q.source = e.extension;
  q.target = apex;
  q.kind = MorphismKind::Homomorphism;
  for (ElementId a : e.base.elements) q.point_map[e.inclusion.apply(a)] = f.apply(a);
  q.point_map[e.new_element] = xhat;
  sq.q = std::move(q);
  if (certificate_feasible(sq)) sq.certified = certify_universality(sq);
  return sq;
}

PushoutSquare mixed_pushout(const Morphism& f, const Morphism& g) {
  require_graph(f.source.tag, "mixed_pushout");
  if (g.kind == MorphismKind::Homomorphism)
    throw ContractError("mixed_pushout: g must be an embedding");
  if (const auto r = check_morphism(g); !r.ok)
    throw ContractError("mixed_pushout: invalid g: " + r.violation);

  auto [relabeled, iso] = relabel_over_base(f.source, g.target, g);
  const auto chain = one_point_chain_over(f.source, relabeled);

  if (chain.empty()) {  // g is an isomorphism: the square collapses onto A1
    PushoutSquare sq;
    sq.f = f;
    sq.g = g;
    sq.p = identity_morphism(f.target);
    sq.p.kind = MorphismKind::Embedding;
    sq.q = compose(f, invert_isomorphism(g));
    sq.q.kind = MorphismKind::Homomorphism;
    if (certificate_feasible(sq)) sq.certified = certify_universality(sq);
    return sq;
  }

  Morphism cur = f;                       // C_{i-1} -> current apex
  Morphism p_total = identity_morphism(f.target);
  p_total.kind = MorphismKind::Embedding;
  for (const auto& step : chain) {
    PushoutSquare sq = one_point_pushout(cur, step);
    p_total = compose(sq.p, p_total);
    cur = sq.q;
  }
  PushoutSquare out;
  out.f = f;
  out.g = g;
  out.p = std::move(p_total);
  out.q = compose(cur, iso);
  out.q.kind = MorphismKind::Homomorphism;
  if (certificate_feasible(out)) out.certified = certify_universality(out);
  return out;
}

bool certificate_feasible(const PushoutSquare& square) {
  const std::size_t n1 = square.f.target.size(), n2 = square.g.target.size();
  const std::size_t m = std::min(square.apex().size() + 2, n1 + n2);
  // m^(n1+n2) cocone candidates
  double cost = 1;
  for (std::size_t i = 0; i < n1 + n2; ++i) cost *= static_cast<double>(m ? m : 1);
  return cost <= 5e6;
}

bool certify_universality(const PushoutSquare& square, int size_slack) {
  const FiniteStructure& a0 = square.f.source;
  const FiniteStructure& a1 = square.f.target;
  const FiniteStructure& a2 = square.g.target;
  const FiniteStructure& apex = square.apex();

  // p o f = q o g must itself commute
  for (ElementId x : a0.elements)
    if (square.p.apply(square.f.apply(x)) != square.q.apply(square.g.apply(x))) return false;
  // the apex must be generated by the two images (uniqueness of mediators)
  {
    std::set<ElementId> covered;
    for (ElementId x : a1.elements) covered.insert(square.p.apply(x));
    for (ElementId x : a2.elements) covered.insert(square.q.apply(x));
    if (covered.size() != apex.size()) return false;
  }

  const std::size_t max_carrier =
      std::min(apex.size() + static_cast<std::size_t>(size_slack), a1.size() + a2.size());
  const std::size_t n1 = a1.size(), n2 = a2.size();

  std::vector<std::size_t> pick(n1 + n2, 0);
  for (std::size_t m = 1; m <= max_carrier; ++m) {
    std::fill(pick.begin(), pick.end(), 0);
    while (true) {
      // cocone candidate: p' on A1 then q' on A2, into carrier {0..m-1}
      const auto pp = [&](std::size_t i) { return static_cast<ElementId>(pick[i]); };
      const auto qq = [&](std::size_t i) { return static_cast<ElementId>(pick[n1 + i]); };
      bool usable = true;
      // surjective onto the carrier (candidate generated by the images)
      std::vector<bool> hit(m, false);
      for (std::size_t i = 0; i < n1 + n2; ++i) hit[pick[i]] = true;
      for (std::size_t i = 0; i < m && usable; ++i) usable = hit[i];
      // no collapsed edges (otherwise not a graph cocone at all)
      for (auto it = a1.pairs.begin(); usable && it != a1.pairs.end(); ++it)
        usable = pp(a1.index_of(it->first)) != pp(a1.index_of(it->second));
      for (auto it = a2.pairs.begin(); usable && it != a2.pairs.end(); ++it)
        usable = qq(a2.index_of(it->first)) != qq(a2.index_of(it->second));
      // commuting with f and g
      for (std::size_t i = 0; usable && i < a0.size(); ++i) {
        const ElementId x = a0.elements[i];
        usable = pp(a1.index_of(square.f.apply(x))) == qq(a2.index_of(square.g.apply(x)));
      }
      if (usable) {
        // minimal target: edges forced by the two legs
        std::set<IdPair> t_edges;
        for (const auto& [x, y] : a1.pairs) {
          ElementId u = pp(a1.index_of(x)), v = pp(a1.index_of(y));
          t_edges.insert({std::min(u, v), std::max(u, v)});
        }
        for (const auto& [x, y] : a2.pairs) {
          ElementId u = qq(a2.index_of(x)), v = qq(a2.index_of(y));
          t_edges.insert({std::min(u, v), std::max(u, v)});
        }
        // the unique candidate mediator
        std::map<ElementId, ElementId> h;
        bool consistent = true;
        for (std::size_t i = 0; i < n1 && consistent; ++i) {
          const ElementId tgt = pp(i);
          const ElementId src = square.p.apply(a1.elements[i]);
          const auto it = h.find(src);
          if (it == h.end())
            h[src] = tgt;
          else
            consistent = it->second == tgt;
        }
        for (std::size_t i = 0; i < n2 && consistent; ++i) {
          const ElementId tgt = qq(i);
          const ElementId src = square.q.apply(a2.elements[i]);
          const auto it = h.find(src);
          if (it == h.end())
            h[src] = tgt;
          else
            consistent = it->second == tgt;
        }
        if (!consistent) return false;  // no mediator can exist
        if (h.size() != apex.size()) return false;
        // h must be a graph homomorphism into the minimal target
        for (const auto& [x, y] : apex.pairs) {
          const ElementId u = h[x], v = h[y];
          if (u == v) return false;
          if (!t_edges.count({std::min(u, v), std::max(u, v)})) return false;
        }
      }
      std::size_t i = 0;
      while (i < pick.size() && pick[i] + 1 == m) pick[i++] = 0;
      if (i == pick.size()) break;
      ++pick[i];
    }
  }
  return true;
}

bool is_one_point_over(const Morphism& p) {
  if (p.kind == MorphismKind::Homomorphism) return false;
  if (!check_morphism(p).ok) return false;
  return p.target.size() == p.source.size() + 1;
}

KObjectResult generic_k(const FiniteStructure& a) {
  require_graph(a.tag, "generic_k");
  if (a.size() > 5) throw CapacityError("generic_k: base too large");

  KObjectResult out;
  out.object = a;
  out.eta = identity_morphism(a);
  out.eta.kind = MorphismKind::Embedding;
  for (ElementId x : a.elements) {
    out.index.push_back(OldPayload{x});
    out.lookup.emplace(OldPayload{x}, x);
  }
  for (const auto& e : enumerate_one_point_extensions(a)) {
    PushoutSquare sq = one_point_pushout(out.eta, e);
    out.eta = compose(sq.p, out.eta);
    out.object = sq.apex();
    // the adjoined vertex realizes exactly this neighbourhood type
    std::vector<ElementId> members;
    for (ElementId v : a.elements)
      if (e.extension.adjacent(e.inclusion.apply(v), e.new_element)) members.push_back(v);
    const ElementId fresh = sq.q.apply(e.new_element);
    out.index.push_back(SetPayload{members});
    out.lookup.emplace(SetPayload{members}, fresh);
  }
  out.eta.target = out.object;
  return out;
}

bool realizes_extension(const KObjectResult& k, const OnePointExtension& e) {
  // candidates for the image of the new point, scanned in id order
  for (ElementId z : k.object.elements) {
    bool taken = false;
    for (ElementId a : e.base.elements) taken = taken || k.eta.apply(a) == z;
    if (taken) continue;
    bool fits = true;
    for (ElementId a : e.base.elements) {
      const bool want = e.extension.adjacent(e.inclusion.apply(a), e.new_element);
      if (k.object.adjacent(k.eta.apply(a), z) != want) {
        fits = false;
        break;
      }
    }
    if (fits) return true;
  }
  return false;
}

}  // namespace katetov
