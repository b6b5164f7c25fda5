#include "katetov/limits.hpp"

#include <algorithm>

namespace katetov {

namespace {

void require_pointed(const TowerHandle& t, const char* what) {
  if (t.tag().kind == StructureKind::BooleanAlgebra)
    throw ContractError(std::string(what) + ": Boolean towers address atoms, not colimit points");
}

// relation code of an address pair inside one tower's colimit
std::int64_t colimit_code(TowerHandle& t, const TowerAddress& a, const TowerAddress& b) {
  const int lvl = std::max(a.level, b.level);
  const ElementId ea = t.resolve(a, lvl);
  const ElementId eb = t.resolve(b, lvl);
  return relation_code(t.level(lvl), ea, eb);
}

std::vector<TowerAddress> all_canonical_addresses(TowerHandle& t, int max_level) {
  t.expand_to(max_level);
  std::vector<TowerAddress> out;
  for (int lvl = 0; lvl <= max_level; ++lvl)
    for (ElementId e : t.level(lvl).elements)
      if (t.canonical({lvl, e}) == TowerAddress{lvl, e}) out.push_back({lvl, e});
  return out;
}

}  // namespace

const TowerAddress* EndoTruncation::image_of(const TowerAddress& canonical_key) const {
  const auto it = std::lower_bound(
      table.begin(), table.end(), canonical_key,
      [](const auto& entry, const TowerAddress& key) { return entry.first < key; });
  if (it == table.end() || !(it->first == canonical_key)) return nullptr;
  return &it->second;
}

std::vector<Morphism> k_omega_morphism(const Morphism& f, int depth, TowerHandle& source_tower,
                                       TowerHandle& target_tower) {
  source_tower.expand_to(depth);
  target_tower.expand_to(depth);
  std::vector<Morphism> out;
  out.push_back(f);
  for (int i = 0; i < depth; ++i)
    out.push_back(k_morphism_between(out.back(), source_tower.step(i), target_tower.step(i)));
  return out;
}

std::vector<Morphism> k_omega_morphism(const Morphism& f, int depth) {
  TowerHandle s(f.source), t(f.target);
  return k_omega_morphism(f, depth, s, t);
}

bool partial_iso_valid(TowerHandle& t1, TowerHandle& t2, const PartialMap& m) {
  if (m.domain.size() != m.images.size()) return false;
  require_pointed(t1, "partial map");
  require_pointed(t2, "partial map");
  for (std::size_t i = 0; i < m.domain.size(); ++i)
    for (std::size_t j = 0; j < m.domain.size(); ++j) {
      if (i != j && t1.canonical(m.domain[i]) == t1.canonical(m.domain[j])) return false;
      if (i != j && t2.canonical(m.images[i]) == t2.canonical(m.images[j])) return false;
      if (colimit_code(t1, m.domain[i], m.domain[j]) !=
          colimit_code(t2, m.images[i], m.images[j]))
        return false;
    }
  return true;
}

namespace {

// least valid witness in `target` matching the relations that `point`
// has to the matched set; expands one level past the constraints if the
// frozen part has no witness
TowerAddress find_witness(TowerHandle& source, TowerHandle& target, const PartialMap& m,
                          const TowerAddress& point, bool forward) {
  const auto& dom = forward ? m.domain : m.images;
  const auto& img = forward ? m.images : m.domain;
  TowerHandle& dt = forward ? source : target;
  TowerHandle& it = forward ? target : source;

  std::vector<std::int64_t> wanted;
  wanted.reserve(dom.size());
  for (const auto& d : dom) wanted.push_back(colimit_code(dt, point, d));

  int constraint_level = 0;
  for (const auto& i : img) constraint_level = std::max(constraint_level, i.level);

  for (int max_level = constraint_level; max_level <= constraint_level + 1; ++max_level) {
    for (const auto& cand : all_canonical_addresses(it, max_level)) {
      bool taken = false;
      for (const auto& i : img)
        if (it.canonical(i) == cand) taken = true;
      if (taken) continue;
      bool fits = true;
      for (std::size_t k = 0; k < img.size() && fits; ++k)
        fits = colimit_code(it, cand, img[k]) == wanted[k];
      if (fits) return cand;
    }
  }
  throw CapacityError("back_and_forth: no witness within one level past the constraints");
}

}  // namespace

PartialMap extend_match_at(TowerHandle& t1, TowerHandle& t2, PartialMap m, TowerAddress point,
                           bool forward) {
  TowerHandle& home = forward ? t1 : t2;
  const TowerAddress canon = home.canonical(point);
  const auto& side = forward ? m.domain : m.images;
  for (const auto& d : side)
    if (home.canonical(d) == canon) return m;
  const TowerAddress witness = find_witness(t1, t2, m, canon, forward);
  if (forward) {
    m.domain.push_back(canon);
    m.images.push_back(witness);
  } else {
    m.images.push_back(canon);
    m.domain.push_back(witness);
  }
  return m;
}

PartialMap back_and_forth(TowerHandle& t1, TowerHandle& t2, PartialMap seed, int steps) {
  require_pointed(t1, "back_and_forth");
  require_pointed(t2, "back_and_forth");
  if (!partial_iso_valid(t1, t2, seed))
    throw ContractError("back_and_forth: seed is not a partial isomorphism");
  PartialMap m = std::move(seed);
  m.kind = MorphismKind::Isomorphism;

  auto next_unmatched = [](TowerHandle& t, const std::vector<TowerAddress>& taken,
                           int scan_level) -> std::optional<TowerAddress> {
    for (const auto& cand : all_canonical_addresses(t, scan_level)) {
      bool seen = false;
      for (const auto& d : taken)
        if (t.canonical(d) == cand) seen = true;
      if (!seen) return cand;
    }
    return std::nullopt;
  };

  for (int s = 0; s < steps; ++s) {
    const bool forward = s % 2 == 0;
    TowerHandle& home = forward ? t1 : t2;
    const auto& taken = forward ? m.domain : m.images;
    int scan = 0;
    std::optional<TowerAddress> pick;
    while (!(pick = next_unmatched(home, taken, scan)).has_value()) ++scan;
    m = extend_match_at(t1, t2, std::move(m), *pick, forward);
  }
  if (!partial_iso_valid(t1, t2, m))
    throw ContractError("back_and_forth produced an invalid map");
  return m;
}

// ---------------------------------------------------------------------------
// extend_partial_morphism

namespace {

struct ClosedSide {
  FiniteStructure structure;        // induced at a common level
  int level = 0;                    // that level
  std::vector<TowerAddress> canon;  // canonical inputs, aligned with pairing order
  std::vector<ElementId> resolved;  // ids at `level`, aligned
};

ClosedSide close_side(TowerHandle& t, const std::vector<TowerAddress>& addrs) {
  ClosedSide out;
  for (const auto& a : addrs) out.level = std::max(out.level, t.canonical(a).level);
  for (const auto& a : addrs) {
    const auto c = t.canonical(a);
    out.canon.push_back(c);
    out.resolved.push_back(t.resolve(c, out.level));
  }
  out.structure = induced_substructure(t.level(out.level), out.resolved);
  return out;
}

}  // namespace

EndoTruncation extend_partial_morphism(TowerHandle& tower, const PartialMap& f, int depth) {
  require_pointed(tower, "extend_partial_morphism");
  if (!kind_allowed(tower.tag(), f.kind))
    throw ContractError("extend_partial_morphism: morphism kind not admitted by the class " +
                        kind_name(tower.tag().kind));
  if (f.domain.size() != f.images.size())
    throw ContractError("extend_partial_morphism: domain/image length mismatch");

  const ClosedSide dom = close_side(tower, f.domain);
  const ClosedSide cod = close_side(tower, f.images);

  Morphism m;
  m.source = dom.structure;
  m.target = cod.structure;
  m.kind = f.kind;
  for (std::size_t i = 0; i < dom.resolved.size(); ++i)
    m.point_map[dom.resolved[i]] = cod.resolved[i];
  if (const auto r = check_morphism(m); !r.ok)
    throw ContractError("extend_partial_morphism: pairing is not a " + kind_name(f.kind) + ": " +
                        r.violation);

  TowerHandle ta(dom.structure, tower.level_budget());
  TowerHandle tb(cod.structure, tower.level_budget());

  // identification s : tower(A) -> tower, seeded by the domain inclusions
  PartialMap s;
  for (std::size_t i = 0; i < dom.resolved.size(); ++i) {
    s.domain.push_back({0, dom.resolved[i]});
    s.images.push_back(dom.canon[i]);
  }
  // identification t : tower(B) -> tower, seeded by the codomain inclusions
  PartialMap tmap;
  for (std::size_t i = 0; i < cod.resolved.size(); ++i) {
    tmap.domain.push_back({0, cod.resolved[i]});
    tmap.images.push_back(cod.canon[i]);
  }

  // cover the requested truncation with s-preimages
  const auto points = all_canonical_addresses(tower, depth);
  for (const auto& p : points) s = extend_match_at(ta, tower, std::move(s), p, false);

  std::vector<Morphism> family;  // K^i(m), grown on demand
  family.push_back(m);

  EndoTruncation out;
  out.depth_in = depth;
  for (const auto& p : points) {
    // a = s^{-1}(p)
    TowerAddress a{-1, -1};
    for (std::size_t i = 0; i < s.images.size(); ++i)
      if (tower.canonical(s.images[i]) == p) a = s.domain[i];
    if (a.level < 0) throw ContractError("extend_partial_morphism: coverage gap");
    while (static_cast<int>(family.size()) <= a.level) {
      const int i = static_cast<int>(family.size()) - 1;
      ta.expand_to(i + 1);
      tb.expand_to(i + 1);
      family.push_back(k_morphism_between(family.back(), ta.step(i), tb.step(i)));
    }
    const TowerAddress b{a.level, family[a.level].apply(a.id)};
    tmap = extend_match_at(tb, tower, std::move(tmap), b, true);
    const TowerAddress bc = tb.canonical(b);
    TowerAddress q{-1, -1};
    for (std::size_t i = 0; i < tmap.domain.size(); ++i)
      if (tb.canonical(tmap.domain[i]) == bc) q = tower.canonical(tmap.images[i]);
    if (q.level < 0) throw ContractError("extend_partial_morphism: image gap");
    out.depth_out = std::max(out.depth_out, q.level);
    out.table.push_back({p, q});
  }
  std::sort(out.table.begin(), out.table.end());

  // the truncation must be a morphism of the declared kind in the colimit
  if (f.kind != MorphismKind::Homomorphism) {
    std::set<TowerAddress> images;
    for (const auto& [p, q] : out.table) images.insert(tower.canonical(q));
    if (images.size() != out.table.size())
      throw ContractError("extend_partial_morphism: embedding-kind output not injective");
  }
  for (const auto& [p1, q1] : out.table)
    for (const auto& [p2, q2] : out.table) {
      const auto before = colimit_code(tower, p1, p2);
      const auto after = colimit_code(tower, q1, q2);
      bool ok = true;
      switch (tower.tag().kind) {
        case StructureKind::Graph:
        case StructureKind::KnFreeGraph:
          ok = f.kind == MorphismKind::Homomorphism ? (before != 1 || after == 1)
                                                    : before == after;
          break;
        case StructureKind::RationalMetric: {
          const int lvl1 = std::max(p1.level, p2.level);
          const int lvl2 = std::max(q1.level, q2.level);
          const auto d1 =
              tower.level(lvl1).dist[tower.level(lvl1).index_of(tower.resolve(p1, lvl1))]
                                    [tower.level(lvl1).index_of(tower.resolve(p2, lvl1))];
          const auto d2 =
              tower.level(lvl2).dist[tower.level(lvl2).index_of(tower.resolve(q1, lvl2))]
                                    [tower.level(lvl2).index_of(tower.resolve(q2, lvl2))];
          ok = f.kind == MorphismKind::Homomorphism ? !(d2 > d1) : d1 == d2;
          break;
        }
        default:
          // arc and order classes: preserved bits must survive
          if (f.kind == MorphismKind::Homomorphism) {
            const bool collapsed = tower.canonical(q1) == tower.canonical(q2);
            if (collapsed && is_order_like(tower.tag().kind))
              ok = true;  // monotone maps may pinch comparable pairs together
            else
              ok = ((before & 1) == 0 || (after & 1) == 1) &&
                   ((before & 2) == 0 || (after & 2) == 2);
          } else {
            ok = before == after;
          }
      }
      if (!ok) throw ContractError("extend_partial_morphism: output violates the morphism kind");
    }
  return out;
}

std::vector<EndoTruncation> embed_endomorphisms(TowerHandle& tower,
                                                const std::vector<Morphism>& endos, int depth) {
  require_pointed(tower, "embed_endomorphisms");
  tower.expand_to(depth);
  std::vector<EndoTruncation> out;
  for (const auto& g : endos) {
    if (const auto r = check_morphism(g); !r.ok)
      throw ContractError("embed_endomorphisms: invalid endomorphism: " + r.violation);
    std::vector<Morphism> family{g};
    for (int i = 0; i < depth; ++i)
      family.push_back(k_morphism_between(family.back(), tower.step(i), tower.step(i)));
    EndoTruncation e;
    e.depth_in = depth;
    e.depth_out = depth;
    for (const auto& p : all_canonical_addresses(tower, depth))
      e.table.push_back({p, tower.canonical({p.level, family[p.level].apply(p.id)})});
    std::sort(e.table.begin(), e.table.end());
    out.push_back(std::move(e));
  }
  return out;
}

EndoTruncation compose_truncations(TowerHandle& tower, const EndoTruncation& g,
                                   const EndoTruncation& f) {
  EndoTruncation out;
  out.depth_in = f.depth_in;
  for (const auto& [p, mid] : f.table) {
    const TowerAddress* q = g.image_of(tower.canonical(mid));
    if (!q) continue;  // beyond g's truncation
    out.depth_out = std::max(out.depth_out, q->level);
    out.table.push_back({p, *q});
  }
  std::sort(out.table.begin(), out.table.end());
  return out;
}

ContinuityReport continuity_probe(const Morphism& f, const std::vector<Morphism>& sequence,
                                  const std::vector<ElementId>& generating_subset) {
  if (f.source.tag.kind == StructureKind::BooleanAlgebra)
    throw ContractError("continuity_probe: pointed classes only");
  if (const auto r = check_morphism(f); !r.ok)
    throw ContractError("continuity_probe: invalid morphism: " + r.violation);
  for (const auto& g : sequence)
    if (const auto r = check_morphism(g); !r.ok)
      throw ContractError("continuity_probe: invalid sequence member: " + r.violation);
  const FiniteStructure a = induced_substructure(f.source, generating_subset);
  Morphism ja = identity_morphism(a);
  ja.target = f.source;
  ja.kind = MorphismKind::Embedding;
  const Morphism kja = k_morphism(ja);

  auto agrees_on_s = [&](const Morphism& g) {
    for (ElementId e : a.elements)
      if (g.apply(e) != f.apply(e)) return false;
    return true;
  };
  const Morphism k_f_restricted = compose(k_morphism(f), kja);
  auto k_agrees = [&](const Morphism& g) {
    return compose(k_morphism(g), kja).point_map == k_f_restricted.point_map;
  };

  ContinuityReport report;
  report.stabilization_index = -1;
  for (std::size_t n = 0; n < sequence.size(); ++n) {
    const bool base = agrees_on_s(sequence[n]);
    const bool lifted = k_agrees(sequence[n]);
    if (base != lifted) report.ok = false;
    if (base && report.stabilization_index < 0) {
      bool tail = true;
      for (std::size_t m = n; m < sequence.size(); ++m) tail = tail && agrees_on_s(sequence[m]);
      if (tail) report.stabilization_index = static_cast<int>(n);
    }
  }
  report.hypothesis_met = report.stabilization_index >= 0;
  return report;
}

}  // namespace katetov
