#include "katetov/tower.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <thread>

namespace katetov {

TowerHandle::TowerHandle(FiniteStructure seed, std::size_t level_budget)
    : seed_(std::move(seed)), budget_(level_budget) {
  const auto r = validate(seed_);
  if (!r.ok) throw ContractError("tower seed does not validate: " + r.violation);
}

TowerHandle TowerHandle::iterate(FiniteStructure seed, int depth, std::size_t level_budget) {
  TowerHandle t(std::move(seed), level_budget);
  t.expand_to(depth);
  return t;
}

void TowerHandle::expand_to(int depth) {
  while (frozen_depth() < depth) {
    const FiniteStructure& top = level(frozen_depth());
    KObjectResult next = k_object(top);
    if (next.object.size() > budget_)
      throw CapacityError("tower level " + std::to_string(frozen_depth() + 1) + " would hold " +
                          std::to_string(next.object.size()) + " elements, over the budget of " +
                          std::to_string(budget_));
    steps_.push_back(std::move(next));
  }
}

const FiniteStructure& TowerHandle::level(int i) const {
  if (i == 0) return seed_;
  return steps_.at(i - 1).object;
}

const Morphism& TowerHandle::link(int i) const { return steps_.at(i).eta; }

const std::vector<KElement>& TowerHandle::level_index(int i) const {
  return steps_.at(i - 1).index;
}

const KObjectResult& TowerHandle::step(int i) const { return steps_.at(i); }

Morphism TowerHandle::composed_link(int from, int to) const {
  Morphism m = identity_morphism(level(from));
  m.kind = MorphismKind::Embedding;
  for (int i = from; i < to; ++i) m = compose(link(i), m);
  return m;
}

ElementId TowerHandle::resolve(const TowerAddress& a, int target_level) {
  if (target_level < a.level) throw ContractError("resolve: target level above the address");
  expand_to(target_level);
  if (level(a.level).index_of(a.id) < 0) throw ContractError("resolve: unknown address");
  if (tag().kind == StructureKind::BooleanAlgebra)
    throw ContractError("resolve: Boolean tower atoms do not persist across levels");
  ElementId cur = a.id;
  for (int i = a.level; i < target_level; ++i) cur = link(i).apply(cur);
  return cur;
}

TowerAddress TowerHandle::canonical(const TowerAddress& a) const {
  TowerAddress cur = a;
  while (cur.level > 0) {
    const Morphism& up = link(cur.level - 1);
    bool found = false;
    for (const auto& [src, dst] : up.point_map)
      if (dst == cur.id) {
        cur = {cur.level - 1, src};
        found = true;
        break;
      }
    if (!found) break;
  }
  return cur;
}

std::vector<ElementId> TowerHandle::elements_at(const std::vector<TowerAddress>& addrs,
                                                int target_level) {
  std::vector<ElementId> out;
  out.reserve(addrs.size());
  for (const auto& a : addrs) out.push_back(resolve(a, target_level));
  return out;
}

Morphism invert_isomorphism(const Morphism& f) {
  Morphism inv;
  inv.source = f.target;
  inv.target = f.source;
  inv.kind = MorphismKind::Isomorphism;
  if (f.source.tag.kind == StructureKind::BooleanAlgebra) {
    for (const auto& [a, image] : f.atom_map) {
      if (image.size() != 1) throw ContractError("invert: not an atom bijection");
      inv.atom_map[image[0]] = {a};
    }
    return inv;
  }
  for (const auto& [a, b] : f.point_map) inv.point_map[b] = a;
  if (inv.point_map.size() != f.point_map.size()) throw ContractError("invert: not injective");
  return inv;
}

Morphism iterated_eta(const FiniteStructure& a, int n) {
  Morphism m = identity_morphism(a);
  m.kind = MorphismKind::Embedding;
  FiniteStructure cur = a;
  for (int i = 0; i < n; ++i) {
    KObjectResult k = k_object(cur);
    m = compose(k.eta, m);
    cur = std::move(k.object);
  }
  return m;
}

// ---------------------------------------------------------------------------
// absorb_extension

namespace {

bool is_surjective_embedding(const Morphism& g) {
  if (g.source.tag.kind == StructureKind::BooleanAlgebra) {
    std::size_t atoms = 0;
    for (const auto& [a, image] : g.atom_map) {
      if (image.size() != 1) return false;
      ++atoms;
    }
    return atoms == g.target.size();
  }
  return g.point_map.size() == g.target.size();
}

}  // namespace

std::pair<FiniteStructure, Morphism> relabel_over_base(const FiniteStructure& a,
                                                       const FiniteStructure& b,
                                                       const Morphism& g) {
  std::map<ElementId, ElementId> rename;
  for (const auto& [x, y] : g.point_map) rename[y] = x;
  ElementId next = a.elements.empty() ? 0 : a.elements.back() + 1;
  for (ElementId e : b.elements) next = std::max(next, e + 1);
  std::vector<ElementId> fresh_sources;
  for (ElementId e : b.elements)
    if (!rename.count(e)) fresh_sources.push_back(e);
  for (ElementId e : fresh_sources) rename[e] = next++;

  FiniteStructure bp;
  bp.tag = b.tag;
  for (ElementId e : b.elements) bp.elements.push_back(rename[e]);
  std::sort(bp.elements.begin(), bp.elements.end());
  for (const auto& [x, y] : b.pairs) {
    IdPair p{rename[x], rename[y]};
    if (is_graph_like(b.tag.kind) && p.first > p.second) std::swap(p.first, p.second);
    bp.pairs.insert(p);
  }
  if (b.tag.kind == StructureKind::RationalMetric) {
    const std::size_t m = b.size();
    bp.dist.assign(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        bp.dist[bp.index_of(rename[b.elements[i]])][bp.index_of(rename[b.elements[j]])] =
            b.dist[i][j];
  }
  Morphism r;
  r.source = b;
  r.target = bp;
  r.kind = MorphismKind::Isomorphism;
  for (ElementId e : b.elements) r.point_map[e] = rename[e];
  return {std::move(bp), std::move(r)};
}

std::vector<OnePointExtension> one_point_chain_over(const FiniteStructure& a,
                                                    const FiniteStructure& bp) {
  std::vector<OnePointExtension> chain;
  std::vector<ElementId> added;
  for (ElementId e : bp.elements)
    if (a.index_of(e) < 0) added.push_back(e);
  FiniteStructure cur = a;
  std::vector<ElementId> carrier = a.elements;
  for (ElementId e : added) {
    carrier.push_back(e);
    FiniteStructure next = induced_substructure(bp, carrier);
    OnePointExtension step;
    step.base = cur;
    step.extension = next;
    step.inclusion = identity_morphism(cur);
    step.inclusion.target = next;
    step.inclusion.kind = MorphismKind::Embedding;
    step.new_element = e;
    chain.push_back(step);
    cur = std::move(next);
  }
  return chain;
}

namespace {

// Boolean chain: refine the g-image subalgebra of B one generator atom at
// a time. Block labels: the base atom whose image contains the block's
// minimum, then fresh labels for split-off halves.
struct BooleanChain {
  std::vector<OnePointExtension> steps;
  Morphism final_iso;  // B -> last chain algebra
};

BooleanChain boolean_chain(const FiniteStructure& a, const FiniteStructure& b, const Morphism& g) {
  const std::size_t nb = b.size();
  if (nb > 63) throw CapacityError("boolean chain: too many atoms");
  // current partition of B's atoms, with labels; starts at the g-image
  std::vector<std::pair<std::uint64_t, ElementId>> blocks;  // (bitmask over b atoms, label)
  for (ElementId atom : a.elements) {
    std::uint64_t mask = 0;
    for (ElementId t : g.apply_atoms(atom)) mask |= std::uint64_t(1) << b.index_of(t);
    blocks.push_back({mask, atom});
  }
  ElementId fresh = a.elements.back() + 1;
  for (ElementId e : b.elements) fresh = std::max(fresh, e + 1);

  auto make_algebra = [&](const std::vector<std::pair<std::uint64_t, ElementId>>& bs) {
    std::vector<ElementId> atoms;
    for (const auto& [mask, label] : bs) atoms.push_back(label);
    return make_boolean_algebra(atoms);
  };

  BooleanChain out;
  FiniteStructure cur = make_algebra(blocks);
  for (std::size_t gi = 0; gi < nb; ++gi) {
    const std::uint64_t x = std::uint64_t(1) << gi;  // next generator: one atom of B
    std::vector<std::pair<std::uint64_t, ElementId>> next_blocks;
    Morphism incl;
    incl.kind = MorphismKind::Embedding;
    bool split_any = false;
    std::vector<std::uint64_t> lower_halves;
    for (const auto& [mask, label] : blocks) {
      const std::uint64_t inside = mask & x, outside = mask & ~x;
      if (inside && outside) {
        split_any = true;
        const ElementId other = fresh++;
        next_blocks.push_back({inside, label});
        next_blocks.push_back({outside, other});
        incl.atom_map[label] = {label, other};
        lower_halves.push_back(inside);
      } else {
        next_blocks.push_back({mask, label});
        incl.atom_map[label] = {label};
      }
    }
    if (!split_any) continue;
    OnePointExtension step;
    step.base = cur;
    step.extension = make_algebra(next_blocks);
    incl.source = cur;
    incl.target = step.extension;
    step.inclusion = std::move(incl);
    for (const auto& [mask, label] : next_blocks)
      for (const auto& half : lower_halves)
        if (mask == half) step.new_carrier |= std::uint64_t(1) << step.extension.index_of(label);
    out.steps.push_back(step);
    blocks = std::move(next_blocks);
    cur = out.steps.back().extension;
  }
  // now every block is a singleton; B -> final algebra maps atom to label
  Morphism iso;
  iso.source = b;
  iso.target = cur;
  iso.kind = MorphismKind::Isomorphism;
  for (const auto& [mask, label] : blocks) {
    int pos = 0;
    while (!(mask >> pos & 1)) ++pos;
    iso.atom_map[b.elements[pos]] = {label};
  }
  out.final_iso = std::move(iso);
  return out;
}

Morphism iterate_k(Morphism f, int times) {
  for (int i = 0; i < times; ++i) f = k_morphism(f);
  return f;
}

}  // namespace

AbsorbResult absorb_extension(const FiniteStructure& a, const FiniteStructure& b,
                              const Morphism& g) {
  if (g.kind == MorphismKind::Homomorphism)
    throw ContractError("absorb_extension: g must be an embedding");
  if (const auto r = check_morphism(g); !r.ok)
    throw ContractError("absorb_extension: g invalid: " + r.violation);

  if (is_surjective_embedding(g)) {
    Morphism inv = invert_isomorphism(g);
    const KObjectResult k = k_object(a);
    return {1, compose(k.eta, inv)};
  }

  std::vector<OnePointExtension> chain;
  Morphism relabel;
  if (a.tag.kind == StructureKind::BooleanAlgebra) {
    BooleanChain bc = boolean_chain(a, b, g);
    chain = std::move(bc.steps);
    relabel = std::move(bc.final_iso);
  } else {
    auto [bp, r] = relabel_over_base(a, b, g);
    chain = one_point_chain_over(a, bp);
    relabel = std::move(r);
  }
  const int n = static_cast<int>(chain.size());
  // h = K^{n-1}(f_1) o ... o K(f_{n-1}) o f_n over the relabeled chain
  Morphism h = resolve_extension(chain.back());
  for (int i = n - 2; i >= 0; --i) h = compose(iterate_k(resolve_extension(chain[i]), n - 1 - i), h);
  return {n, compose(h, relabel)};
}

// ---------------------------------------------------------------------------
// level substructures and the extension-property verifier

namespace {

void subsets_of_size_at_most(std::size_t n, int bound,
                             const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> pick;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    visit(pick);
    if (static_cast<int>(pick.size()) == bound) return;
    for (std::size_t i = start; i < n; ++i) {
      pick.push_back(static_cast<int>(i));
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
}

// partitions of {0..n-1} into at most `bound` blocks
void partitions_up_to(std::size_t n, int bound,
                      const std::function<void(const std::vector<std::uint64_t>&)>& visit) {
  std::vector<std::uint64_t> blocks;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      visit(blocks);
      return;
    }
    for (auto& block : blocks) {
      block |= std::uint64_t(1) << i;
      self(self, i + 1);
      block &= ~(std::uint64_t(1) << i);
    }
    if (static_cast<int>(blocks.size()) < bound) {
      blocks.push_back(std::uint64_t(1) << i);
      self(self, i + 1);
      blocks.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<LevelSubstructure> level_substructures(TowerHandle& tower, int depth, int size_bound) {
  tower.expand_to(depth);
  const FiniteStructure& lvl = tower.level(depth);
  std::vector<LevelSubstructure> out;

  if (tower.tag().kind == StructureKind::BooleanAlgebra) {
    if (lvl.size() > 16) throw CapacityError("substructure enumeration: too many atoms");
    partitions_up_to(lvl.size(), size_bound, [&](const std::vector<std::uint64_t>& blocks) {
      if (blocks.empty()) return;
      LevelSubstructure sub;
      // block labels: position of the minimum atom, as the level's atom id
      std::vector<std::pair<std::uint64_t, ElementId>> labeled;
      for (const auto& b : blocks) {
        int pos = 0;
        while (!(b >> pos & 1)) ++pos;
        labeled.push_back({b, lvl.elements[pos]});
      }
      std::sort(labeled.begin(), labeled.end(),
                [](const auto& x, const auto& y) { return x.second < y.second; });
      std::vector<ElementId> atoms;
      for (const auto& [mask, label] : labeled) atoms.push_back(label);
      sub.structure = make_boolean_algebra(atoms);
      Morphism j;
      j.source = sub.structure;
      j.target = lvl;
      j.kind = MorphismKind::Embedding;
      for (const auto& [mask, label] : labeled) {
        std::vector<ElementId> image;
        for (std::size_t i = 0; i < lvl.size(); ++i)
          if (mask >> i & 1) image.push_back(lvl.elements[i]);
        j.atom_map[label] = image;
        sub.addresses.push_back({depth, label});
      }
      sub.embedding = std::move(j);
      out.push_back(std::move(sub));
    });
    return out;
  }

  subsets_of_size_at_most(lvl.size(), size_bound, [&](const std::vector<int>& pick) {
    LevelSubstructure sub;
    std::vector<ElementId> subset;
    for (int p : pick) subset.push_back(lvl.elements[p]);
    sub.structure = induced_substructure(lvl, subset);
    sub.embedding = identity_morphism(sub.structure);
    sub.embedding.target = lvl;
    sub.embedding.kind = MorphismKind::Embedding;
    for (ElementId e : subset) sub.addresses.push_back({depth, e});
    out.push_back(std::move(sub));
  });
  return out;
}

namespace {

bool witness_triangle_commutes(const LevelSubstructure& sub, const OnePointExtension& e,
                               const Morphism& witness, const Morphism& link) {
  if (sub.structure.tag.kind == StructureKind::BooleanAlgebra) {
    for (ElementId a : sub.structure.elements) {
      std::vector<ElementId> via_ext;
      for (ElementId part : e.inclusion.apply_atoms(a)) {
        const auto& img = witness.apply_atoms(part);
        via_ext.insert(via_ext.end(), img.begin(), img.end());
      }
      std::sort(via_ext.begin(), via_ext.end());
      std::vector<ElementId> via_link;
      for (ElementId t : sub.embedding.apply_atoms(a)) {
        const auto& img = link.apply_atoms(t);
        via_link.insert(via_link.end(), img.begin(), img.end());
      }
      std::sort(via_link.begin(), via_link.end());
      if (via_ext != via_link) return false;
    }
    return true;
  }
  for (ElementId a : sub.structure.elements)
    if (witness.apply(e.inclusion.apply(a)) != link.apply(sub.embedding.apply(a))) return false;
  return true;
}

}  // namespace

EpReport verify_extension_property(TowerHandle& tower, int base_depth, int size_bound, int jobs) {
  tower.expand_to(base_depth + 1);
  const auto subs = level_substructures(tower, base_depth, size_bound);
  const Morphism& up = tower.link(base_depth);

  EpReport report;
  std::mutex mu;
  std::atomic<bool> failed{false};

  auto process = [&](const LevelSubstructure& sub) {
    if (failed.load()) return;
    const Morphism kj = k_morphism(sub.embedding);  // K(A) -> level base_depth+1
    for (const auto& e : enumerate_one_point_extensions(sub.structure)) {
      if (failed.load()) return;
      const Morphism w0 = resolve_extension(e);
      Morphism witness = compose(kj, w0);
      witness.kind = MorphismKind::Embedding;
      const auto valid = check_morphism(witness);
      const bool commutes = witness_triangle_commutes(sub, e, witness, up);
      std::lock_guard<std::mutex> lock(mu);
      if (!valid.ok || !commutes) {
        failed.store(true);
        report.ok = false;
        report.counterexample = EpCounterexample{
            sub.addresses, e, valid.ok ? "triangle does not commute" : valid.violation};
        return;
      }
      report.certificates.push_back(
          ExtensionCertificate{sub.addresses, e, base_depth + 1, std::move(witness)});
    }
  };

  if (jobs <= 1) {
    for (const auto& sub : subs) {
      process(sub);
      if (failed.load()) break;
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int workers = std::min<int>(jobs, static_cast<int>(subs.size()));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < subs.size(); i = next.fetch_add(1))
          process(subs[i]);
      });
    for (auto& th : pool) th.join();
    // deterministic order regardless of scheduling
    std::sort(report.certificates.begin(), report.certificates.end(),
              [](const ExtensionCertificate& a, const ExtensionCertificate& b) {
                return std::tie(a.base, a.extension.extension.pairs, a.witness.point_map,
                                a.witness.atom_map) <
                       std::tie(b.base, b.extension.extension.pairs, b.witness.point_map,
                                b.witness.atom_map);
              });
  }
  return report;
}

}  // namespace katetov
