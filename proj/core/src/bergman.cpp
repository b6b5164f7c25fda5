#include "katetov/bergman.hpp"

#include <algorithm>

namespace katetov {

namespace {

bool pairing_supported(StructureKind kind) {
  return kind == StructureKind::Graph || kind == StructureKind::Digraph ||
         kind == StructureKind::Poset || kind == StructureKind::RationalMetric;
}

bool same_carrier(const FiniteStructure& a, const FiniteStructure& b) {
  return a.tag == b.tag && a.elements == b.elements && a.pairs == b.pairs && a.dist == b.dist;
}

}  // namespace

JepResult jep(const FiniteStructure& c, const FiniteStructure& d) {
  if (!pairing_supported(c.tag.kind) || !(c.tag == d.tag))
    throw ContractError("jep: no retractive natural pairing for this class here");

  JepResult out;
  out.object.tag = c.tag;
  out.object.elements = c.elements;
  out.object.pairs = c.pairs;
  std::map<ElementId, ElementId> right_ids;
  ElementId next = fresh_element_id(c);
  for (ElementId e : d.elements) next = std::max(next, e + 1);
  for (ElementId e : d.elements) {
    right_ids[e] = next++;
    out.object.elements.push_back(right_ids[e]);
  }
  std::sort(out.object.elements.begin(), out.object.elements.end());
  for (const auto& [x, y] : d.pairs) {
    IdPair p{right_ids[x], right_ids[y]};
    if (is_graph_like(c.tag.kind) && p.first > p.second) std::swap(p.first, p.second);
    out.object.pairs.insert(p);
  }
  if (c.tag.kind == StructureKind::RationalMetric) {
    // disjoint join, cross distance 1 (the sphere diameter)
    const std::size_t nc = c.size(), nd = d.size(), m = nc + nd;
    out.object.dist.assign(m, std::vector<Rational>(m, Rational(1)));
    for (std::size_t i = 0; i < m; ++i) out.object.dist[i][i] = Rational(0);
    auto pos = [&](ElementId e) { return out.object.index_of(e); };
    for (std::size_t i = 0; i < nc; ++i)
      for (std::size_t j = 0; j < nc; ++j)
        out.object.dist[pos(c.elements[i])][pos(c.elements[j])] = c.dist[i][j];
    for (std::size_t i = 0; i < nd; ++i)
      for (std::size_t j = 0; j < nd; ++j)
        out.object.dist[pos(right_ids[d.elements[i]])][pos(right_ids[d.elements[j]])] =
            d.dist[i][j];
  }

  out.left = identity_morphism(c);
  out.left.target = out.object;
  out.left.kind = MorphismKind::Embedding;
  out.right.source = d;
  out.right.target = out.object;
  out.right.kind = MorphismKind::Embedding;
  for (ElementId e : d.elements) out.right.point_map[e] = right_ids[e];
  for (ElementId e : c.elements) out.origin[e] = {0, e};
  for (ElementId e : d.elements) out.origin[right_ids[e]] = {1, e};

  if (same_carrier(c, d)) {
    // the codiagonal folds both copies back and retracts both insertions
    Morphism fold;
    fold.source = out.object;
    fold.target = c;
    fold.kind = MorphismKind::Homomorphism;
    for (const auto& [e, pre] : out.origin) fold.point_map[e] = pre.second;
    out.left_retract = fold;
    out.right_retract = std::move(fold);
  }
  return out;
}

Morphism jep_map(const JepResult& src, const JepResult& dst, const Morphism& f,
                 const Morphism& g) {
  Morphism out;
  out.source = src.object;
  out.target = dst.object;
  out.kind = f.kind == MorphismKind::Homomorphism || g.kind == MorphismKind::Homomorphism
                 ? MorphismKind::Homomorphism
                 : MorphismKind::Embedding;
  for (const auto& [e, pre] : src.origin)
    out.point_map[e] =
        pre.first == 0 ? dst.left.apply(f.apply(pre.second)) : dst.right.apply(g.apply(pre.second));
  return out;
}

BooleanProduct boolean_product(const FiniteStructure& c, const FiniteStructure& d) {
  if (c.tag.kind != StructureKind::BooleanAlgebra || d.tag.kind != StructureKind::BooleanAlgebra)
    throw ContractError("boolean_product: Boolean algebras only");
  const std::size_t nc = c.size(), nd = d.size();
  if (nc + nd > 16) throw CapacityError("boolean_product: too many atoms for carrier tables");

  BooleanProduct out;
  std::vector<ElementId> atoms = c.elements;
  ElementId next = fresh_element_id(c);
  for (ElementId e : d.elements) next = std::max(next, e + 1);
  std::map<ElementId, ElementId> right_ids;
  for (ElementId e : d.elements) {
    right_ids[e] = next++;
    atoms.push_back(right_ids[e]);
  }
  out.object = make_boolean_algebra(atoms);

  auto left_bit = [&](std::size_t i) {
    return std::uint64_t(1) << out.object.index_of(c.elements[i]);
  };
  auto right_bit = [&](std::size_t i) {
    return std::uint64_t(1) << out.object.index_of(right_ids[d.elements[i]]);
  };
  std::uint64_t all_left = 0, all_right = 0;
  for (std::size_t i = 0; i < nc; ++i) all_left |= left_bit(i);
  for (std::size_t i = 0; i < nd; ++i) all_right |= right_bit(i);

  out.left_insert.resize(std::size_t(1) << nc);
  for (std::uint64_t x = 0; x < (std::uint64_t(1) << nc); ++x) {
    std::uint64_t img = all_right;  // (x, 1)
    for (std::size_t i = 0; i < nc; ++i)
      if (x >> i & 1) img |= left_bit(i);
    out.left_insert[x] = img;
  }
  out.right_insert.resize(std::size_t(1) << nd);
  for (std::uint64_t y = 0; y < (std::uint64_t(1) << nd); ++y) {
    std::uint64_t img = all_left;  // (1, y)
    for (std::size_t i = 0; i < nd; ++i)
      if (y >> i & 1) img |= right_bit(i);
    out.right_insert[y] = img;
  }
  const std::size_t total = nc + nd;
  out.left_project.resize(std::size_t(1) << total);
  out.right_project.resize(std::size_t(1) << total);
  for (std::uint64_t z = 0; z < (std::uint64_t(1) << total); ++z) {
    std::uint64_t lp = 0, rp = 0;
    for (std::size_t i = 0; i < nc; ++i)
      if (z & left_bit(i)) lp |= std::uint64_t(1) << i;
    for (std::size_t i = 0; i < nd; ++i)
      if (z & right_bit(i)) rp |= std::uint64_t(1) << i;
    out.left_project[z] = lp;
    out.right_project[z] = rp;
  }
  return out;
}

Morphism boolean_product_map(const BooleanProduct& src, const BooleanProduct& dst,
                             const Morphism& f, const Morphism& g) {
  Morphism out;
  out.source = src.object;
  out.target = dst.object;
  out.kind = f.kind == MorphismKind::Homomorphism || g.kind == MorphismKind::Homomorphism
                 ? MorphismKind::Homomorphism
                 : MorphismKind::Embedding;
  const std::size_t nc = f.source.size();
  for (std::size_t i = 0; i < src.object.size(); ++i) {
    const ElementId atom = src.object.elements[i];
    std::vector<ElementId> image;
    if (i < nc) {  // a left atom
      for (ElementId t : f.apply_atoms(f.source.elements[i]))
        image.push_back(dst.object.elements[f.target.index_of(t)]);
    } else {  // a right atom
      const std::size_t j = i - nc;
      for (ElementId t : g.apply_atoms(g.source.elements[j]))
        image.push_back(
            dst.object.elements[f.target.size() + static_cast<std::size_t>(g.target.index_of(t))]);
    }
    std::sort(image.begin(), image.end());
    out.atom_map[atom] = std::move(image);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The chain of iterated pairs.

ChainHandle::ChainHandle(FiniteStructure truncation, int depth) : base_(std::move(truncation)) {
  if (!pairing_supported(base_.tag.kind))
    throw ContractError("chain: class without a retractive natural pairing");
  if (const auto r = validate(base_); !r.ok)
    throw ContractError("chain: truncation does not validate: " + r.violation);
  if (depth < 1) throw ContractError("chain: depth must be at least 1");
  levels_.push_back(base_);
  decode_.emplace_back();
  for (ElementId e : base_.elements) decode_.back()[e] = {1, e};
  for (int n = 1; n < depth; ++n) {
    pairings_.push_back(jep(levels_.back(), base_));
    const JepResult& pr = pairings_.back();
    levels_.push_back(pr.object);
    decode_.emplace_back();
    for (const auto& [e, pre] : pr.origin) {
      if (pre.first == 0)
        decode_.back()[e] = decode_[n - 1].at(pre.second);
      else
        decode_.back()[e] = {n + 1, pre.second};
    }
  }
}

const FiniteStructure& ChainHandle::level(int n) const { return levels_.at(n - 1); }
const JepResult& ChainHandle::pairing(int n) const { return pairings_.at(n - 1); }
const Morphism& ChainHandle::lambda(int n) const { return pairings_.at(n - 1).left; }

std::pair<int, ElementId> ChainHandle::decode(int n, ElementId e) const {
  return decode_.at(n - 1).at(e);
}

ElementId ChainHandle::encode(int n, int copy, ElementId base) const {
  for (const auto& [e, pre] : decode_.at(n - 1))
    if (pre.first == copy && pre.second == base) return e;
  throw ContractError("chain: no such copy element");
}

Morphism shift_map(const ChainHandle& chain, int n) {
  if (n + 1 > chain.depth()) throw CapacityError("shift_map: chain depth exceeded");
  if (n == 1) return chain.pairing(1).right;
  return jep_map(chain.pairing(n - 1), chain.pairing(n), shift_map(chain, n - 1),
                 identity_morphism(chain.base()));
}

Morphism fold_map(const ChainHandle& chain, int n) {
  if (n + 1 > chain.depth()) throw CapacityError("fold_map: chain depth exceeded");
  if (n == 1) return *chain.pairing(1).right_retract;
  return jep_map(chain.pairing(n), chain.pairing(n - 1), fold_map(chain, n - 1),
                 identity_morphism(chain.base()));
}

Morphism tuple_map(const ChainHandle& chain, const std::vector<Morphism>& fs, int n) {
  if (n > chain.depth()) throw CapacityError("tuple_map: chain depth exceeded");
  if (static_cast<int>(fs.size()) < n)
    throw ContractError("tuple_map: endomorphism sequence shorter than the depth");
  if (n == 1) return fs[0];
  return jep_map(chain.pairing(n - 1), chain.pairing(n - 1), tuple_map(chain, fs, n - 1),
                 fs[n - 1]);
}

Morphism beta_cone(const ChainHandle& chain, int n) {
  if (n > chain.depth()) throw CapacityError("beta_cone: chain depth exceeded");
  if (n == 1) return identity_morphism(chain.base());
  // c_{n} = fold o F(c_{n-1}, id)
  const Morphism spread =
      jep_map(chain.pairing(n - 1), chain.pairing(1), beta_cone(chain, n - 1),
              identity_morphism(chain.base()));
  return compose(*chain.pairing(1).left_retract, spread);
}

ChainPoint sigma_point(const ChainHandle& chain, const ChainPoint& p) {
  return {p.level + 1, shift_map(chain, p.level).apply(p.id)};
}

ChainPoint tau_point(const ChainHandle& chain, const ChainPoint& p) {
  if (p.level == 1) return p;  // tau fixes the first copy
  return {p.level - 1, fold_map(chain, p.level - 1).apply(p.id)};
}

ChainPoint phi_point(const ChainHandle& chain, const std::vector<Morphism>& fs,
                     const ChainPoint& p) {
  return {p.level, tuple_map(chain, fs, p.level).apply(p.id)};
}

ElementId beta_point(const ChainHandle& chain, const ChainPoint& p) {
  return beta_cone(chain, p.level).apply(p.id);
}

DistortionReport verify_distortion(const ChainHandle& chain, const std::vector<Morphism>& fs,
                                   int n_max) {
  DistortionReport report;
  if (static_cast<int>(fs.size()) < n_max + 1)
    throw ContractError("verify_distortion: sequence shorter than n_max + 1");
  if (chain.depth() < n_max + 1)
    throw CapacityError("verify_distortion: chain depth below n_max + 1");
  for (const auto& f : fs) {
    if (f.source.elements != chain.base().elements ||
        f.target.elements != chain.base().elements)
      throw ContractError("verify_distortion: sequence members must be endomorphisms of the base");
    if (const auto r = check_morphism(f); !r.ok)
      throw ContractError("verify_distortion: invalid endomorphism: " + r.violation);
  }
  for (ElementId x : chain.base().elements) {
    const ChainPoint start{1, x};
    {
      const ChainPoint lhs = phi_point(chain, fs, start);
      ++report.first_identity_checks;
      if (beta_point(chain, lhs) != fs[0].apply(x)) {
        report.ok = false;
        report.mismatches.push_back("first identity fails at element " + std::to_string(x));
      }
    }
    for (int n = 1; n <= n_max; ++n) {
      ChainPoint p = start;
      for (int i = 0; i < n; ++i) p = sigma_point(chain, p);
      p = phi_point(chain, fs, p);
      for (int i = 0; i < n; ++i) p = tau_point(chain, p);
      ++report.shifted_identity_checks;
      if (beta_point(chain, p) != fs[n].apply(x)) {
        report.ok = false;
        report.mismatches.push_back("shifted identity fails at element " + std::to_string(x) +
                                    " for n = " + std::to_string(n));
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Words over the five generators.

GeneratorWord encode_word(int n) {
  if (n < 1) throw ContractError("encode_word: n must be positive");
  GeneratorWord w;
  w.n = n;
  w.letters.push_back(Generator::Beta);
  for (int i = 0; i < n - 1; ++i) w.letters.push_back(Generator::Tau);
  w.letters.push_back(Generator::Phi);
  for (int i = 0; i < n - 1; ++i) w.letters.push_back(Generator::Sigma);
  w.letters.push_back(Generator::Alpha);
  return w;
}

namespace {

bool colimit_adjacent(TowerHandle& t, const TowerAddress& a, const TowerAddress& b) {
  const int lvl = std::max(a.level, b.level);
  return t.level(lvl).adjacent(t.resolve(a, lvl), t.resolve(b, lvl));
}

}  // namespace

LevelRetraction graph_retraction(TowerHandle& tower, int level) {
  if (tower.tag().kind != StructureKind::Graph)
    throw ContractError("graph_retraction: graph towers only");
  tower.expand_to(level + 1);
  LevelRetraction r;
  r.level = level;
  const auto& idx = tower.level_index(level + 1);
  const FiniteStructure& up = tower.level(level + 1);
  // candidate witnesses in canonical order
  std::vector<TowerAddress> candidates;
  for (int lvl = 0; lvl <= level + 1; ++lvl)
    for (ElementId e : tower.level(lvl).elements)
      if (tower.canonical({lvl, e}) == TowerAddress{lvl, e}) candidates.push_back({lvl, e});
  for (std::size_t i = 0; i < up.size(); ++i) {
    const ElementId e = up.elements[i];
    if (const auto* old = std::get_if<OldPayload>(&idx[i])) {
      r.map[e] = tower.canonical({level, old->id});
      continue;
    }
    const auto& payload = std::get<SetPayload>(idx[i]);
    bool found = false;
    for (const auto& cand : candidates) {
      bool fits = true;
      for (ElementId s : payload.members)
        if (!colimit_adjacent(tower, cand, {level, s})) {
          fits = false;
          break;
        }
      if (fits) {
        r.map[e] = cand;
        found = true;
        break;
      }
    }
    if (!found)
      throw CapacityError("graph_retraction: no witness within the expanded truncation");
  }
  return r;
}

WordEvaluation evaluate_word(const FiniteStructure& truncation, const std::vector<Morphism>& fs,
                             int n, int chain_depth) {
  if (truncation.tag.kind != StructureKind::Graph)
    throw ContractError("evaluate_word: graph truncations only");
  if (n < 1 || chain_depth < n + 1)
    throw ContractError("evaluate_word: need chain depth at least n + 1");
  if (static_cast<int>(fs.size()) < chain_depth)
    throw ContractError("evaluate_word: endomorphism sequence shorter than the chain depth");
  for (const auto& f : fs) {
    if (f.source.elements != truncation.elements || f.target.elements != truncation.elements)
      throw ContractError("evaluate_word: sequence members must be endomorphisms of the truncation");
    if (const auto r = check_morphism(f); !r.ok)
      throw ContractError("evaluate_word: invalid endomorphism: " + r.violation);
  }

  WordEvaluation out;
  ChainHandle chain(truncation, chain_depth);
  const GeneratorWord word = encode_word(n);

  // the word, evaluated right to left on the insertion of each base point
  for (ElementId x : truncation.elements) {
    std::optional<ChainPoint> p;     // running chain point
    std::optional<ElementId> value;  // after beta folds back to the base
    for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
      switch (*it) {
        case Generator::Alpha: p = ChainPoint{1, x}; break;
        case Generator::Sigma: p = sigma_point(chain, *p); break;
        case Generator::Phi: p = phi_point(chain, fs, *p); break;
        case Generator::Tau: p = tau_point(chain, *p); break;
        case Generator::Beta: value = beta_point(chain, *p); break;
      }
    }
    ++out.points_checked;
    if (!value || *value != fs[n - 1].apply(x)) {
      out.ok = false;
      out.mismatches.push_back("word for f_" + std::to_string(n) +
                               " disagrees at element " + std::to_string(x));
    }
  }

  // depth-1 consistency of the lifted generators: the naturality squares
  // eta o m = K(m) o eta for the total chain endomorphisms involved, and
  // the retraction pipeline backing the beta lift
  const int top = chain.depth();
  TowerHandle chain_tower(chain.level(top));
  chain_tower.expand_to(1);
  const Morphism& eta_top = chain_tower.link(0);

  auto check_square = [&](const Morphism& m, const std::string& name) {
    const Morphism lifted = k_morphism_between(m, chain_tower.step(0), chain_tower.step(0));
    const Morphism lhs = compose(eta_top, m);
    const Morphism rhs = compose(lifted, eta_top);
    ++out.points_checked;
    if (lhs.point_map != rhs.point_map) {
      out.ok = false;
      out.mismatches.push_back("naturality square fails for " + name);
    }
  };
  check_square(tuple_map(chain, fs, top), "the copy-wise action");
  check_square(compose(chain.lambda(top - 1), fold_map(chain, top - 1)), "the fold-and-include");

  TowerHandle base_tower(truncation);
  base_tower.expand_to(1);
  const Morphism beta0 = beta_cone(chain, top);
  const Morphism k_beta0 =
      k_morphism_between(beta0, chain_tower.step(0), base_tower.step(0));
  const LevelRetraction r = graph_retraction(base_tower, 0);
  // r o eta = id on the base level
  for (ElementId x : truncation.elements) {
    ++out.points_checked;
    if (r.map.at(base_tower.link(0).apply(x)) != TowerAddress{0, x}) {
      out.ok = false;
      out.mismatches.push_back("retraction does not fix the eta image of " + std::to_string(x));
    }
  }
  // beta_1 = r o K(beta_0) extends beta_0 through eta
  for (ElementId e : chain.level(top).elements) {
    const TowerAddress lifted = r.map.at(k_beta0.apply(eta_top.apply(e)));
    ++out.points_checked;
    if (lifted != TowerAddress{0, beta0.apply(e)}) {
      out.ok = false;
      out.mismatches.push_back("beta lift disagrees with beta at chain element " +
                               std::to_string(e));
    }
  }
  out.depth_used = 1;
  return out;
}

}  // namespace katetov
