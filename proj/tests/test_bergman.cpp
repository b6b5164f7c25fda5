#include <doctest.h>

#include <random>

#include "katetov/bergman.hpp"
#include "support/oracle.hpp"

using namespace katetov;

namespace {

const FiniteStructure kPath3 = make_graph({0, 1, 2}, {{0, 1}, {1, 2}});

Morphism graph_endo(const FiniteStructure& g, std::map<ElementId, ElementId> m) {
  Morphism f;
  f.source = g;
  f.target = g;
  f.kind = MorphismKind::Homomorphism;
  f.point_map = std::move(m);
  return f;
}

std::vector<Morphism> random_endos(const FiniteStructure& g, std::size_t count, unsigned seed) {
  const auto all = oracle::all_morphisms(g, g, MorphismKind::Homomorphism);
  std::mt19937 rng(seed);
  std::vector<Morphism> out;
  while (out.size() < count) out.push_back(all[rng() % all.size()]);
  return out;
}

}  // namespace

TEST_CASE("pairing of two single vertices is the 2-vertex coproduct") {
  const auto k1 = make_graph({0}, {});
  const auto f = jep(k1, k1);
  CHECK(f.object.size() == 2);
  CHECK(f.object.pairs.empty());
  CHECK(check_morphism(f.left).ok);
  CHECK(check_morphism(f.right).ok);
  REQUIRE(f.left_retract.has_value());
  REQUIRE(f.right_retract.has_value());
  // retraction identities
  CHECK(oracle::same_map(compose(*f.left_retract, f.left), identity_morphism(k1)));
  CHECK(oracle::same_map(compose(*f.right_retract, f.right), identity_morphism(k1)));
}

TEST_CASE("metric pairing joins at distance one") {
  const auto pt = make_metric(2, {0}, {{Rational(0)}});
  const auto f = jep(pt, pt);
  CHECK(f.object.size() == 2);
  CHECK(f.object.distance(f.left.apply(0), f.right.apply(0)) == Rational(1));
  CHECK(check_morphism(*f.left_retract).ok);  // folding is nonexpansive on the sphere
}

TEST_CASE("retraction identities hold for every coproduct class") {
  const std::vector<FiniteStructure> cs = {
      make_graph({0, 1}, {{0, 1}}),
      make_digraph({0, 1}, {{0, 1}}),
      make_poset({0, 1}, {{0, 1}}),
  };
  for (const auto& c : cs) {
    const auto f = jep(c, c);
    CHECK(validate(f.object).ok);
    CHECK(oracle::same_map(compose(*f.left_retract, f.left), identity_morphism(c)));
    CHECK(oracle::same_map(compose(*f.right_retract, f.right), identity_morphism(c)));
  }
  CHECK_THROWS_AS(jep(make_chain({0, 1}), make_chain({0, 1})), ContractError);
}

TEST_CASE("Boolean product carries unit insertions with projections") {
  const auto b1 = make_boolean_algebra({0});
  const auto prod = boolean_product(b1, b1);
  CHECK(prod.object.size() == 2);
  // lambda : c -> (c, 1): the atom goes to the top, zero to the right unit
  CHECK(prod.left_insert[1] == 0b11);
  CHECK(prod.left_insert[0] == 0b10);
  CHECK(prod.right_insert[1] == 0b11);
  CHECK(prod.right_insert[0] == 0b01);
  for (std::uint64_t x = 0; x < 2; ++x) {
    CHECK(prod.left_project[prod.left_insert[x]] == x);
    CHECK(prod.right_project[prod.right_insert[x]] == x);
  }
}

TEST_CASE("Boolean product map is a Boolean homomorphism and bifunctorial") {
  const auto b1 = make_boolean_algebra({0});
  const auto b2 = make_boolean_algebra({0, 1});
  const auto p11 = boolean_product(b1, b1);
  const auto p22 = boolean_product(b2, b2);
  for (const auto& f : oracle::all_morphisms(b1, b2, MorphismKind::Homomorphism))
    for (const auto& g : oracle::all_morphisms(b1, b2, MorphismKind::Homomorphism)) {
      const auto ff = boolean_product_map(p11, p22, f, g);
      CHECK(check_morphism(ff).ok);
    }
}

TEST_CASE("pairing is bifunctorial on graph morphism pairs") {
  const auto pool = oracle::all_structures({StructureKind::Graph, 0}, 2);
  for (const auto& a : pool)
    for (const auto& b : pool) {
      const auto fab = oracle::all_morphisms(a, b, MorphismKind::Homomorphism);
      for (const auto& f1 : fab)
        for (const auto& f2 : fab)
          for (const auto& g1 : oracle::all_morphisms(b, a, MorphismKind::Homomorphism))
            for (const auto& g2 : oracle::all_morphisms(b, a, MorphismKind::Homomorphism)) {
              const auto src = jep(a, a);
              const auto mid = jep(b, b);
              const auto dst = jep(a, a);
              const auto lhs = jep_map(src, dst, compose(g1, f1), compose(g2, f2));
              const auto rhs =
                  compose(jep_map(mid, dst, g1, g2), jep_map(src, mid, f1, f2));
              CHECK(oracle::same_map(lhs, rhs));
            }
    }
}

TEST_CASE("chain levels grow by one truncation copy per step") {
  ChainHandle chain(kPath3, 3);
  CHECK(chain.level(1).size() == 3);
  CHECK(chain.level(2).size() == 6);
  CHECK(chain.level(3).size() == 9);
  // no cross edges between copies
  for (int n = 2; n <= 3; ++n) {
    for (const auto& [x, y] : chain.level(n).pairs)
      CHECK(chain.decode(n, x).first == chain.decode(n, y).first);
    CHECK(validate(chain.level(n)).ok);
    CHECK(check_morphism(chain.lambda(n - 1)).ok);
  }
}

TEST_CASE("sigma shifts copies up") {
  ChainHandle chain(kPath3, 3);
  for (ElementId v : kPath3.elements) {
    const auto s1 = sigma_point(chain, {1, v});
    CHECK(s1.level == 2);
    CHECK(chain.decode(2, s1.id) == std::pair<int, ElementId>{2, v});
    const auto s2 = sigma_point(chain, s1);
    CHECK(chain.decode(3, s2.id) == std::pair<int, ElementId>{3, v});
    // a genuinely-left level-2 point moves its inner coordinate right
    const auto left = ChainPoint{2, chain.encode(2, 1, v)};
    const auto moved = sigma_point(chain, left);
    CHECK(chain.decode(3, moved.id) == std::pair<int, ElementId>{2, v});
  }
  CHECK_THROWS_AS(sigma_point(chain, {3, chain.level(3).elements[0]}), CapacityError);
}

TEST_CASE("tau undoes sigma and folds the innermost pair") {
  ChainHandle chain(kPath3, 4);
  for (ElementId v : kPath3.elements) {
    ChainPoint p{1, v};
    for (int n = 1; n <= 3; ++n) {
      ChainPoint q = p;
      for (int i = 0; i < n; ++i) q = sigma_point(chain, q);
      for (int i = 0; i < n; ++i) q = tau_point(chain, q);
      CHECK(q == ChainPoint{1, v});
    }
    // tau folds a genuinely-left level-2 point back to the base copy
    CHECK(tau_point(chain, {2, chain.encode(2, 1, v)}) == ChainPoint{1, v});
  }
}

TEST_CASE("fold after shift is the identity at every level") {
  ChainHandle chain(kPath3, 4);
  for (int n = 1; n <= 3; ++n) {
    const auto composite = compose(fold_map(chain, n), shift_map(chain, n));
    CHECK(oracle::same_map(composite, identity_morphism(chain.level(n))));
  }
}

TEST_CASE("phi acts copy-wise") {
  ChainHandle chain(kPath3, 3);
  const auto id = identity_morphism(kPath3);
  const auto swap = graph_endo(kPath3, {{0, 2}, {1, 1}, {2, 0}});
  const std::vector<Morphism> fs = {id, swap, id};
  // identity sequence: phi is the identity
  const std::vector<Morphism> ids = {id, id, id};
  for (ElementId v : kPath3.elements) {
    CHECK(phi_point(chain, ids, {1, v}) == ChainPoint{1, v});
    // level 1 action is f1
    CHECK(phi_point(chain, fs, {1, v}) == ChainPoint{1, v});
    // level-2 right copy is acted on by f2
    const auto p = ChainPoint{2, chain.encode(2, 2, v)};
    const auto q = phi_point(chain, fs, p);
    CHECK(chain.decode(2, q.id) == std::pair<int, ElementId>{2, swap.apply(v)});
  }
}

TEST_CASE("beta folds every copy back to the base") {
  ChainHandle chain(kPath3, 3);
  for (ElementId v : kPath3.elements) CHECK(beta_point(chain, {1, v}) == v);
  for (int n = 2; n <= 3; ++n)
    for (ElementId e : chain.level(n).elements)
      CHECK(beta_point(chain, {n, e}) == chain.decode(n, e).second);
}

TEST_CASE("distortion identities hold for identity and random sequences") {
  ChainHandle chain(kPath3, 3);
  const auto id = identity_morphism(kPath3);
  const auto rep = verify_distortion(chain, {id, id, id}, 2);
  CHECK(rep.ok);
  CHECK(rep.first_identity_checks == 3);
  CHECK(rep.shifted_identity_checks == 6);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto fs = random_endos(kPath3, 3, rng());
    const auto r = verify_distortion(chain, fs, 2);
    CHECK(r.ok);
    CHECK(r.mismatches.empty());
  }
}

TEST_CASE("a single nontrivial f2 is recovered by the shifted identity") {
  ChainHandle chain(kPath3, 2);
  const auto id = identity_morphism(kPath3);
  const auto f2 = graph_endo(kPath3, {{0, 2}, {1, 1}, {2, 2}});
  const auto rep = verify_distortion(chain, {id, f2}, 1);
  CHECK(rep.ok);
}

TEST_CASE("word lengths are 2n + 1") {
  for (int n = 1; n <= 6; ++n) {
    const auto w = encode_word(n);
    CHECK(w.length() == static_cast<std::size_t>(2 * n + 1));
    CHECK(w.letters.front() == Generator::Beta);
    CHECK(w.letters.back() == Generator::Alpha);
  }
  CHECK_THROWS_AS(encode_word(0), ContractError);
}

TEST_CASE("graph retraction fixes eta images and finds payload witnesses") {
  TowerHandle t(kPath3);
  const auto r = graph_retraction(t, 0);
  for (ElementId v : kPath3.elements)
    CHECK(r.map.at(t.link(0).apply(v)) == TowerAddress{0, v});
  // the empty-payload vertex goes to the least address
  const ElementId empty_new = t.step(0).element_for(SetPayload{{}});
  CHECK(r.map.at(empty_new) == TowerAddress{0, 0});
  // singleton payloads go to a neighbour of their member
  for (ElementId v : kPath3.elements) {
    const ElementId star = t.step(0).element_for(SetPayload{{v}});
    const TowerAddress w = r.map.at(star);
    const int lvl = std::max(w.level, 0);
    TowerHandle& tt = t;
    CHECK(tt.level(std::max(w.level, 0)).adjacent(tt.resolve(w, lvl), tt.resolve({0, v}, lvl)));
  }
}

TEST_CASE("word evaluation reproduces f_n pointwise on the truncation") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const auto fs = random_endos(kPath3, 3, rng());
    for (int n = 1; n <= 2; ++n) {
      const auto eval = evaluate_word(kPath3, fs, n, 3);
      CHECK(eval.ok);
      CHECK(eval.mismatches.empty());
      CHECK(eval.points_checked > 0);
      CHECK(eval.depth_used == 1);
    }
  }
}

TEST_CASE("word evaluation rejects short sequences and foreign classes") {
  const auto id = identity_morphism(kPath3);
  CHECK_THROWS_AS(evaluate_word(kPath3, {id, id}, 2, 3), ContractError);
  const auto p = make_poset({0}, {});
  CHECK_THROWS_AS(evaluate_word(p, {identity_morphism(p)}, 1, 2), ContractError);
}

TEST_CASE("chains exist for digraphs and posets too") {
  ChainHandle dg(make_digraph({0, 1}, {{0, 1}}), 3);
  CHECK(dg.level(3).size() == 6);
  ChainHandle ps(make_poset({0, 1}, {{0, 1}}), 3);
  const auto id = identity_morphism(ps.base());
  CHECK(verify_distortion(ps, {id, id, id}, 2).ok);
}
