#include <doctest.h>

#include <random>

#include "katetov/metric.hpp"
#include "support/oracle.hpp"

using namespace katetov;

namespace {

FiniteStructure space(int q, std::vector<std::vector<int>> numerators) {
  const int n = static_cast<int>(numerators.size());
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  std::vector<ElementId> es;
  for (int i = 0; i < n; ++i) {
    es.push_back(i);
    for (int j = 0; j < n; ++j) m[i][j] = Rational(numerators[i][j], q);
  }
  return make_metric(q, es, std::move(m));
}

// independent enumeration of the grid Katetov functions over x
std::vector<KatetovFunction> grid_functions(const FiniteStructure& x) {
  const int q = x.tag.param;
  const std::size_t n = x.size();
  std::vector<KatetovFunction> out;
  std::vector<int> v(n, 0);
  while (true) {
    KatetovFunction f{x, {}};
    for (std::size_t i = 0; i < n; ++i) f.values.emplace_back(v[i], q);
    if (is_katetov(f)) out.push_back(f);
    if (n == 0) break;
    std::size_t i = 0;
    while (i < n && v[i] == q) v[i++] = 0;
    if (i == n) break;
    ++v[i];
  }
  return out;
}

FiniteStructure random_space(std::mt19937& rng, int size, int q) {
  while (true) {
    std::vector<std::vector<int>> m(size, std::vector<int>(size, 0));
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j) {
        m[i][j] = 1 + static_cast<int>(rng() % q);
        m[j][i] = m[i][j];
      }
    auto s = space(q, m);
    if (validate(s).ok) return s;
  }
}

}  // namespace

TEST_CASE("hat functions are Katetov") {
  const auto x = space(2, {{0, 1, 2}, {1, 0, 2}, {2, 2, 0}});
  REQUIRE(validate(x).ok);
  for (ElementId a : x.elements) CHECK(is_katetov(hat(x, a)));
  CHECK_THROWS_AS(hat(x, 99), ContractError);
}

TEST_CASE("singleton zero function is Katetov; zero pair at distance 1 is not") {
  const auto one = space(1, {{0}});
  CHECK(is_katetov({one, {Rational(0)}}));
  const auto two = space(1, {{0, 1}, {1, 0}});
  CHECK_FALSE(is_katetov({two, {Rational(0), Rational(0)}}));
}

TEST_CASE("sup distance basics") {
  const auto x = space(2, {{0, 2}, {2, 0}});
  const KatetovFunction phi{x, {Rational(0), Rational(1)}};
  CHECK(sup_distance(phi, phi) == Rational(0));
  const KatetovFunction psi{x, {Rational(1), Rational(1)}};
  CHECK(sup_distance(phi, psi) == Rational(1));
  // eta is isometric: sup(hat a, hat b) = d(a,b)
  for (ElementId a : x.elements)
    for (ElementId b : x.elements) CHECK(sup_distance(hat(x, a), hat(x, b)) == x.distance(a, b));
  const auto other = space(2, {{0, 1}, {1, 0}});
  CHECK_THROWS_AS(sup_distance(phi, KatetovFunction{other, {Rational(0), Rational(1, 2)}}),
                  ContractError);
}

TEST_CASE("push along the identity is the identity") {
  const auto x = space(4, {{0, 3}, {3, 0}});
  for (const auto& phi : grid_functions(x)) {
    const auto pushed = push(phi, identity_morphism(x));
    CHECK(pushed.values == phi.values);
  }
}

TEST_CASE("push from a singleton is distance plus constant") {
  const auto x = space(2, {{0}});
  const auto y = space(2, {{0, 1}, {1, 0}});
  Morphism f;
  f.source = x;
  f.target = y;
  f.kind = MorphismKind::Embedding;
  f.point_map = {{0, 0}};
  const KatetovFunction phi{x, {Rational(1, 2)}};
  const auto pushed = push(phi, f);
  CHECK(pushed.values[0] == Rational(1, 2));       // d(y0,y0) + 1/2
  CHECK(pushed.values[1] == Rational(1));          // d(y1,y0) + 1/2 = 1/2 + 1/2
  CHECK(is_katetov(pushed));
}

TEST_CASE("push rejects expansive maps and empty bases") {
  const auto x = space(2, {{0, 1}, {1, 0}});
  const auto y = space(2, {{0, 2}, {2, 0}});
  Morphism f;
  f.source = x;
  f.target = y;
  f.kind = MorphismKind::Homomorphism;
  f.point_map = {{0, 0}, {1, 1}};  // doubles the distance
  CHECK_THROWS_AS(push({x, {Rational(1), Rational(1)}}, f), ContractError);

  const auto empty = make_metric(2, {}, {});
  CHECK_THROWS_AS(push({empty, {}}, identity_morphism(empty)), ContractError);
}

TEST_CASE("push outputs are Katetov and the composition law holds") {
  std::mt19937 rng(20250810);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_space(rng, 2 + static_cast<int>(rng() % 2), 4);
    const auto y = random_space(rng, 2 + static_cast<int>(rng() % 2), 4);
    const auto z = random_space(rng, 2 + static_cast<int>(rng() % 2), 4);
    const auto fs = oracle::all_morphisms(x, y, MorphismKind::Homomorphism);
    const auto gs = oracle::all_morphisms(y, z, MorphismKind::Homomorphism);
    if (fs.empty() || gs.empty()) continue;
    const auto& f = fs[rng() % fs.size()];
    const auto& g = gs[rng() % gs.size()];
    for (const auto& phi : grid_functions(x)) {
      const auto via = push(push(phi, f), g);
      const auto direct = push(phi, compose(g, f));
      CHECK(is_katetov(via));
      CHECK(via.values == direct.values);
    }
  }
}

TEST_CASE("hat commutes with push: (hat x)^f = hat(f x), exhaustively") {
  for (int q = 1; q <= 3; ++q) {
    const auto spaces = oracle::all_structures({StructureKind::RationalMetric, q}, 2);
    for (const auto& x : spaces)
      for (const auto& y : spaces)
        for (const auto& f : oracle::all_morphisms(x, y, MorphismKind::Homomorphism))
          for (ElementId a : x.elements) {
            const auto lhs = push(hat(x, a), f);
            const auto rhs = hat(y, f.apply(a));
            CHECK(lhs.values == rhs.values);
          }
  }
}

TEST_CASE("pushforward distances: nonexpansive always, isometric on embeddings") {
  std::mt19937 rng(99);
  const auto x = random_space(rng, 3, 4);

  // collapse to a point: left side 0
  const auto pt = space(4, {{0}});
  Morphism collapse;
  collapse.source = x;
  collapse.target = pt;
  collapse.kind = MorphismKind::Homomorphism;
  for (ElementId e : x.elements) collapse.point_map[e] = 0;
  const auto fns = grid_functions(x);
  auto min_value = [](const KatetovFunction& f) {
    Rational m = f.values[0];
    for (const auto& v : f.values)
      if (v < m) m = v;
    return m;
  };
  for (std::size_t i = 0; i < fns.size(); i += 7)
    for (std::size_t j = 0; j < fns.size(); j += 5) {
      const auto chk = nonexpansive_push_distance(fns[i], fns[j], collapse);
      CHECK(chk.nonexpansive);
      // over a single point the pushforwards are the minima
      CHECK(chk.pushed == abs(min_value(fns[i]) - min_value(fns[j])));
    }

  // identity: equality
  for (std::size_t i = 0; i < fns.size(); i += 7)
    for (std::size_t j = 0; j < fns.size(); j += 5)
      CHECK(nonexpansive_push_distance(fns[i], fns[j], identity_morphism(x)).equal);

  // isometric embedding into a superspace: equality
  for (const auto& e : enumerate_one_point_extensions(x)) {
    for (std::size_t i = 0; i < fns.size(); i += 11)
      for (std::size_t j = 0; j < fns.size(); j += 13) {
        const auto chk = nonexpansive_push_distance(fns[i], fns[j], e.inclusion);
        CHECK(chk.equal);
      }
    break;
  }
}

TEST_CASE("sphere K(X) sizes: empty, singleton, two points") {
  const auto k_empty = sphere_k_object(make_metric(1, {}, {}));
  CHECK(k_empty.object.size() == 1);

  const auto k_single = sphere_k_object(space(1, {{0}}));
  CHECK(k_single.object.size() == 2);  // values 0 and 1

  const auto x = space(2, {{0, 2}, {2, 0}});
  const auto k = sphere_k_object(x);
  CHECK(k.object.size() == grid_functions(x).size());
  CHECK(validate(k.object).ok);
  CHECK(check_morphism(k.eta).ok);  // embedding = isometric
}

TEST_CASE("sphere functor laws on all nonexpansive maps, size <= 2") {
  const auto spaces = oracle::all_structures({StructureKind::RationalMetric, 2}, 2);
  for (const auto& x : spaces)
    for (const auto& y : spaces)
      for (const auto& f : oracle::all_morphisms(x, y, MorphismKind::Homomorphism)) {
        const auto kf = k_morphism(f);
        CHECK(check_morphism(kf).ok);  // nonexpansive
        const auto kx = k_object(x);
        const auto ky = k_object(y);
        CHECK(oracle::same_map(compose(ky.eta, f), compose(kf, kx.eta)));
        for (const auto& g : oracle::all_morphisms(y, x, MorphismKind::Homomorphism))
          CHECK(oracle::same_map(k_morphism(compose(g, f)), compose(k_morphism(g), kf)));
      }
}

TEST_CASE("K(f) is isometric exactly for isometric embeddings") {
  const auto x = space(2, {{0, 1}, {1, 0}});
  const auto ext = enumerate_one_point_extensions(x);
  REQUIRE_FALSE(ext.empty());
  const auto kf = k_morphism(ext.front().inclusion);
  CHECK(kf.kind == MorphismKind::Embedding);
  CHECK(check_morphism(kf).ok);  // embedding kind = isometric
}

TEST_CASE("realize_metric_extension") {
  // distance-1 extension of a single point becomes the constant-1 function
  const auto x = space(1, {{0}});
  const auto k = sphere_k_object(x);
  const auto exts = enumerate_one_point_extensions(x);
  REQUIRE(exts.size() == 1);
  const auto g = realize_metric_extension(exts[0]);
  CHECK(check_morphism(g).ok);
  CHECK(function_of(x, k, g.apply(exts[0].new_element)).values ==
        std::vector<Rational>{Rational(1)});

  // duplicating a point at distance 0 is a contract error
  OnePointExtension bad = exts[0];
  bad.extension.dist[0][1] = Rational(0);
  bad.extension.dist[1][0] = Rational(0);
  CHECK_THROWS_AS(realize_metric_extension(bad), ContractError);

  // midpoint of two points at distance 1, q = 2
  const auto y = space(2, {{0, 2}, {2, 0}});
  for (const auto& e : enumerate_one_point_extensions(y)) {
    if (e.extension.distance(0, e.new_element) == Rational(1, 2) &&
        e.extension.distance(1, e.new_element) == Rational(1, 2)) {
      const auto ky = sphere_k_object(y);
      const auto h = realize_metric_extension(e);
      CHECK(function_of(y, ky, h.apply(e.new_element)).values ==
            std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    }
  }
}
