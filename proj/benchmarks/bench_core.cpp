#include <benchmark/benchmark.h>

#include "katetov/kfunctor.hpp"
#include "katetov/structures.hpp"
#include "katetov/tower.hpp"

using namespace katetov;

namespace {

FiniteStructure path_graph(int n) {
  std::vector<ElementId> es;
  std::vector<IdPair> edges;
  for (int i = 0; i < n; ++i) {
    es.push_back(i);
    if (i) edges.push_back({i - 1, i});
  }
  return make_graph(es, edges);
}

void BM_KObjectGraph(benchmark::State& state) {
  const auto a = path_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(k_object(a));
}
BENCHMARK(BM_KObjectGraph)->Arg(3)->Arg(5)->Arg(7)->Arg(10);

void BM_KObjectPoset(benchmark::State& state) {
  std::vector<ElementId> es;
  std::vector<IdPair> strict;
  for (int i = 0; i < state.range(0); ++i) {
    es.push_back(i);
    for (int j = 0; j < i; ++j) strict.push_back({j, i});
  }
  const auto a = make_poset(es, strict);
  for (auto _ : state) benchmark::DoNotOptimize(k_object(a));
}
BENCHMARK(BM_KObjectPoset)->Arg(3)->Arg(5)->Arg(7);

void BM_EnumerateExtensions(benchmark::State& state) {
  const auto a = path_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_one_point_extensions(a));
}
BENCHMARK(BM_EnumerateExtensions)->Arg(4)->Arg(6)->Arg(8);

void BM_IsoTest(benchmark::State& state) {
  const auto a = path_graph(static_cast<int>(state.range(0)));
  std::vector<ElementId> shuffled = a.elements;
  std::rotate(shuffled.begin(), shuffled.begin() + 1, shuffled.end());
  std::vector<IdPair> edges;
  for (std::size_t i = 1; i < shuffled.size(); ++i)
    edges.push_back({shuffled[i - 1], shuffled[i]});
  const auto b = make_graph(a.elements, edges);
  for (auto _ : state) benchmark::DoNotOptimize(iso_test(a, b));
}
BENCHMARK(BM_IsoTest)->Arg(5)->Arg(7)->Arg(9);

void BM_TowerExpand(benchmark::State& state) {
  for (auto _ : state) {
    auto t = TowerHandle::iterate(make_graph({0}, {}), static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(t.level(t.frozen_depth()).size());
  }
}
BENCHMARK(BM_TowerExpand)->Arg(1)->Arg(2)->Arg(3);

void BM_VerifyExtensionProperty(benchmark::State& state) {
  for (auto _ : state) {
    auto t = TowerHandle::iterate(make_graph({0}, {}), 2);
    benchmark::DoNotOptimize(verify_extension_property(t, 1, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_VerifyExtensionProperty)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
