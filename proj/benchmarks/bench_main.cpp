#include <benchmark/benchmark.h>

#include "dilator/decompose.hpp"
#include "dilator/flower.hpp"
#include "dilator/game.hpp"
#include "dilator/generate.hpp"
#include "dilator/pi.hpp"

using namespace dilator;

namespace {

std::vector<Predilator> predilators(int count, int terms, int arity) {
  Rng rng(20240601);
  std::vector<Predilator> out;
  for (int i = 0; i < count; ++i) out.push_back(random_predilator(rng, terms, arity));
  return out;
}

std::vector<Dendrogram> dendrograms(int count, int nodes) {
  Rng rng(20240602);
  std::vector<Dendrogram> out;
  for (int i = 0; i < count; ++i) out.push_back(random_dendrogram(rng, nodes));
  return out;
}

void BM_ApplyOrder(benchmark::State& state) {
  auto ps = predilators(64, 4, 3);
  int n = static_cast<int>(state.range(0));
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(apply_order(ps[k++ % ps.size()], n));
}
BENCHMARK(BM_ApplyOrder)->Arg(3)->Arg(5)->Arg(7);

void BM_DecCellRoundTrip(benchmark::State& state) {
  auto ds = dendrograms(64, static_cast<int>(state.range(0)));
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(cell(dec(ds[k++ % ds.size()])));
}
BENCHMARK(BM_DecCellRoundTrip)->Arg(4)->Arg(8)->Arg(16);

void BM_IntegrateDifferentiate(benchmark::State& state) {
  auto ps = predilators(64, 6, 3);
  std::size_t k = 0;
  for (auto _ : state) {
    Predilator p = ps[k++ % ps.size()];
    for (int i = 0; i < state.range(0); ++i) p = integrate(p);
    for (int i = 0; i < state.range(0); ++i) p = differentiate(p);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_IntegrateDifferentiate)->Arg(1)->Arg(3);

void BM_LvSort(benchmark::State& state) {
  Rng rng(20240603);
  std::vector<Dendrogram> ts;
  for (int i = 0; i < 64; ++i) ts.push_back(random_trekkable(rng, static_cast<int>(state.range(0))));
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lv_sort(ts[k++ % ts.size()]));
}
BENCHMARK(BM_LvSort)->Arg(8)->Arg(16);

void BM_ElementaryDecompose(benchmark::State& state) {
  auto ds = dendrograms(32, 6);
  std::vector<std::tuple<const Dendrogram*, DendroElement, DendroElement>> pairs;
  for (const auto& d : ds) {
    auto elems = apply_dendrogram(d, 3, false);
    if (elems.size() >= 2) pairs.emplace_back(&d, elems.front(), elems.back());
  }
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [d, x, y] = pairs[k++ % pairs.size()];
    benchmark::DoNotOptimize(elementary_decompose(*d, x, y));
  }
}
BENCHMARK(BM_ElementaryDecompose);

void BM_DilatorFamilyStep(benchmark::State& state) {
  auto t = builtin_tree("seeded:5");
  Seq s(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(dilator_family_step(t, s));
}
BENCHMARK(BM_DilatorFamilyStep)->Arg(2)->Arg(4)->Arg(6);

void BM_SolveTruncated(benchmark::State& state) {
  GameConfig cfg;
  cfg.mode = GameMode::ordinal;
  cfg.tree = builtin_tree("full");
  cfg.depth = static_cast<int>(state.range(0));
  cfg.alphabet = 2;
  cfg.kappa = 3;
  for (auto _ : state) benchmark::DoNotOptimize(solve_truncated(cfg));
}
BENCHMARK(BM_SolveTruncated)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
