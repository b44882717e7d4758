#include <benchmark/benchmark.h>

#include "dolwit/jet_invariance.hpp"

using namespace dolwit::jet;

static void BM_EnumerateMonomials(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  int weight = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto monos = enumerateMonomials(m, weight, 1);
    benchmark::DoNotOptimize(monos);
  }
}
BENCHMARK(BM_EnumerateMonomials)->Args({1, 4})->Args({2, 4})->Args({2, 6});

static void BM_InvariantBasis(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  int weight = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto basis = invariantBasis(m, weight, 1);
    benchmark::DoNotOptimize(basis);
  }
}
BENCHMARK(BM_InvariantBasis)->Args({1, 4})->Args({2, 2})->Args({2, 4});

static void BM_KernelOfRestriction(benchmark::State& state) {
  for (auto _ : state) {
    auto ker = kernelOfRestriction(2, 4, 1);
    benchmark::DoNotOptimize(ker);
  }
}
BENCHMARK(BM_KernelOfRestriction);

static void BM_BSet(benchmark::State& state) {
  Monomial B = canonicalize({{JetKind::Metric, {1, 2}, {1, 2}, 0, 0},
                             {JetKind::Metric, {1, 2}, {1, 1}, 0, 0}});
  for (auto _ : state) {
    auto entries = bSet(B, 1, 2);
    benchmark::DoNotOptimize(entries);
  }
}
BENCHMARK(BM_BSet);

BENCHMARK_MAIN();
