#include <benchmark/benchmark.h>

#include "dolwit/char_forms.hpp"
#include "dolwit/spectral.hpp"

using namespace dolwit;
using namespace dolwit::spectral;

namespace {

ManifoldSpec sinTwist() {
  FourierFunction u(2);
  u.setAmplitude({1, 0}, cplx(0, -0.5));
  u.setAmplitude({-1, 0}, cplx(0, 0.5));
  Form w(1);
  w.setComponent(1, 0, u);
  return flatTorus(w);
}

}  // namespace

static void BM_Assemble(benchmark::State& state) {
  ManifoldSpec M = sinTwist();
  int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    GalerkinComplex G = assemble(M, N);
    benchmark::DoNotOptimize(G);
  }
}
BENCHMARK(BM_Assemble)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_HeatTrace(benchmark::State& state) {
  GalerkinComplex G = assemble(sinTwist(), 8);
  TGrid tg;
  for (auto _ : state) {
    auto s = heatTrace(G, tg);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_HeatTrace);

static void BM_DensityTable(benchmark::State& state) {
  GalerkinComplex G = assemble(sinTwist(), 8);
  auto ts = TGrid{5e-3, 5e-2, 12}.points();
  GridShape grid{{16, 16}};
  for (auto _ : state) {
    auto table = pointwiseDensityTable(G, ts, grid);
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_DensityTable)->Unit(benchmark::kMillisecond);

static void BM_IndexDensity(benchmark::State& state) {
  FourierFunction phi(2);
  phi.setAmplitude({1, 0}, cplx(0, -0.05));
  phi.setAmplitude({-1, 0}, cplx(0, 0.05));
  ManifoldSpec C = conformalTorus(phi);
  for (auto _ : state) {
    FourierFunction d = indexDensity(C);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_IndexDensity)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
