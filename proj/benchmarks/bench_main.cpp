#include <benchmark/benchmark.h>

#include "unispec/character.hpp"
#include "unispec/ensemble.hpp"
#include "unispec/ergodic.hpp"
#include "unispec/spectrum.hpp"

using namespace unispec;

namespace {

Representation generic(std::size_t n, std::size_t k, std::size_t index) {
  EnsembleConfig c;
  c.n = n;
  c.k = k;
  c.seed = 99;
  return ensemble_instance(c, index, ToleranceConfig{});
}

// cyclic group Z/m
FiniteMonoid cyclic(std::size_t m) {
  std::vector<std::vector<std::size_t>> t(m, std::vector<std::size_t>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) t[i][j] = (i + j) % m;
  return FiniteMonoid::validate(t, 0);
}

void BM_UnitaryDual(benchmark::State& state) {
  const auto S = cyclic(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_unitary_dual(S));
}
BENCHMARK(BM_UnitaryDual)->Arg(8)->Arg(32)->Arg(128);

void BM_UnitarySpectrum(benchmark::State& state) {
  const auto T = generic(static_cast<std::size_t>(state.range(0)), 2, 0);
  const ToleranceConfig tol;
  for (auto _ : state) benchmark::DoNotOptimize(unitary_spectrum(T, tol));
}
BENCHMARK(BM_UnitarySpectrum)->Arg(4)->Arg(12)->Arg(24);

void BM_MeanErgodic(benchmark::State& state) {
  const auto T = generic(static_cast<std::size_t>(state.range(0)), 2, 1);
  const ToleranceConfig tol;
  for (auto _ : state) benchmark::DoNotOptimize(mean_ergodic_analysis(T, tol));
}
BENCHMARK(BM_MeanErgodic)->Arg(4)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_PeripheralDecomposition(benchmark::State& state) {
  const auto T = generic(static_cast<std::size_t>(state.range(0)), 3, 2);
  const ToleranceConfig tol;
  for (auto _ : state) benchmark::DoNotOptimize(peripheral_decomposition(T, tol));
}
BENCHMARK(BM_PeripheralDecomposition)->Arg(4)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
