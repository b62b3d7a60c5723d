#include <benchmark/benchmark.h>

#include "rmt/eigensolver.hpp"
#include "rmt/ensembles.hpp"

namespace {

void BM_Tridiagonalize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = rmt::sample_goe(n, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::tridiagonalize(m));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Tridiagonalize)->RangeMultiplier(2)->Range(128, 2048)->Complexity()->Unit(benchmark::kMillisecond);

void BM_DenseEigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = rmt::sample_goe(n, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::eigenvalues(m));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_DenseEigenvalues)->RangeMultiplier(2)->Range(128, 1024)->Complexity()->Unit(benchmark::kMillisecond);

void BM_TridiagonalQL(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto t = rmt::sample_beta_tridiagonal(n, 2, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::eigenvalues(t));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_TridiagonalQL)->RangeMultiplier(4)->Range(256, 4096)->Complexity()->Unit(benchmark::kMillisecond);

}  // namespace
