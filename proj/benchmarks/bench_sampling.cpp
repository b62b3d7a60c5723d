#include <benchmark/benchmark.h>

#include "rmt/ensembles.hpp"
#include "rmt/ks.hpp"
#include "rmt/reference_cdf.hpp"
#include "rmt/rng.hpp"

namespace {

void BM_SampleWigner(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto dist = rmt::EntryDistribution::gaussian();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::sample_wigner(n, dist, seed++));
  }
}
BENCHMARK(BM_SampleWigner)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_SampleBetaTridiagonal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::sample_beta_tridiagonal(n, 2, seed++));
  }
}
BENCHMARK(BM_SampleBetaTridiagonal)->Arg(1000)->Arg(4000)->Unit(benchmark::kMicrosecond);

void BM_KsOneSample(benchmark::State& state) {
  auto rng = rmt::make_engine(7);
  std::normal_distribution<double> normal;
  std::vector<double> xs(100000);
  for (double& x : xs) x = normal(rng);
  const auto ref = rmt::ReferenceCdf::std_normal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::ks_one_sample(xs, ref));
  }
}
BENCHMARK(BM_KsOneSample)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
