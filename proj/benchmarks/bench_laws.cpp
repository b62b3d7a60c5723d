#include <benchmark/benchmark.h>

#include "rmt/laws.hpp"
#include "rmt/oracles.hpp"
#include "rmt/tracy_widom.hpp"

namespace {

void BM_Airy(benchmark::State& state) {
  double t = -8.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::airy(t));
    t += 0.37;
    if (t > 11.0) t = -11.0;
  }
}
BENCHMARK(BM_Airy);

void BM_Tw2Cdf(benchmark::State& state) {
  rmt::default_hastings_mcleod();  // exclude the one-time solve
  double x = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::tw2_cdf(x));
    x += 0.17;
    if (x > 3.0) x = -5.0;
  }
}
BENCHMARK(BM_Tw2Cdf)->Unit(benchmark::kMicrosecond);

void BM_FredholmTw2(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::airy_kernel_fredholm_tw2(-2.0, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_FredholmTw2)->Arg(80)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_SemicircleQuantile(benchmark::State& state) {
  double p = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmt::semicircle_quantile(p));
    p += 0.013;
    if (p >= 1.0) p -= 0.98;
  }
}
BENCHMARK(BM_SemicircleQuantile);

}  // namespace
