#include <benchmark/benchmark.h>

#include "agora/distributions.hpp"

using namespace agora;

static void BM_Chi2Sf(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi2_sf(x, 1.0).value);
    x += 0.01;
    if (x > 40.0) x = 0.5;
  }
}
BENCHMARK(BM_Chi2Sf);

static void BM_IncompleteBetaViaFSf(benchmark::State& state) {
  double x = 0.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f_sf(x, 2.0, 40.0).value);
    x += 0.05;
    if (x > 10.0) x = 0.2;
  }
}
BENCHMARK(BM_IncompleteBetaViaFSf);

static void BM_NoncentralFCdf(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(noncentral_f_cdf(2.0, 2.0, 200.0, lambda).value);
  }
}
BENCHMARK(BM_NoncentralFCdf)->Arg(1)->Arg(40)->Arg(400);

static void BM_StudentizedRangeSf(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(studentized_range_sf(3.1, 3, 24.0).value);
  }
}
BENCHMARK(BM_StudentizedRangeSf);

static void BM_StudentizedRangeQuantile(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(studentized_range_quantile(0.95, 3, 10.0));
  }
}
BENCHMARK(BM_StudentizedRangeQuantile);
