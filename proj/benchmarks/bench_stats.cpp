#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "agora/metrics.hpp"
#include "agora/stat_tests.hpp"

using namespace agora;

namespace {

std::vector<std::vector<double>> random_groups(int k, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<std::vector<double>> groups(k);
  for (int g = 0; g < k; g++) {
    for (int i = 0; i < n; i++) groups[g].push_back(dist(rng) + 0.2 * g);
  }
  return groups;
}

}  // namespace

static void BM_Chi2Independence(benchmark::State& state) {
  const auto table = make_table(111, 39, 73, 77);
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi2_independence(table).statistic);
  }
}
BENCHMARK(BM_Chi2Independence);

static void BM_WelchAnova(benchmark::State& state) {
  const auto groups = random_groups(3, static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(welch_anova(groups).statistic);
  }
}
BENCHMARK(BM_WelchAnova)->Arg(50)->Arg(500);

static void BM_GamesHowell(benchmark::State& state) {
  const auto groups = random_groups(3, 100, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(games_howell(groups).size());
  }
}
BENCHMARK(BM_GamesHowell);

static void BM_ShapiroWilk(benchmark::State& state) {
  const auto groups = random_groups(1, static_cast<int>(state.range(0)), 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shapiro_wilk(groups[0]).statistic);
  }
}
BENCHMARK(BM_ShapiroWilk)->Arg(50)->Arg(1000);

static void BM_PosthocPower(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(posthoc_power_anova(0.1665, 3, 667, 0.01));
  }
}
BENCHMARK(BM_PosthocPower);
