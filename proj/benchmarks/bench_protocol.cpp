#include <benchmark/benchmark.h>

#include "agora/debate.hpp"
#include "agora/metrics.hpp"
#include "support/fixtures.hpp"

using namespace agora;
using namespace agora::testing;

static void BM_RunDebateScripted(benchmark::State& state) {
  FixtureBackend backend(0.6);
  auto config = make_config("a");
  std::uint64_t seed = 1;
  for (auto _ : state) {
    config.seed = seed++;
    benchmark::DoNotOptimize(run_debate(config, backend.resolver()).turns.size());
  }
}
BENCHMARK(BM_RunDebateScripted);

static void BM_ConformitySummary(benchmark::State& state) {
  std::vector<DebateTranscript> transcripts;
  std::mt19937_64 rng(5);
  for (int d = 0; d < state.range(0); d++) {
    std::string pattern;
    for (int t = 0; t < 3; t++) pattern += (rng() & 1) ? 'P' : 'O';
    transcripts.push_back(make_pattern_transcript(pattern, "a", d));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(conformity_rate(transcripts).cr_micro);
  }
}
BENCHMARK(BM_ConformitySummary)->Arg(1000)->Arg(10000);
