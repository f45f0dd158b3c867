#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agora/metrics.hpp"
#include "agora/stat_tests.hpp"
#include "agora/store.hpp"

namespace agora {

// The analysis groupings the reports use: per scenario, per topic, per
// majority ratio, and the two hypothesis pools (a,c vs b,d and e vs f).
enum class Grouping { ByScenario, ByTopic, ByRatio, H1Pool, H2Pool };

struct AnalysisSpec {
  double alpha = 0.01;
  Chi2Correction correction = Chi2Correction::Yates;
};

struct ScenarioSummaryRow {
  std::string scenario_id;
  std::string majority;      // proponent-to-opponent ratio label
  std::string intelligence;  // superior / equivalent / inferior
  std::string expected;
  double cr_micro_pct = 0.0;
  double cr_macro_pct = 0.0;
  double fcr_pct = 0.0;
  long debates = 0;
  long turns = 0;
};

struct TopicSummaryRow {
  std::string topic_id;
  double cr_micro_pct = 0.0;
  double cr_macro_pct = 0.0;
  double fcr_pct = 0.0;
  long debates = 0;
};

struct PooledChi2 {
  ContingencyTable2x2 table;
  TestReport report;
};

// One factor's robust analysis over per-debate CR.
struct FactorAnalysis {
  std::string factor;  // "majority" or "intelligence"
  std::vector<std::string> levels;
  std::optional<TestReport> welch;
  std::optional<TestReport> shapiro;  // on residuals
  std::optional<TestReport> levene;
  std::optional<EffectSize> eta;      // classic one-way SS decomposition
  std::optional<double> posthoc_power;
  std::vector<TestReport> games_howell;
  std::string headline;  // which ANOVA the diagnostics gate selected
  std::vector<std::string> notes;
};

struct TopicHistogramRow {
  std::string topic_id;
  std::string scenario_id;
  int cr_numerator = 0;
  int cr_denominator = 0;  // evaluated turns (3 unless early-terminated)
  bool early_terminated = false;
  long count = 0;
};

struct RatioSweepRow {
  std::string model_id;
  int ratio = 0;  // majority:minority head-count ratio
  double majority_cr = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  long turns = 0;
};

struct RatioSweepReport {
  std::vector<RatioSweepRow> rows;
  std::vector<std::string> gaps;  // missing (model, ratio) cells, flagged
};

struct AnalysisBundle {
  AnalysisSpec spec;
  std::vector<ScenarioSummaryRow> scenario_table;
  std::vector<TopicSummaryRow> topic_table;
  std::optional<PooledChi2> h1;
  std::optional<PooledChi2> h2;
  std::optional<AnovaTable> two_way;
  std::vector<FactorAnalysis> factors;
  std::optional<RatioSweepReport> ratio_sweep;  // experiment B stores only
  std::vector<std::string> skipped;  // analyses not run, with the reason
};

// Pure function of the store: re-running on the same records renders
// byte-identical reports. Throws StoreError on integrity violations
// (duplicate run ids, outcome counts that disagree with the verdicts).
AnalysisBundle analyze(std::span<const StoredDebate> records, const AnalysisSpec& spec);

std::string render_analysis(const AnalysisBundle& bundle);

std::vector<TopicHistogramRow> report_topic_distribution(
    std::span<const StoredDebate> records);

RatioSweepReport ratio_sweep_report(std::span<const StoredDebate> records);

std::string topic_distribution_csv(std::span<const TopicHistogramRow> rows);
std::string ratio_sweep_csv(const RatioSweepReport& report);

}  // namespace agora
