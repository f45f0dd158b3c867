#include "agora/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "agora/distributions.hpp"
#include "agora/errors.hpp"

namespace agora {

namespace {

std::string fmt(double v, const char* spec = "%.4f") {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string fmt_p(double p) { return fmt(p, "%.6g"); }

void integrity_check(std::span<const StoredDebate> records) {
  std::set<std::string> seen;
  for (const auto& r : records) {
    if (!seen.insert(r.run_id).second) {
      throw StoreError("store integrity: duplicate run id " + r.run_id);
    }
    int pro = 0;
    for (const auto& t : r.transcript.turns) {
      if (t.verdict.selected_side == Side::Proponent) pro++;
    }
    if (pro != r.transcript.outcome.proponent_supported_turns ||
        static_cast<int>(r.transcript.turns.size()) !=
            r.transcript.outcome.total_evaluated_turns) {
      throw StoreError("store integrity: outcome counts disagree with verdicts in run " +
                       r.run_id);
    }
  }
}

struct DebateView {
  const StoredDebate* record;
  double cr;  // per-debate (macro) conformity rate
};

double per_debate_cr(const StoredDebate& r) {
  const auto& o = r.transcript.outcome;
  return static_cast<double>(o.proponent_supported_turns) /
         static_cast<double>(o.total_evaluated_turns);
}

std::vector<const DebateTranscript*> transcripts_of(
    const std::vector<const StoredDebate*>& records) {
  std::vector<const DebateTranscript*> out;
  out.reserve(records.size());
  for (const auto* r : records) out.push_back(&r->transcript);
  return out;
}

ConformitySummary summarize_records(const std::vector<const StoredDebate*>& records) {
  std::vector<DebateTranscript> copies;
  copies.reserve(records.size());
  for (const auto* r : records) copies.push_back(r->transcript);
  return conformity_rate(copies);
}

ContingencyTable2x2 pool_contingency(const std::vector<const StoredDebate*>& group_a,
                                     const std::vector<const StoredDebate*>& group_b,
                                     const std::string& label_a, const std::string& label_b) {
  std::vector<DebateTranscript> a;
  std::vector<DebateTranscript> b;
  for (const auto* r : group_a) a.push_back(r->transcript);
  for (const auto* r : group_b) b.push_back(r->transcript);
  return build_contingency(a, b, label_a, label_b);
}

// Wilson score interval; the z for a 99% two-sided interval comes from
// the normal quantile kernel.

void wilson_interval_impl(double wins, double n_total, double z, double& lo, double& hi) {
  const double p = wins / n_total;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n_total;
  const double center = (p + z2 / (2.0 * n_total)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n_total + z2 / (4.0 * n_total * n_total)) / denom;
  lo = std::max(0.0, center - half);
  hi = std::min(1.0, center + half);
}

FactorAnalysis analyze_factor(const std::string& factor_name,
                              const std::map<std::string, std::vector<double>>& by_level,
                              double alpha) {
  FactorAnalysis fa;
  fa.factor = factor_name;
  for (const auto& [level, values] : by_level) fa.levels.push_back(level);

  if (by_level.size() < 2) {
    fa.notes.push_back("skipped: factor has fewer than 2 levels in this store");
    return fa;
  }
  std::vector<std::vector<double>> groups;
  std::vector<std::string> labels;
  for (const auto& [level, values] : by_level) {
    groups.push_back(values);
    labels.push_back(level);
  }

  // Residual diagnostics gate which ANOVA is the headline.
  std::vector<double> residuals;
  double grand = 0.0;
  double n_total = 0.0;
  std::vector<double> means;
  for (const auto& g : groups) {
    double m = 0.0;
    for (double v : g) m += v;
    m /= static_cast<double>(g.size());
    means.push_back(m);
    grand += m * static_cast<double>(g.size());
    n_total += static_cast<double>(g.size());
  }
  grand /= n_total;
  for (std::size_t i = 0; i < groups.size(); i++) {
    for (double v : groups[i]) residuals.push_back(v - means[i]);
  }
  if (residuals.size() > 5000) {
    // Shapiro-Wilk cap; deterministic thinning keeps analyze pure.
    std::vector<double> thinned;
    const double step = static_cast<double>(residuals.size()) / 5000.0;
    for (int i = 0; i < 5000; i++) {
      thinned.push_back(residuals[static_cast<std::size_t>(i * step)]);
    }
    residuals = std::move(thinned);
  }
  try {
    fa.shapiro = shapiro_wilk(residuals, alpha);
  } catch (const StatsError& e) {
    fa.notes.push_back(std::string("shapiro-wilk skipped: ") + e.what());
  }
  try {
    fa.levene = levene_test(groups, LeveneCenter::Mean, alpha);
  } catch (const StatsError& e) {
    fa.notes.push_back(std::string("levene skipped: ") + e.what());
  }

  try {
    fa.welch = welch_anova(groups, alpha);
  } catch (const StatsError& e) {
    fa.notes.push_back(std::string("welch anova skipped: ") + e.what());
  }

  // Classic one-way sums of squares for the effect size; the basis is
  // printed because Welch itself does not define one.
  double ssb = 0.0;
  double ssw = 0.0;
  for (std::size_t i = 0; i < groups.size(); i++) {
    ssb += static_cast<double>(groups[i].size()) * (means[i] - grand) * (means[i] - grand);
    for (double v : groups[i]) ssw += (v - means[i]) * (v - means[i]);
  }
  if (ssw > 0.0) {
    fa.eta = partial_eta_squared(ssb, ssw);
    const int k = static_cast<int>(groups.size());
    const int n_mean = static_cast<int>(n_total / static_cast<double>(k));
    if (n_mean >= 2 && fa.eta->eta_p_squared < 1.0) {
      fa.posthoc_power =
          posthoc_power_anova(fa.eta->eta_p_squared, k, n_mean, alpha);
    }
  } else {
    fa.notes.push_back("effect size skipped: zero within-group variability");
  }

  try {
    fa.games_howell = games_howell(groups, labels, alpha);
  } catch (const StatsError& e) {
    fa.notes.push_back(std::string("games-howell skipped: ") + e.what());
  }

  const bool shapiro_failed = fa.shapiro.has_value() && fa.shapiro->reject_null;
  const bool levene_failed = fa.levene.has_value() && fa.levene->reject_null;
  if (shapiro_failed || levene_failed) {
    fa.headline = "welch";
    std::string why;
    if (shapiro_failed) why += "normality";
    if (levene_failed) why += why.empty() ? "variance homogeneity" : " and variance homogeneity";
    fa.notes.push_back("headline is Welch's ANOVA: " + why + " diagnostics failed at alpha");
  } else {
    fa.headline = "classic";
    fa.notes.push_back("headline is the classic ANOVA: diagnostics passed at alpha");
  }
  return fa;
}

}  // namespace

AnalysisBundle analyze(std::span<const StoredDebate> records, const AnalysisSpec& spec) {
  if (records.empty()) {
    throw MetricsError("analyze requires a non-empty transcript store");
  }
  integrity_check(records);

  AnalysisBundle bundle;
  bundle.spec = spec;

  std::map<std::string, std::vector<const StoredDebate*>> by_scenario;
  std::map<std::string, std::vector<const StoredDebate*>> by_topic;
  bool any_b = false;
  bool any_a = false;
  for (const auto& r : records) {
    by_scenario[r.transcript.config.scenario.id].push_back(&r);
    by_topic[r.transcript.config.topic.id].push_back(&r);
    if (r.transcript.config.experiment == "b") any_b = true;
    if (r.transcript.config.experiment == "a") any_a = true;
  }

  for (const auto& [scenario_id, group] : by_scenario) {
    const auto summary = summarize_records(group);
    const Scenario& scenario = group.front()->transcript.config.scenario;
    ScenarioSummaryRow row;
    row.scenario_id = scenario_id;
    row.majority = format_ratio(scenario.majority_ratio());
    row.intelligence = to_string(scenario.intelligence());
    row.expected = to_string(scenario.expected_conformity);
    row.cr_micro_pct = 100.0 * summary.cr_micro;
    row.cr_macro_pct = 100.0 * summary.cr_macro;
    row.fcr_pct = 100.0 * summary.fcr;
    row.debates = summary.total_discussions;
    row.turns = summary.total_evaluated_turns;
    bundle.scenario_table.push_back(row);
  }

  for (const auto& [topic_id, group] : by_topic) {
    const auto summary = summarize_records(group);
    TopicSummaryRow row;
    row.topic_id = topic_id;
    row.cr_micro_pct = 100.0 * summary.cr_micro;
    row.cr_macro_pct = 100.0 * summary.cr_macro;
    row.fcr_pct = 100.0 * summary.fcr;
    row.debates = summary.total_discussions;
    bundle.topic_table.push_back(row);
  }

  auto pool = [&](std::initializer_list<const char*> ids) {
    std::vector<const StoredDebate*> out;
    for (const char* id : ids) {
      if (auto it = by_scenario.find(id); it != by_scenario.end()) {
        out.insert(out.end(), it->second.begin(), it->second.end());
      }
    }
    return out;
  };

  const auto h1_a = pool({"a", "c"});
  const auto h1_b = pool({"b", "d"});
  if (!h1_a.empty() && !h1_b.empty()) {
    try {
      PooledChi2 p;
      p.table = pool_contingency(h1_a, h1_b, "pro-majority(a,c)", "opp-majority(b,d)");
      p.report = chi2_independence(p.table, spec.correction, spec.alpha);
      bundle.h1 = std::move(p);
    } catch (const StatsError& e) {
      bundle.skipped.push_back(std::string("H1 pooled chi-square: ") + e.what());
    }
  } else {
    bundle.skipped.push_back(
        "H1 pooled chi-square: store lacks scenarios a/c or b/d");
  }

  const auto h2_a = pool({"e"});
  const auto h2_b = pool({"f"});
  if (!h2_a.empty() && !h2_b.empty()) {
    try {
      PooledChi2 p;
      p.table = pool_contingency(h2_a, h2_b, "pro-superior(e)", "opp-superior(f)");
      p.report = chi2_independence(p.table, spec.correction, spec.alpha);
      bundle.h2 = std::move(p);
    } catch (const StatsError& e) {
      bundle.skipped.push_back(std::string("H2 pooled chi-square: ") + e.what());
    }
  } else {
    bundle.skipped.push_back("H2 pooled chi-square: store lacks scenario e or f");
  }

  // Per-debate CR grouped by the two factors.
  std::map<std::string, std::vector<double>> by_majority;
  std::map<std::string, std::vector<double>> by_intelligence;
  std::vector<Observation> observations;
  for (const auto& r : records) {
    const Scenario& s = r.transcript.config.scenario;
    const double cr = per_debate_cr(r);
    const std::string maj = format_ratio(s.majority_ratio());
    const std::string intel = to_string(s.intelligence());
    by_majority[maj].push_back(cr);
    by_intelligence[intel].push_back(cr);
    observations.push_back({cr, maj, intel});
  }
  bundle.factors.push_back(analyze_factor("majority", by_majority, spec.alpha));
  bundle.factors.push_back(analyze_factor("intelligence", by_intelligence, spec.alpha));

  try {
    bundle.two_way = two_way_anova(observations, spec.alpha, "majority", "intelligence");
  } catch (const StatsError& e) {
    bundle.skipped.push_back(std::string("two-way ANOVA: ") + e.what());
  }

  if (any_b) {
    try {
      bundle.ratio_sweep = ratio_sweep_report(records);
    } catch (const AgoraError& e) {
      bundle.skipped.push_back(std::string("ratio sweep: ") + e.what());
    }
  } else if (!any_a) {
    bundle.skipped.push_back("ratio sweep: store has no experiment B records");
  }

  return bundle;
}

std::vector<TopicHistogramRow> report_topic_distribution(
    std::span<const StoredDebate> records) {
  if (records.empty()) {
    throw MetricsError("topic distribution requires a non-empty store");
  }
  std::map<std::tuple<std::string, std::string, int, int, bool>, long> buckets;
  for (const auto& r : records) {
    const auto& o = r.transcript.outcome;
    buckets[{r.transcript.config.topic.id, r.transcript.config.scenario.id,
             o.proponent_supported_turns, o.total_evaluated_turns,
             r.transcript.early_termination.has_value()}]++;
  }
  std::vector<TopicHistogramRow> rows;
  for (const auto& [key, count] : buckets) {
    rows.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key),
                    std::get<4>(key), count});
  }
  return rows;
}

RatioSweepReport ratio_sweep_report(std::span<const StoredDebate> records) {
  RatioSweepReport report;
  std::map<std::pair<std::string, int>, std::pair<long, long>> cells;  // wins, turns
  std::set<std::string> models;
  bool any = false;
  for (const auto& r : records) {
    if (r.transcript.config.experiment != "b") continue;
    any = true;
    const Scenario& s = r.transcript.config.scenario;
    if (s.proponent_count == s.opponent_count) continue;
    const Side majority =
        s.proponent_count > s.opponent_count ? Side::Proponent : Side::Opponent;
    const int ratio = std::max(s.proponent_count, s.opponent_count) /
                      std::min(s.proponent_count, s.opponent_count);
    auto& [wins, turns] = cells[{r.transcript.config.pairing.id, ratio}];
    for (const auto& t : r.transcript.turns) {
      turns++;
      if (t.verdict.selected_side == majority) wins++;
    }
    models.insert(r.transcript.config.pairing.id);
  }
  if (!any) {
    throw MetricsError("ratio sweep requires an experiment B store");
  }
  const double z99 = normal_quantile(0.995);
  for (const auto& model : models) {
    for (int ratio : {2, 4, 8}) {
      auto it = cells.find({model, ratio});
      if (it == cells.end() || it->second.second == 0) {
        report.gaps.push_back(model + " ratio " + std::to_string(ratio) + ":1 missing");
        continue;
      }
      const auto [wins, turns] = it->second;
      RatioSweepRow row;
      row.model_id = model;
      row.ratio = ratio;
      row.turns = turns;
      row.majority_cr = static_cast<double>(wins) / static_cast<double>(turns);
      wilson_interval_impl(static_cast<double>(wins), static_cast<double>(turns), z99,
                           row.ci_low, row.ci_high);
      report.rows.push_back(row);
    }
  }
  return report;
}

std::string topic_distribution_csv(std::span<const TopicHistogramRow> rows) {
  std::string out = "topic_id,scenario_id,cr_numerator,cr_denominator,early_term,count\n";
  for (const auto& r : rows) {
    out += r.topic_id + "," + r.scenario_id + "," + std::to_string(r.cr_numerator) + "," +
           std::to_string(r.cr_denominator) + "," + (r.early_terminated ? "1" : "0") + "," +
           std::to_string(r.count) + "\n";
  }
  return out;
}

std::string ratio_sweep_csv(const RatioSweepReport& report) {
  std::string out = "model_id,ratio,majority_cr,ci99_low,ci99_high,turns\n";
  for (const auto& r : report.rows) {
    out += r.model_id + "," + std::to_string(r.ratio) + "," + fmt(r.majority_cr, "%.6f") +
           "," + fmt(r.ci_low, "%.6f") + "," + fmt(r.ci_high, "%.6f") + "," +
           std::to_string(r.turns) + "\n";
  }
  for (const auto& gap : report.gaps) {
    out += "# gap: " + gap + "\n";
  }
  return out;
}

namespace {

void render_test_report(std::ostringstream& os, const TestReport& r,
                        const std::string& indent) {
  os << indent << r.test_name << ": statistic=" << fmt(r.statistic) << " df="
     << fmt(r.df1, "%.6g");
  if (r.df2.has_value()) os << "/" << fmt(*r.df2, "%.6g");
  os << " p=" << fmt_p(r.p_value) << " reject@" << fmt(r.alpha, "%.3g") << "="
     << (r.reject_null ? "yes" : "no");
  if (!r.notes.empty()) os << " (" << r.notes << ")";
  os << "\n";
}

}  // namespace

std::string render_analysis(const AnalysisBundle& bundle) {
  std::ostringstream os;
  os << "alpha=" << fmt(bundle.spec.alpha, "%.3g") << " correction="
     << (bundle.spec.correction == Chi2Correction::Yates ? "yates" : "none") << "\n\n";

  os << "== Conformity by scenario ==\n";
  os << "scenario  majority  intelligence  expected      debates  turns  CR%(micro)  "
        "CR%(macro)  FCR%\n";
  for (const auto& r : bundle.scenario_table) {
    char line[256];
    std::snprintf(line, sizeof(line), "%-9s %-9s %-13s %-13s %7ld %6ld %11.2f %11.2f %6.2f",
                  r.scenario_id.c_str(), r.majority.c_str(), r.intelligence.c_str(),
                  r.expected.c_str(), r.debates, r.turns, r.cr_micro_pct, r.cr_macro_pct,
                  r.fcr_pct);
    os << line << "\n";
  }

  os << "\n== Conformity by topic ==\n";
  os << "topic                     debates  CR%(micro)  CR%(macro)  FCR%\n";
  for (const auto& r : bundle.topic_table) {
    char line[256];
    std::snprintf(line, sizeof(line), "%-25s %7ld %11.2f %11.2f %6.2f", r.topic_id.c_str(),
                  r.debates, r.cr_micro_pct, r.cr_macro_pct, r.fcr_pct);
    os << line << "\n";
  }

  auto render_pool = [&](const char* name, const std::optional<PooledChi2>& pool) {
    if (!pool.has_value()) return;
    os << "\n== " << name << " ==\n";
    const auto& t = pool->table;
    os << "rows: " << t.row_labels[0] << " / " << t.row_labels[1] << "; cols: proponent / "
       << "opponent\n";
    os << "observed [[" << fmt(t.observed[0][0], "%.0f") << "," << fmt(t.observed[0][1], "%.0f")
       << "],[" << fmt(t.observed[1][0], "%.0f") << "," << fmt(t.observed[1][1], "%.0f")
       << "]] N=" << fmt(t.grand_total(), "%.0f") << "\n";
    render_test_report(os, pool->report, "");
  };
  render_pool("H1 pooled chi-square (pro-majority vs opp-majority)", bundle.h1);
  render_pool("H2 pooled chi-square (pro-superior vs opp-superior)", bundle.h2);

  for (const auto& fa : bundle.factors) {
    os << "\n== Factor analysis: " << fa.factor << " ==\n";
    os << "levels:";
    for (const auto& l : fa.levels) os << " " << l;
    os << "\n";
    if (fa.shapiro.has_value()) render_test_report(os, *fa.shapiro, "  ");
    if (fa.levene.has_value()) render_test_report(os, *fa.levene, "  ");
    if (fa.welch.has_value()) render_test_report(os, *fa.welch, "  ");
    if (fa.eta.has_value()) {
      os << "  eta_p^2=" << fmt(fa.eta->eta_p_squared) << " (" << fa.eta->band
         << ", classic SS decomposition)";
      if (fa.posthoc_power.has_value()) {
        os << " posthoc_power=" << fmt(*fa.posthoc_power);
      }
      os << "\n";
    }
    for (const auto& gh : fa.games_howell) render_test_report(os, gh, "  ");
    if (!fa.headline.empty()) os << "  headline: " << fa.headline << "\n";
    for (const auto& n : fa.notes) os << "  note: " << n << "\n";
  }

  os << "\n== Two-way ANOVA (majority x intelligence, per-debate CR) ==\n";
  if (bundle.two_way.has_value()) {
    const auto& t = *bundle.two_way;
    auto row = [&](const char* name, const AnovaRow& r, bool with_f) {
      os << "  " << name << ": SS=" << fmt(r.ss, "%.6g") << " df=" << fmt(r.df, "%.6g");
      if (with_f) {
        os << " MS=" << fmt(r.ms, "%.6g") << " F=" << fmt(r.f, "%.6g")
           << " p=" << fmt_p(r.p);
      }
      os << "\n";
    };
    row(t.label_a.c_str(), t.factor_a, true);
    row(t.label_b.c_str(), t.factor_b, true);
    row((t.label_a + " x " + t.label_b).c_str(), t.interaction, true);
    row("error", t.error, false);
    row("total", t.total, false);
    if (t.degenerate) os << "  DEGENERATE: all responses equal, F undefined\n";
  }

  if (bundle.ratio_sweep.has_value()) {
    os << "\n== Majority-ratio sweep (toward-majority CR, 99% CI) ==\n";
    for (const auto& r : bundle.ratio_sweep->rows) {
      os << "  " << r.model_id << " " << r.ratio << ":1 CR=" << fmt(r.majority_cr) << " ["
         << fmt(r.ci_low) << ", " << fmt(r.ci_high) << "] turns=" << r.turns << "\n";
    }
    for (const auto& gap : bundle.ratio_sweep->gaps) os << "  gap: " << gap << "\n";
  }

  if (!bundle.skipped.empty()) {
    os << "\n== Skipped analyses ==\n";
    for (const auto& s : bundle.skipped) os << "  - " << s << "\n";
  }
  return os.str();
}

}  // namespace agora
