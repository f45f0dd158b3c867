// Command-line surface: run experiment grids, analyze stored results,
// emit figure data, probe neutral-model bias, validate configs.
//
// Exit codes: 0 success, 1 validation errors, 2 execution failures.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "agora/analysis.hpp"
#include "agora/config.hpp"
#include "agora/debate.hpp"
#include "agora/errors.hpp"
#include "agora/grid.hpp"
#include "agora/http_backend.hpp"
#include "agora/runner.hpp"
#include "agora/store.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitExecution = 2;

int print_issues(const std::vector<agora::ValidationIssue>& issues) {
  for (const auto& issue : issues) {
    std::cerr << "invalid: " << issue.path << ": " << issue.message << "\n";
  }
  return kExitValidation;
}

struct RunArgs {
  std::string experiment;
  std::string config_path;
  int reps = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int concurrency = -1;
  bool resume = false;
  std::string framing;
  std::string output_dir;
};

int cmd_run(const RunArgs& args) {
  auto cfg = agora::load_experiment_config(args.config_path);
  if (args.reps > 0) cfg.run.reps = args.reps;
  if (args.seed_set) cfg.run.master_seed = args.seed;
  if (args.concurrency > 0) cfg.run.concurrency = args.concurrency;
  if (!args.framing.empty()) cfg.run.framing = agora::framing_from_string(args.framing);
  if (!args.output_dir.empty()) cfg.run.output_dir = args.output_dir;
  if (cfg.run.output_dir.empty()) {
    std::cerr << "invalid: run.output_dir: no output directory in config or --out\n";
    return kExitValidation;
  }

  if (const auto issues = agora::validate_experiment_config(cfg); !issues.empty()) {
    return print_issues(issues);
  }
  const auto grid = args.experiment == "a" ? agora::build_experiment_a_grid(cfg)
                                           : agora::build_experiment_b_grid(cfg);
  if (const auto issues = agora::validate_grid(grid); !issues.empty()) {
    return print_issues(issues);
  }

  agora::BackendPolicy policy;
  policy.max_concurrent = cfg.run.max_concurrent_per_backend;
  policy.requests_per_second = cfg.run.requests_per_second;
  std::shared_ptr<agora::AuditLog> audit;
  if (cfg.run.audit_log.has_value()) {
    audit = std::make_shared<agora::AuditLog>(*cfg.run.audit_log);
  }
  agora::BackendRegistry registry(policy, audit);

  agora::RunOptions options;
  options.concurrency = cfg.run.concurrency;
  options.resume = args.resume;
  options.output_dir = cfg.run.output_dir;
  options.progress = &std::cerr;

  const auto report = agora::run_grid(grid, registry.resolver(), options);
  std::cout << "grid total=" << report.total << " done=" << report.done
            << " failed=" << report.failed << " skipped=" << report.skipped << "\n";
  std::cout << "artifacts in " << cfg.run.output_dir << "\n";
  return report.failed == 0 ? kExitOk : kExitExecution;
}

int cmd_validate(const std::string& config_path) {
  const auto cfg = agora::load_experiment_config(config_path);
  auto issues = agora::validate_experiment_config(cfg);
  if (issues.empty()) {
    // Exercise both grid builders so structural problems surface now.
    if (!cfg.pairings.empty()) {
      const auto grid = agora::build_experiment_a_grid(cfg);
      auto grid_issues = agora::validate_grid(grid);
      issues.insert(issues.end(), grid_issues.begin(), grid_issues.end());
      std::cout << "experiment A grid: " << grid.size() << " runs\n";
    }
    if (!cfg.experiment_b_models.empty()) {
      const auto grid = agora::build_experiment_b_grid(cfg);
      auto grid_issues = agora::validate_grid(grid);
      issues.insert(issues.end(), grid_issues.begin(), grid_issues.end());
      std::cout << "experiment B grid: " << grid.size() << " runs\n";
    }
  }
  if (!issues.empty()) return print_issues(issues);
  std::cout << "configuration valid\n";
  return kExitOk;
}

int cmd_analyze(const std::string& input, double alpha, const std::string& correction) {
  const auto records = agora::TranscriptStore::load(input);
  agora::AnalysisSpec spec;
  spec.alpha = alpha;
  spec.correction = correction == "none" ? agora::Chi2Correction::None
                                         : agora::Chi2Correction::Yates;
  const auto bundle = agora::analyze(records, spec);
  std::cout << agora::render_analysis(bundle);
  return kExitOk;
}

int cmd_report(const std::string& input, bool figures, const std::string& out_dir) {
  const auto records = agora::TranscriptStore::load(input);
  const auto rows = agora::report_topic_distribution(records);

  std::cout << "topic_id,scenario_id,cr_numerator,cr_denominator,early_term,count\n";
  for (const auto& r : rows) {
    std::cout << r.topic_id << "," << r.scenario_id << "," << r.cr_numerator << ","
              << r.cr_denominator << "," << (r.early_terminated ? 1 : 0) << "," << r.count
              << "\n";
  }

  if (figures) {
    std::filesystem::create_directories(out_dir);
    const auto topic_path = std::filesystem::path(out_dir) / "figure_topic_cr_distribution.csv";
    std::ofstream(topic_path) << agora::topic_distribution_csv(rows);
    std::cerr << "wrote " << topic_path.string() << "\n";
    try {
      const auto sweep = agora::ratio_sweep_report(records);
      const auto sweep_path = std::filesystem::path(out_dir) / "figure_ratio_sweep.csv";
      std::ofstream(sweep_path) << agora::ratio_sweep_csv(sweep);
      std::cerr << "wrote " << sweep_path.string() << "\n";
    } catch (const agora::MetricsError&) {
      std::cerr << "ratio sweep skipped: store has no experiment B records\n";
    }
  }
  return kExitOk;
}

int cmd_probe_bias(const std::string& config_path, const std::string& topic_id, int trials) {
  const auto cfg = agora::load_experiment_config(config_path);
  const agora::Topic* topic = nullptr;
  for (const auto& t : cfg.topics) {
    if (t.id == topic_id) topic = &t;
  }
  if (topic == nullptr) {
    std::cerr << "invalid: --topic: no topic '" << topic_id << "' in " << config_path << "\n";
    return kExitValidation;
  }
  agora::BackendPolicy policy;
  policy.max_concurrent = cfg.run.max_concurrent_per_backend;
  agora::BackendRegistry registry(policy);
  const auto result = agora::bias_probe(*topic, cfg.neutral_model, trials,
                                        registry.resolver());
  std::cout << "topic=" << result.topic_id << " trials=" << result.trials << "\n";
  const double denom = std::max(1, result.pros + result.cons + result.no_response);
  std::cout << "pros=" << result.pros << " (" << 100.0 * result.pros / denom << "%)\n";
  std::cout << "cons=" << result.cons << " (" << 100.0 * result.cons / denom << "%)\n";
  std::cout << "no_response=" << result.no_response << " ("
            << 100.0 * result.no_response / denom << "%)\n";
  if (result.unclassified > 0) {
    std::cout << "unclassified=" << result.unclassified
              << " (diagnostic bucket, excluded from percentages)\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-agent debate conformity simulator and analysis engine"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "execute an experiment grid");
  run->add_option("experiment", run_args.experiment, "which experiment grid (a|b)")
      ->required()
      ->check(CLI::IsMember({"a", "b"}));
  run->add_option("--config", run_args.config_path, "experiment configuration file")
      ->required();
  run->add_option("--reps", run_args.reps, "override repetitions per condition");
  run->add_option("--seed", run_args.seed, "override the master seed")
      ->each([&](const std::string&) { run_args.seed_set = true; });
  run->add_option("--concurrency", run_args.concurrency, "worker pool size");
  run->add_flag("--resume", run_args.resume, "skip runs already in the store");
  run->add_option("--framing", run_args.framing, "topic framing")
      ->check(CLI::IsMember({"original", "reversed"}));
  run->add_option("--out", run_args.output_dir, "override the output directory");

  std::string analyze_input;
  double analyze_alpha = 0.01;
  std::string analyze_correction = "yates";
  auto* analyze = app.add_subcommand("analyze", "statistical report over a transcript store");
  analyze->add_option("--input", analyze_input, "transcripts.jsonl path")->required();
  analyze->add_option("--alpha", analyze_alpha, "significance level");
  analyze->add_option("--correction", analyze_correction, "2x2 chi-square correction")
      ->check(CLI::IsMember({"yates", "none"}));

  std::string report_input;
  std::string report_out = ".";
  bool report_figures = false;
  auto* report = app.add_subcommand("report", "emit figure data from a transcript store");
  report->add_option("--input", report_input, "transcripts.jsonl path")->required();
  report->add_flag("--figures", report_figures, "write figure-data CSV files");
  report->add_option("--out", report_out, "directory for figure-data files");

  std::string probe_config;
  std::string probe_topic;
  int probe_n = 100;
  auto* probe = app.add_subcommand("probe-bias", "measure the neutral model's topic leaning");
  probe->add_option("--config", probe_config, "experiment configuration file")->required();
  probe->add_option("--topic", probe_topic, "topic id to probe")->required();
  probe->add_option("--n", probe_n, "number of trials");

  std::string validate_config_path;
  auto* validate = app.add_subcommand("validate-config", "check a configuration file");
  validate->add_option("--config", validate_config_path, "experiment configuration file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (analyze->parsed()) return cmd_analyze(analyze_input, analyze_alpha, analyze_correction);
    if (report->parsed()) return cmd_report(report_input, report_figures, report_out);
    if (probe->parsed()) return cmd_probe_bias(probe_config, probe_topic, probe_n);
    if (validate->parsed()) return cmd_validate(validate_config_path);
  } catch (const agora::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const agora::StoreError& e) {
    std::cerr << "store error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const agora::AgoraError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitExecution;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return kExitExecution;
  }
  return kExitOk;
}
