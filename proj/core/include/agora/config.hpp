#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agora/types.hpp"

namespace agora {

struct RunParameters {
  std::uint64_t master_seed = 0;
  int reps = 10;
  int concurrency = 1;
  std::string output_dir;
  Framing framing = Framing::Original;
  std::optional<std::string> audit_log;
  std::optional<double> requests_per_second;
  int max_concurrent_per_backend = 8;

  bool operator==(const RunParameters&) const = default;
};

// The experiment configuration file: topics, provider pairings, the
// neutral model, per-run parameters. Credentials enter only as the names
// of environment variables.
struct ExperimentConfig {
  std::vector<Topic> topics;
  std::vector<ProviderPairing> pairings;
  std::vector<ModelSpec> experiment_b_models;
  ModelSpec neutral_model;
  RunParameters run;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig load_experiment_config(const std::string& path);

std::vector<ValidationIssue> validate_experiment_config(const ExperimentConfig& config);

}  // namespace agora
