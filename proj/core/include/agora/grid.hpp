#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "agora/config.hpp"
#include "agora/types.hpp"

namespace agora {

// Canonical identity tuple of one run:
// experiment|scenario|topic|framing|pairing|rep.
std::string run_identity(const DebateConfig& config);

// Stable 128-bit hash of the identity tuple, as 32 hex chars. Resume
// across machines keys on this, no database needed.
std::string run_id_for(const DebateConfig& config);

// Hash of the full canonical config JSON; a store refuses to mix grids
// whose configs differ under the same run id.
std::string config_fingerprint(const DebateConfig& config);

// Per-debate seed, derived from the master seed and the run identity so
// any single debate can be re-run in isolation.
std::uint64_t derive_debate_seed(std::uint64_t master_seed, const std::string& identity);

enum class RunStatus { Pending, Done, Failed };

struct RunRecord {
  std::string run_id;
  RunStatus status = RunStatus::Pending;
  std::string artifact_path;
};

// Scenario x topic x pairing x rep, in deterministic order.
std::vector<DebateConfig> build_experiment_a_grid(const ExperimentConfig& config);

// Ratio x topic x model x rep; both sides of a debate share one model.
std::vector<DebateConfig> build_experiment_b_grid(const ExperimentConfig& config);

}  // namespace agora
