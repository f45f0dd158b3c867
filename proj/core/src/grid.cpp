#include "agora/grid.hpp"

#include <sstream>

#include "agora/errors.hpp"
#include "agora/hash.hpp"
#include "agora/json_io.hpp"

namespace agora {

std::string run_identity(const DebateConfig& config) {
  std::ostringstream os;
  os << config.experiment << '|' << config.scenario.id << '|' << config.topic.id << '|'
     << to_string(config.framing) << '|' << config.pairing.id << '|' << config.rep_index;
  return os.str();
}

std::string run_id_for(const DebateConfig& config) {
  return to_hex(murmur3_x64_128(run_identity(config)));
}

std::string config_fingerprint(const DebateConfig& config) {
  return to_hex(murmur3_x64_128(to_json(config).dump()));
}

std::uint64_t derive_debate_seed(std::uint64_t master_seed, const std::string& identity) {
  return murmur3_x64_128(identity, master_seed).lo;
}

namespace {

DebateConfig make_config(const std::string& experiment, const Scenario& scenario,
                         const Topic& topic, const ProviderPairing& pairing,
                         const ExperimentConfig& cfg, int rep) {
  DebateConfig c;
  c.experiment = experiment;
  c.scenario = scenario;
  c.topic = topic;
  c.framing = cfg.run.framing;
  c.pairing = pairing;
  c.neutral_model = cfg.neutral_model;
  c.rep_index = rep;
  c.seed = derive_debate_seed(cfg.run.master_seed, run_identity(c));
  return c;
}

}  // namespace

std::vector<DebateConfig> build_experiment_a_grid(const ExperimentConfig& cfg) {
  if (cfg.topics.empty()) {
    throw ConfigError("experiment A grid requires at least one topic");
  }
  if (cfg.pairings.empty()) {
    throw ConfigError("experiment A grid requires at least one provider pairing");
  }
  if (cfg.run.reps < 1) {
    throw ConfigError("experiment A grid requires reps >= 1");
  }
  std::vector<DebateConfig> grid;
  grid.reserve(experiment_a_scenarios().size() * cfg.topics.size() * cfg.pairings.size() *
               cfg.run.reps);
  for (const auto& scenario : experiment_a_scenarios()) {
    for (const auto& topic : cfg.topics) {
      for (const auto& pairing : cfg.pairings) {
        for (int rep = 0; rep < cfg.run.reps; rep++) {
          grid.push_back(make_config("a", scenario, topic, pairing, cfg, rep));
        }
      }
    }
  }
  return grid;
}

std::vector<DebateConfig> build_experiment_b_grid(const ExperimentConfig& cfg) {
  if (cfg.topics.empty()) {
    throw ConfigError("experiment B grid requires at least one topic");
  }
  if (cfg.experiment_b_models.empty()) {
    throw ConfigError("experiment B grid requires at least one model");
  }
  if (cfg.run.reps < 1) {
    throw ConfigError("experiment B grid requires reps >= 1");
  }
  std::vector<DebateConfig> grid;
  for (const auto& model : cfg.experiment_b_models) {
    // Intelligence held constant: every agent in the run uses this model,
    // so the pairing carries it in both tiers.
    ProviderPairing pairing;
    pairing.id = model.model_id;
    pairing.large = model;
    pairing.large.size_class = SizeClass::Large;
    pairing.small = model;
    pairing.small.size_class = SizeClass::Small;
    for (const auto& scenario : experiment_b_scenarios(model.size_class)) {
      for (const auto& topic : cfg.topics) {
        for (int rep = 0; rep < cfg.run.reps; rep++) {
          grid.push_back(make_config("b", scenario, topic, pairing, cfg, rep));
        }
      }
    }
  }
  return grid;
}

}  // namespace agora
