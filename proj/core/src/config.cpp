#include "agora/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "agora/errors.hpp"
#include "agora/json_io.hpp"

namespace agora {

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open configuration file '" + path + "'");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed configuration file '" + path + "': " + e.what());
  }
  ExperimentConfig cfg;
  try {
    cfg = experiment_config_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("configuration file '" + path + "' is missing fields: " + e.what());
  }
  // Script paths resolve relative to the config file, so a config tree is
  // relocatable as a unit.
  const auto base = std::filesystem::path(path).parent_path();
  auto resolve = [&](ModelSpec& spec) {
    if (!spec.script_ref.empty() && std::filesystem::path(spec.script_ref).is_relative()) {
      spec.script_ref = (base / spec.script_ref).lexically_normal().string();
    }
  };
  for (auto& p : cfg.pairings) {
    resolve(p.large);
    resolve(p.small);
  }
  for (auto& m : cfg.experiment_b_models) resolve(m);
  resolve(cfg.neutral_model);
  return cfg;
}

std::vector<ValidationIssue> validate_experiment_config(const ExperimentConfig& config) {
  std::vector<ValidationIssue> out;
  if (config.topics.empty()) {
    out.push_back({"topics", "at least one topic is required"});
  }
  std::set<std::string> topic_ids;
  for (std::size_t i = 0; i < config.topics.size(); i++) {
    const auto& t = config.topics[i];
    const std::string path = "topics[" + std::to_string(i) + "]";
    if (t.id.empty()) out.push_back({path + ".id", "must be non-empty"});
    if (t.proponent_statement.empty()) {
      out.push_back({path + ".proponent_statement", "must be non-empty"});
    }
    if (!topic_ids.insert(t.id).second) {
      out.push_back({path + ".id", "duplicate topic id '" + t.id + "'"});
    }
  }
  std::set<std::string> pairing_ids;
  for (std::size_t i = 0; i < config.pairings.size(); i++) {
    const auto& p = config.pairings[i];
    const std::string path = "pairings[" + std::to_string(i) + "]";
    if (p.id.empty()) out.push_back({path + ".id", "must be non-empty"});
    if (!pairing_ids.insert(p.id).second) {
      out.push_back({path + ".id", "duplicate pairing id '" + p.id + "'"});
    }
    if (p.large.size_class != SizeClass::Large) {
      out.push_back({path + ".large.size_class", "must be 'large'"});
    }
    if (p.small.size_class != SizeClass::Small) {
      out.push_back({path + ".small.size_class", "must be 'small'"});
    }
  }
  std::set<std::string> b_ids;
  for (std::size_t i = 0; i < config.experiment_b_models.size(); i++) {
    const auto& m = config.experiment_b_models[i];
    if (m.model_id.empty()) {
      out.push_back({"experiment_b_models[" + std::to_string(i) + "].model_id",
                     "must be non-empty"});
    }
    if (!b_ids.insert(m.model_id).second) {
      out.push_back({"experiment_b_models[" + std::to_string(i) + "].model_id",
                     "duplicate model id '" + m.model_id + "'"});
    }
  }
  if (config.run.reps < 1) {
    out.push_back({"run.reps", "must be at least 1"});
  }
  if (config.run.concurrency < 1) {
    out.push_back({"run.concurrency", "must be at least 1"});
  }
  return out;
}

}  // namespace agora
