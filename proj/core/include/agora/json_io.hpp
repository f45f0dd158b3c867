#pragma once

#include <nlohmann/json.hpp>

#include "agora/config.hpp"
#include "agora/types.hpp"

namespace agora {

// JSON codecs for the domain vocabulary. Keys are stable snake_case; maps
// serialize with sorted keys, so the encoded form is canonical.
nlohmann::json to_json(const Topic& v);
Topic topic_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ModelSpec& v);
ModelSpec model_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Scenario& v);
Scenario scenario_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ProviderPairing& v);
ProviderPairing pairing_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DebateConfig& v);
DebateConfig debate_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DebateTranscript& v);
DebateTranscript transcript_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ExperimentConfig& v);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

}  // namespace agora
