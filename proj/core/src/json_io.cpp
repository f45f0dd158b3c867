#include "agora/json_io.hpp"

#include "agora/errors.hpp"

namespace agora {

using nlohmann::json;

json to_json(const Topic& v) {
  json j = {{"id", v.id},
            {"title", v.title},
            {"proponent_statement", v.proponent_statement},
            {"category", v.category}};
  if (v.reframed_opponent_statement.has_value()) {
    j["reframed_opponent_statement"] = *v.reframed_opponent_statement;
  }
  return j;
}

Topic topic_from_json(const json& j) {
  Topic t;
  t.id = j.at("id").get<std::string>();
  t.title = j.value("title", t.id);
  t.proponent_statement = j.at("proponent_statement").get<std::string>();
  if (j.contains("reframed_opponent_statement")) {
    t.reframed_opponent_statement = j["reframed_opponent_statement"].get<std::string>();
  }
  t.category = j.value("category", "");
  return t;
}

json to_json(const ModelSpec& v) {
  json j = {{"provider_kind", to_string(v.provider_kind)},
            {"model_id", v.model_id},
            {"size_class", to_string(v.size_class)},
            {"temperature", v.temperature},
            {"max_tokens", v.max_tokens}};
  if (!v.base_url.empty()) j["base_url"] = v.base_url;
  if (!v.api_key_env.empty()) j["api_key_env"] = v.api_key_env;
  if (!v.script_ref.empty()) j["script_ref"] = v.script_ref;
  return j;
}

ModelSpec model_spec_from_json(const json& j) {
  ModelSpec m;
  m.provider_kind = provider_kind_from_string(j.at("provider_kind").get<std::string>());
  m.model_id = j.at("model_id").get<std::string>();
  m.size_class = size_class_from_string(j.at("size_class").get<std::string>());
  m.temperature = j.value("temperature", 0.7);
  m.max_tokens = j.value("max_tokens", 256);
  m.base_url = j.value("base_url", "");
  m.api_key_env = j.value("api_key_env", "");
  m.script_ref = j.value("script_ref", "");
  return m;
}

json to_json(const Scenario& v) {
  json hyp = json::array();
  for (auto h : v.related_hypotheses) hyp.push_back(to_string(h));
  return {{"id", v.id},
          {"proponent_count", v.proponent_count},
          {"proponent_size", to_string(v.proponent_size)},
          {"opponent_count", v.opponent_count},
          {"opponent_size", to_string(v.opponent_size)},
          {"expected_conformity", to_string(v.expected_conformity)},
          {"related_hypotheses", hyp}};
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  s.id = j.at("id").get<std::string>();
  s.proponent_count = j.at("proponent_count").get<int>();
  s.proponent_size = size_class_from_string(j.at("proponent_size").get<std::string>());
  s.opponent_count = j.at("opponent_count").get<int>();
  s.opponent_size = size_class_from_string(j.at("opponent_size").get<std::string>());
  s.expected_conformity =
      expected_conformity_from_string(j.value("expected_conformity", "undetermined"));
  if (j.contains("related_hypotheses")) {
    for (const auto& h : j["related_hypotheses"]) {
      s.related_hypotheses.push_back(hypothesis_from_string(h.get<std::string>()));
    }
  }
  return s;
}

json to_json(const ProviderPairing& v) {
  return {{"id", v.id}, {"large", to_json(v.large)}, {"small", to_json(v.small)}};
}

ProviderPairing pairing_from_json(const json& j) {
  ProviderPairing p;
  p.id = j.at("id").get<std::string>();
  p.large = model_spec_from_json(j.at("large"));
  p.small = model_spec_from_json(j.at("small"));
  return p;
}

json to_json(const DebateConfig& v) {
  return {{"experiment", v.experiment},
          {"scenario", to_json(v.scenario)},
          {"topic", to_json(v.topic)},
          {"framing", to_string(v.framing)},
          {"pairing", to_json(v.pairing)},
          {"neutral_model", to_json(v.neutral_model)},
          {"rep_index", v.rep_index},
          {"seed", v.seed},
          {"max_turns", v.max_turns},
          {"slots_per_side_per_turn", v.slots_per_side_per_turn}};
}

DebateConfig debate_config_from_json(const json& j) {
  DebateConfig c;
  c.experiment = j.at("experiment").get<std::string>();
  c.scenario = scenario_from_json(j.at("scenario"));
  c.topic = topic_from_json(j.at("topic"));
  c.framing = framing_from_string(j.at("framing").get<std::string>());
  c.pairing = pairing_from_json(j.at("pairing"));
  c.neutral_model = model_spec_from_json(j.at("neutral_model"));
  c.rep_index = j.at("rep_index").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.max_turns = j.value("max_turns", 3);
  c.slots_per_side_per_turn = j.value("slots_per_side_per_turn", 3);
  return c;
}

json to_json(const DebateTranscript& v) {
  json turns = json::array();
  for (const auto& t : v.turns) {
    json utterances = json::array();
    for (const auto& u : t.utterances) {
      utterances.push_back({{"agent_id", u.agent_id},
                            {"side", to_string(u.side)},
                            {"model_id", u.model_id},
                            {"text", u.text}});
    }
    turns.push_back({{"index", t.index},
                     {"utterances", utterances},
                     {"verdict",
                      {{"selected_agent_id", t.verdict.selected_agent_id},
                       {"selected_side", to_string(t.verdict.selected_side)},
                       {"rationale", t.verdict.rationale}}}});
  }
  json early = nullptr;
  if (v.early_termination.has_value()) {
    early = {{"turn_index", v.early_termination->turn_index},
             {"conceding_agent_id", v.early_termination->conceding_agent_id}};
  }
  return {{"config", to_json(v.config)},
          {"turns", turns},
          {"early_termination", early},
          {"outcome",
           {{"proponent_supported_turns", v.outcome.proponent_supported_turns},
            {"total_evaluated_turns", v.outcome.total_evaluated_turns}}}};
}

DebateTranscript transcript_from_json(const json& j) {
  DebateTranscript out;
  out.config = debate_config_from_json(j.at("config"));
  for (const auto& jt : j.at("turns")) {
    TurnRecord t;
    t.index = jt.at("index").get<int>();
    for (const auto& ju : jt.at("utterances")) {
      t.utterances.push_back({ju.at("agent_id").get<std::string>(),
                              side_from_string(ju.at("side").get<std::string>()),
                              ju.at("model_id").get<std::string>(),
                              ju.at("text").get<std::string>()});
    }
    const auto& jv = jt.at("verdict");
    t.verdict = {jv.at("selected_agent_id").get<std::string>(),
                 side_from_string(jv.at("selected_side").get<std::string>()),
                 jv.at("rationale").get<std::string>()};
    out.turns.push_back(std::move(t));
  }
  if (j.contains("early_termination") && !j["early_termination"].is_null()) {
    out.early_termination =
        EarlyTermination{j["early_termination"].at("turn_index").get<int>(),
                         j["early_termination"].at("conceding_agent_id").get<std::string>()};
  }
  out.outcome = {j.at("outcome").at("proponent_supported_turns").get<int>(),
                 j.at("outcome").at("total_evaluated_turns").get<int>()};
  return out;
}

json to_json(const ExperimentConfig& v) {
  json topics = json::array();
  for (const auto& t : v.topics) topics.push_back(to_json(t));
  json pairings = json::array();
  for (const auto& p : v.pairings) pairings.push_back(to_json(p));
  json b_models = json::array();
  for (const auto& m : v.experiment_b_models) b_models.push_back(to_json(m));
  json run = {{"master_seed", v.run.master_seed},
              {"reps", v.run.reps},
              {"concurrency", v.run.concurrency},
              {"output_dir", v.run.output_dir},
              {"framing", to_string(v.run.framing)},
              {"max_concurrent_per_backend", v.run.max_concurrent_per_backend}};
  if (v.run.audit_log.has_value()) run["audit_log"] = *v.run.audit_log;
  if (v.run.requests_per_second.has_value()) {
    run["requests_per_second"] = *v.run.requests_per_second;
  }
  return {{"topics", topics},
          {"pairings", pairings},
          {"experiment_b_models", b_models},
          {"neutral_model", to_json(v.neutral_model)},
          {"run", run}};
}

ExperimentConfig experiment_config_from_json(const json& j) {
  ExperimentConfig c;
  for (const auto& jt : j.at("topics")) c.topics.push_back(topic_from_json(jt));
  if (j.contains("pairings")) {
    for (const auto& jp : j["pairings"]) c.pairings.push_back(pairing_from_json(jp));
  }
  if (j.contains("experiment_b_models")) {
    for (const auto& jm : j["experiment_b_models"]) {
      c.experiment_b_models.push_back(model_spec_from_json(jm));
    }
  }
  c.neutral_model = model_spec_from_json(j.at("neutral_model"));
  if (j.contains("run")) {
    const auto& jr = j["run"];
    c.run.master_seed = jr.value("master_seed", 0ULL);
    c.run.reps = jr.value("reps", 10);
    c.run.concurrency = jr.value("concurrency", 1);
    c.run.output_dir = jr.value("output_dir", "");
    c.run.framing = framing_from_string(jr.value("framing", "original"));
    if (jr.contains("audit_log")) c.run.audit_log = jr["audit_log"].get<std::string>();
    if (jr.contains("requests_per_second")) {
      c.run.requests_per_second = jr["requests_per_second"].get<double>();
    }
    c.run.max_concurrent_per_backend = jr.value("max_concurrent_per_backend", 8);
  }
  return c;
}

}  // namespace agora
