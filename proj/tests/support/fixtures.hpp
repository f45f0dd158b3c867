#pragma once

// Shared test fixtures: canned domain objects and deterministic in-memory
// backends for driving the protocol without a network.

#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "agora/backend.hpp"
#include "agora/config.hpp"
#include "agora/grid.hpp"
#include "agora/hash.hpp"
#include "agora/types.hpp"

namespace agora::testing {

inline Topic make_topic(const std::string& id = "basic_income") {
  Topic t;
  t.id = id;
  t.title = "Basic Income";
  t.proponent_statement =
      "Providing universal basic income to all citizens is an essential measure to reduce "
      "inequality and strengthen social stability.";
  t.reframed_opponent_statement =
      "While UBI can help address inequality, implementing it universally may reduce work "
      "incentives for some and make it harder to fund more targeted, needs-based support "
      "systems.";
  t.category = "economic policy";
  return t;
}

inline ModelSpec make_scripted_spec(const std::string& model_id, SizeClass size,
                                    int max_tokens = 256) {
  ModelSpec m;
  m.provider_kind = ProviderKind::Scripted;
  m.model_id = model_id;
  m.size_class = size;
  m.max_tokens = max_tokens;
  m.script_ref = "unused.json";  // tests resolve backends directly
  return m;
}

inline ProviderPairing make_scripted_pairing(const std::string& id = "scripted") {
  return {id, make_scripted_spec(id + "-large", SizeClass::Large),
          make_scripted_spec(id + "-small", SizeClass::Small)};
}

inline Scenario scenario_by_id(const std::string& id) {
  for (const auto& s : experiment_a_scenarios()) {
    if (s.id == id) return s;
  }
  throw std::runtime_error("no scenario " + id);
}

inline DebateConfig make_config(const std::string& scenario_id = "a",
                                std::uint64_t seed = 42,
                                const std::string& topic_id = "basic_income") {
  DebateConfig c;
  c.experiment = "a";
  c.scenario = scenario_by_id(scenario_id);
  c.topic = make_topic(topic_id);
  c.pairing = make_scripted_pairing();
  c.neutral_model = make_scripted_spec("scripted-neutral", SizeClass::Large, 1024);
  c.rep_index = 0;
  c.seed = seed;
  return c;
}

inline ExperimentConfig make_experiment_config(int reps, int pairings = 1, int topics = 5) {
  ExperimentConfig cfg;
  const char* topic_ids[5] = {"basic_income", "immigration_policy", "death_penalty",
                              "educational_equality", "gender_wage_gap"};
  for (int i = 0; i < topics; i++) cfg.topics.push_back(make_topic(topic_ids[i % 5]));
  for (int p = 0; p < pairings; p++) {
    cfg.pairings.push_back(make_scripted_pairing("scripted" + std::to_string(p)));
  }
  cfg.experiment_b_models.push_back(make_scripted_spec("scripted-b-large", SizeClass::Large));
  cfg.experiment_b_models.push_back(make_scripted_spec("scripted-b-small", SizeClass::Small));
  cfg.neutral_model = make_scripted_spec("scripted-neutral", SizeClass::Large, 1024);
  cfg.run.reps = reps;
  cfg.run.master_seed = 20240811;
  return cfg;
}

// Minimal valid transcript with the given verdict pattern, e.g. "PPO".
inline DebateTranscript make_pattern_transcript(const std::string& pattern,
                                                const std::string& scenario_id = "a",
                                                int rep = 0,
                                                const std::string& topic_id = "basic_income") {
  DebateConfig config = make_config(scenario_id, 42, topic_id);
  config.rep_index = rep;
  DebateTranscript t;
  t.config = config;
  int pro = 0;
  for (std::size_t i = 0; i < pattern.size(); i++) {
    const bool is_pro = pattern[i] == 'P' || pattern[i] == 'p';
    TurnRecord turn;
    turn.index = static_cast<int>(i + 1);
    turn.utterances.push_back({"pro_1", Side::Proponent, "scripted-large", "arg"});
    turn.utterances.push_back({"opp_1", Side::Opponent, "scripted-large", "arg"});
    turn.verdict = {is_pro ? "pro_1" : "opp_1",
                    is_pro ? Side::Proponent : Side::Opponent, "because"};
    if (is_pro) pro++;
    t.turns.push_back(turn);
  }
  t.outcome = {pro, static_cast<int>(pattern.size())};
  return t;
}

// Deterministic in-memory backend. Debaters get short canned arguments;
// the moderator votes for the proponent side with a probability looked up
// by run id (seeded per (run, turn), so replays are exact).
class FixtureBackend : public ChatBackend {
 public:
  explicit FixtureBackend(double default_pro_probability = 0.5)
      : default_p_(default_pro_probability) {}

  void set_run_probability(const std::string& run_id, double p) {
    run_p_[run_id] = p;
  }

  Completion complete(const ModelSpec& spec, const ChatRequest& request,
                      const RequestTag& tag) override {
    (void)spec;
    (void)request;
    calls_++;
    if (tag.agent_id == "moderator") {
      double p = default_p_;
      if (auto it = run_p_.find(tag.run_id); it != run_p_.end()) p = it->second;
      std::mt19937_64 rng(
          splitmix64(murmur3_x64_128(tag.run_id, 0xfeedULL).lo ^ (tag.turn * 0x9e37ULL)));
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const char* id = u < p ? "pro_1" : "opp_1";
      return {"The turn is summarized here.\nMOST_PERSUASIVE: " + std::string(id), "", {}};
    }
    if (tag.agent_id == "probe") {
      return {"Pros", "", {}};
    }
    return {"Argument " + std::to_string(tag.call_index + 1) + " by " + tag.agent_id + ".",
            "", {}};
  }

  long calls() const { return calls_.load(); }

  BackendResolver resolver() {
    return [this](const ModelSpec&) -> ChatBackend& { return *this; };
  }

 private:
  double default_p_;
  std::map<std::string, double> run_p_;
  std::atomic<long> calls_{0};
};

// Wrapper that records every request for prompt-fidelity assertions.
class RecordingBackend : public ChatBackend {
 public:
  struct Call {
    ModelSpec spec;
    ChatRequest request;
    RequestTag tag;
  };

  explicit RecordingBackend(ChatBackend& inner) : inner_(inner) {}

  Completion complete(const ModelSpec& spec, const ChatRequest& request,
                      const RequestTag& tag) override {
    {
      std::lock_guard lock(mu_);
      calls_.push_back({spec, request, tag});
    }
    return inner_.complete(spec, request, tag);
  }

  std::vector<Call> calls() {
    std::lock_guard lock(mu_);
    return calls_;
  }

  BackendResolver resolver() {
    return [this](const ModelSpec&) -> ChatBackend& { return *this; };
  }

 private:
  ChatBackend& inner_;
  std::mutex mu_;
  std::vector<Call> calls_;
};

// Tracks the number of simultaneously executing completions.
class InstrumentedBackend : public ChatBackend {
 public:
  explicit InstrumentedBackend(ChatBackend& inner, int hold_micros = 200)
      : inner_(inner), hold_micros_(hold_micros) {}

  Completion complete(const ModelSpec& spec, const ChatRequest& request,
                      const RequestTag& tag) override {
    const int now = ++in_flight_;
    int seen = max_in_flight_.load();
    while (now > seen && !max_in_flight_.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::microseconds(hold_micros_));
    auto out = inner_.complete(spec, request, tag);
    --in_flight_;
    return out;
  }

  int max_in_flight() const { return max_in_flight_.load(); }

  BackendResolver resolver() {
    return [this](const ModelSpec&) -> ChatBackend& { return *this; };
  }

 private:
  ChatBackend& inner_;
  int hold_micros_;
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_in_flight_{0};
};

}  // namespace agora::testing
