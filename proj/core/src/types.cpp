#include "agora/types.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "agora/errors.hpp"

namespace agora {

double Scenario::majority_ratio() const {
  return static_cast<double>(proponent_count) / static_cast<double>(opponent_count);
}

IntelligenceRelation Scenario::intelligence() const {
  if (proponent_size == SizeClass::Large && opponent_size == SizeClass::Small) {
    return IntelligenceRelation::Superior;
  }
  if (proponent_size == SizeClass::Small && opponent_size == SizeClass::Large) {
    return IntelligenceRelation::Inferior;
  }
  return IntelligenceRelation::Equivalent;
}

const std::vector<Scenario>& experiment_a_scenarios() {
  using enum SizeClass;
  using enum ExpectedConformity;
  using enum Hypothesis;
  static const std::vector<Scenario> rows = {
      {"a", 2, Large, 1, Large, Proponent, {H1}},
      {"b", 1, Large, 2, Large, Opponent, {H1}},
      {"c", 2, Small, 1, Small, Proponent, {H1}},
      {"d", 1, Small, 2, Small, Opponent, {H1}},
      {"e", 1, Large, 1, Small, Proponent, {H2}},
      {"f", 1, Small, 1, Large, Opponent, {H2}},
      {"g", 2, Large, 1, Small, Proponent, {H1, H2}},
      {"h", 1, Small, 2, Large, Opponent, {H1, H2}},
      {"i", 2, Small, 1, Large, Undetermined, {H1, H2}},
      {"j", 1, Large, 2, Small, Undetermined, {H1, H2}},
  };
  return rows;
}

std::vector<Scenario> experiment_b_scenarios(SizeClass shared_size) {
  std::vector<Scenario> rows;
  for (int r : {2, 4, 8}) {
    rows.push_back({std::string("1:") + std::to_string(r), 1, shared_size, r, shared_size,
                    ExpectedConformity::Opponent, {Hypothesis::H3}});
  }
  for (int r : {2, 4, 8}) {
    rows.push_back({std::to_string(r) + ":1", r, shared_size, 1, shared_size,
                    ExpectedConformity::Proponent, {Hypothesis::H3}});
  }
  return rows;
}

namespace {

void validate_model_spec(const ModelSpec& spec, const std::string& path,
                         std::vector<ValidationIssue>& out) {
  if (spec.model_id.empty()) {
    out.push_back({path + ".model_id", "must be non-empty"});
  }
  if (!(spec.temperature >= 0.0 && spec.temperature <= 2.0)) {
    out.push_back({path + ".temperature", "must be in [0, 2]"});
  }
  if (spec.max_tokens <= 0) {
    out.push_back({path + ".max_tokens", "must be positive"});
  }
  if (spec.provider_kind == ProviderKind::Scripted) {
    if (spec.script_ref.empty()) {
      out.push_back({path + ".script_ref", "scripted model requires a script reference"});
    }
  } else {
    if (spec.base_url.empty()) {
      out.push_back({path + ".base_url", "live provider requires a base URL"});
    }
  }
}

}  // namespace

std::vector<ValidationIssue> validate_config(const DebateConfig& config) {
  std::vector<ValidationIssue> out;
  if (config.experiment.empty()) {
    out.push_back({"experiment", "must be non-empty"});
  }
  if (config.scenario.id.empty()) {
    out.push_back({"scenario.id", "must be non-empty"});
  }
  if (config.scenario.proponent_count <= 0) {
    out.push_back({"scenario.proponent_count", "counts must be positive"});
  }
  if (config.scenario.opponent_count <= 0) {
    out.push_back({"scenario.opponent_count", "counts must be positive"});
  }
  if (config.topic.id.empty()) {
    out.push_back({"topic.id", "must be non-empty"});
  }
  if (config.topic.proponent_statement.empty()) {
    out.push_back({"topic.proponent_statement", "must be non-empty"});
  }
  if (config.framing == Framing::Reversed &&
      (!config.topic.reframed_opponent_statement.has_value() ||
       config.topic.reframed_opponent_statement->empty())) {
    out.push_back({"topic.reframed_opponent_statement",
                   "reversed framing requested but topic '" + config.topic.id +
                       "' has no reframed statement"});
  }
  if (config.pairing.id.empty()) {
    out.push_back({"pairing.id", "must be non-empty"});
  }
  if (config.pairing.large.size_class != SizeClass::Large) {
    out.push_back({"pairing.large.size_class", "must be 'large'"});
  }
  if (config.pairing.small.size_class != SizeClass::Small) {
    out.push_back({"pairing.small.size_class", "must be 'small'"});
  }
  validate_model_spec(config.pairing.large, "pairing.large", out);
  validate_model_spec(config.pairing.small, "pairing.small", out);
  validate_model_spec(config.neutral_model, "neutral_model", out);
  if (config.rep_index < 0) {
    out.push_back({"rep_index", "must be non-negative"});
  }
  if (config.max_turns < 1) {
    out.push_back({"max_turns", "must be at least 1"});
  }
  if (config.slots_per_side_per_turn < 1) {
    out.push_back({"slots_per_side_per_turn", "must be at least 1"});
  }
  return out;
}

namespace {

std::string run_identity_of(const DebateConfig& c) {
  std::ostringstream os;
  os << c.experiment << '|' << c.scenario.id << '|' << c.topic.id << '|'
     << to_string(c.framing) << '|' << c.pairing.id << '|' << c.rep_index;
  return os.str();
}

}  // namespace

std::vector<ValidationIssue> validate_grid(const std::vector<DebateConfig>& grid) {
  std::vector<ValidationIssue> out;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < grid.size(); i++) {
    const std::string prefix = "grid[" + std::to_string(i) + "].";
    for (auto& issue : validate_config(grid[i])) {
      out.push_back({prefix + issue.path, issue.message});
    }
    const std::string ident = run_identity_of(grid[i]);
    auto [it, inserted] = seen.emplace(ident, i);
    if (!inserted) {
      out.push_back({prefix + "run_identity",
                     "duplicate run identity '" + ident + "' (also at grid[" +
                         std::to_string(it->second) + "])"});
    }
  }
  return out;
}

std::string to_string(SizeClass v) {
  return v == SizeClass::Large ? "large" : "small";
}

std::string to_string(Side v) {
  return v == Side::Proponent ? "proponent" : "opponent";
}

std::string to_string(Framing v) {
  return v == Framing::Original ? "original" : "reversed";
}

std::string to_string(ProviderKind v) {
  switch (v) {
    case ProviderKind::OpenAiCompatible: return "openai-compatible";
    case ProviderKind::AnthropicCompatible: return "anthropic-compatible";
    case ProviderKind::Scripted: return "scripted";
  }
  return "scripted";
}

std::string to_string(IntelligenceRelation v) {
  switch (v) {
    case IntelligenceRelation::Superior: return "superior";
    case IntelligenceRelation::Inferior: return "inferior";
    case IntelligenceRelation::Equivalent: return "equivalent";
  }
  return "equivalent";
}

std::string to_string(ExpectedConformity v) {
  switch (v) {
    case ExpectedConformity::Proponent: return "proponent";
    case ExpectedConformity::Opponent: return "opponent";
    case ExpectedConformity::Undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string to_string(Hypothesis v) {
  switch (v) {
    case Hypothesis::H1: return "H1";
    case Hypothesis::H2: return "H2";
    case Hypothesis::H3: return "H3";
  }
  return "H1";
}

SizeClass size_class_from_string(const std::string& s) {
  if (s == "large") return SizeClass::Large;
  if (s == "small") return SizeClass::Small;
  throw ConfigError("unknown size class '" + s + "'");
}

Side side_from_string(const std::string& s) {
  if (s == "proponent") return Side::Proponent;
  if (s == "opponent") return Side::Opponent;
  throw ConfigError("unknown side '" + s + "'");
}

Framing framing_from_string(const std::string& s) {
  if (s == "original") return Framing::Original;
  if (s == "reversed") return Framing::Reversed;
  throw ConfigError("unknown framing '" + s + "'");
}

ProviderKind provider_kind_from_string(const std::string& s) {
  if (s == "openai-compatible") return ProviderKind::OpenAiCompatible;
  if (s == "anthropic-compatible") return ProviderKind::AnthropicCompatible;
  if (s == "scripted") return ProviderKind::Scripted;
  throw ConfigError("unknown provider kind '" + s + "'");
}

ExpectedConformity expected_conformity_from_string(const std::string& s) {
  if (s == "proponent") return ExpectedConformity::Proponent;
  if (s == "opponent") return ExpectedConformity::Opponent;
  if (s == "undetermined") return ExpectedConformity::Undetermined;
  throw ConfigError("unknown expected conformity '" + s + "'");
}

Hypothesis hypothesis_from_string(const std::string& s) {
  if (s == "H1") return Hypothesis::H1;
  if (s == "H2") return Hypothesis::H2;
  if (s == "H3") return Hypothesis::H3;
  throw ConfigError("unknown hypothesis '" + s + "'");
}

std::string format_ratio(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", ratio);
  return buf;
}

}  // namespace agora
