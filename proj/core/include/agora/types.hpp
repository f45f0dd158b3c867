#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace agora {

// Model-parameter tier used as the intelligence proxy.
enum class SizeClass { Large, Small };

enum class Side { Proponent, Opponent };

enum class Framing { Original, Reversed };

enum class ProviderKind { OpenAiCompatible, AnthropicCompatible, Scripted };

// Relation of the proponent side's model tier to the opponent side's.
enum class IntelligenceRelation { Superior, Inferior, Equivalent };

enum class ExpectedConformity { Proponent, Opponent, Undetermined };

enum class Hypothesis { H1, H2, H3 };

// One debate subject. The proponent statement is the claim under debate;
// the reframed statement words the same subject in favour of the other
// side and doubles as the "cons" text for the bias probe.
struct Topic {
  std::string id;
  std::string title;
  std::string proponent_statement;
  std::optional<std::string> reframed_opponent_statement;
  std::string category;

  bool operator==(const Topic&) const = default;
};

struct ModelSpec {
  ProviderKind provider_kind = ProviderKind::Scripted;
  std::string model_id;
  SizeClass size_class = SizeClass::Large;
  double temperature = 0.7;
  int max_tokens = 256;
  // Live providers: endpoint and the *name* of the environment variable
  // holding the credential (never the credential itself).
  std::string base_url;
  std::string api_key_env;
  // Scripted provider: path to the script file.
  std::string script_ref;

  bool operator==(const ModelSpec&) const = default;
};

// One debate condition. Majority ratio and intelligence relation are
// derived from the counts and size classes, never stored, so they cannot
// drift out of sync.
struct Scenario {
  std::string id;
  int proponent_count = 1;
  SizeClass proponent_size = SizeClass::Large;
  int opponent_count = 1;
  SizeClass opponent_size = SizeClass::Large;
  ExpectedConformity expected_conformity = ExpectedConformity::Undetermined;
  std::vector<Hypothesis> related_hypotheses;

  double majority_ratio() const;
  IntelligenceRelation intelligence() const;

  bool operator==(const Scenario&) const = default;
};

// Which model family supplies the Large and Small debater models.
struct ProviderPairing {
  std::string id;
  ModelSpec large;
  ModelSpec small;

  bool operator==(const ProviderPairing&) const = default;
};

struct DebateConfig {
  std::string experiment;  // "a" or "b"
  Scenario scenario;
  Topic topic;
  Framing framing = Framing::Original;
  ProviderPairing pairing;
  ModelSpec neutral_model;
  int rep_index = 0;
  std::uint64_t seed = 0;
  int max_turns = 3;
  int slots_per_side_per_turn = 3;

  bool operator==(const DebateConfig&) const = default;
};

// The neutral moderator's per-turn selection.
struct Verdict {
  std::string selected_agent_id;
  Side selected_side = Side::Proponent;
  std::string rationale;

  bool operator==(const Verdict&) const = default;
};

struct Utterance {
  std::string agent_id;
  Side side = Side::Proponent;
  std::string model_id;
  std::string text;

  bool operator==(const Utterance&) const = default;
};

struct TurnRecord {
  int index = 0;  // 1-based
  std::vector<Utterance> utterances;
  Verdict verdict;

  bool operator==(const TurnRecord&) const = default;
};

struct EarlyTermination {
  int turn_index = 0;  // 1-based
  std::string conceding_agent_id;

  bool operator==(const EarlyTermination&) const = default;
};

struct DebateOutcome {
  int proponent_supported_turns = 0;
  int total_evaluated_turns = 0;

  bool operator==(const DebateOutcome&) const = default;
};

struct DebateTranscript {
  DebateConfig config;
  std::vector<TurnRecord> turns;
  std::optional<EarlyTermination> early_termination;
  DebateOutcome outcome;

  bool operator==(const DebateTranscript&) const = default;
};

struct ValidationIssue {
  std::string path;
  std::string message;

  bool operator==(const ValidationIssue&) const = default;
};

// Returns every violated invariant with a path to the offending field;
// empty means the config is valid.
std::vector<ValidationIssue> validate_config(const DebateConfig& config);

// Per-config issues plus duplicate-run-identity checks across the grid.
std::vector<ValidationIssue> validate_grid(const std::vector<DebateConfig>& grid);

// The ten canonical Experiment A scenario rows (a..j).
const std::vector<Scenario>& experiment_a_scenarios();

// The six Experiment B ratio rows (1:2 .. 8:1); both sides share one
// size class because intelligence is held constant in that experiment.
std::vector<Scenario> experiment_b_scenarios(SizeClass shared_size);

// Enum <-> string helpers (stable wire spellings).
std::string to_string(SizeClass v);
std::string to_string(Side v);
std::string to_string(Framing v);
std::string to_string(ProviderKind v);
std::string to_string(IntelligenceRelation v);
std::string to_string(ExpectedConformity v);
std::string to_string(Hypothesis v);
SizeClass size_class_from_string(const std::string& s);
Side side_from_string(const std::string& s);
Framing framing_from_string(const std::string& s);
ProviderKind provider_kind_from_string(const std::string& s);
ExpectedConformity expected_conformity_from_string(const std::string& s);
Hypothesis hypothesis_from_string(const std::string& s);

// Compact ratio label, e.g. 2 -> "2", 0.5 -> "0.5", 0.125 -> "0.125".
std::string format_ratio(double ratio);

}  // namespace agora
