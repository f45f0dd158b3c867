#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "agora/backend.hpp"
#include "agora/types.hpp"

namespace agora {

struct Debater {
  std::string id;
  Side side = Side::Proponent;
  ModelSpec spec;
};

// pro_1..pro_n then opp_1..opp_m, models chosen from the pairing by the
// scenario's size classes.
std::vector<Debater> make_debaters(const DebateConfig& config);

// True when the message is the canonical concession: after trimming
// whitespace and terminal punctuation and lowercasing, it equals
// "complete agreement" or its first sentence begins with that phrase.
bool detect_complete_agreement(std::string_view text);

struct RosterEntry {
  std::string id;
  Side side = Side::Proponent;
};

// Primary path reads the trailing "MOST_PERSUASIVE: <id>" marker line;
// fallback scans the final paragraph for exactly one roster id. Anything
// else is a VerdictParseError (the caller re-asks).
Verdict parse_moderator_verdict(const std::string& moderator_text,
                                const std::vector<RosterEntry>& roster);

// Provider-reported metadata gathered while a debate runs.
struct DebateMeta {
  std::map<std::string, std::string> model_versions;
  TokenUsage tokens;
  bool any_usage = false;
};

// Runs one debate to completion against the backends: at most max_turns
// turns, moderator verdict after each turn, early termination on a
// "complete agreement" concession (the conceding slot still completes and
// the partial turn is evaluated). Pure function of (config, backends):
// the same seed and scripted backend reproduce the transcript exactly.
DebateTranscript run_debate(const DebateConfig& config, const BackendResolver& backends,
                            DebateMeta* meta = nullptr);

}  // namespace agora
