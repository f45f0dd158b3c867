#pragma once

#include <string>

#include "agora/types.hpp"

namespace agora {

// Role prompt for a debater, with the topic statement substituted.
// Proponents get the "supports" wording, opponents "opposes"; everything
// else is fixed template text.
std::string debater_system_prompt(Side side, const std::string& topic_statement);

// Moderator prompt plus the trailing-marker instruction the verdict
// parser relies on.
std::string moderator_system_prompt();

// The marker token the moderator must emit ("MOST_PERSUASIVE").
extern const char* const kVerdictMarker;

// Pre-experiment leaning probe shown to the neutral model; the reply is
// classified by its first line (Pros / Cons / No response).
std::string bias_probe_system_prompt();
std::string bias_probe_topic_message(const std::string& pros_statement,
                                     const std::string& cons_statement);

// Fixed user message that opens every debater conversation.
std::string debate_kickoff_line();

// Statement handed to the debaters: the proponent claim, or the reframed
// wording when the run uses reversed framing.
std::string topic_statement_for(const Topic& topic, Framing framing);

}  // namespace agora
