#include "agora/debate.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "agora/errors.hpp"
#include "agora/grid.hpp"
#include "agora/prompts.hpp"
#include "agora/schedule.hpp"

namespace agora {

namespace {

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::string strip_terminal_punctuation(std::string s) {
  while (!s.empty() && std::string(".,;:!?\"'*)").find(s.back()) != std::string::npos) {
    s.pop_back();
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  return s;
}

bool word_boundary_at(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return true;
  const unsigned char c = s[pos];
  return !(std::isalnum(c) || c == '_');
}

// True when `id` occurs in `text` delimited by non-identifier characters.
bool contains_word(std::string_view text, std::string_view id) {
  std::size_t pos = 0;
  while ((pos = text.find(id, pos)) != std::string_view::npos) {
    const bool left_ok =
        pos == 0 || !(std::isalnum(static_cast<unsigned char>(text[pos - 1])) ||
                      text[pos - 1] == '_');
    if (left_ok && word_boundary_at(text, pos + id.size())) return true;
    pos += 1;
  }
  return false;
}

}  // namespace

std::vector<Debater> make_debaters(const DebateConfig& config) {
  auto spec_for = [&](SizeClass size) {
    return size == SizeClass::Large ? config.pairing.large : config.pairing.small;
  };
  std::vector<Debater> out;
  for (int i = 1; i <= config.scenario.proponent_count; i++) {
    out.push_back({"pro_" + std::to_string(i), Side::Proponent,
                   spec_for(config.scenario.proponent_size)});
  }
  for (int i = 1; i <= config.scenario.opponent_count; i++) {
    out.push_back({"opp_" + std::to_string(i), Side::Opponent,
                   spec_for(config.scenario.opponent_size)});
  }
  return out;
}

bool detect_complete_agreement(std::string_view text) {
  static const std::string phrase = "complete agreement";
  const std::string whole = strip_terminal_punctuation(to_lower(trim(text)));
  if (whole == phrase) return true;

  const std::string lowered = to_lower(trim(text));
  const auto sentence_end = lowered.find_first_of(".!?\n");
  std::string first_sentence = sentence_end == std::string::npos
                                   ? lowered
                                   : lowered.substr(0, sentence_end);
  first_sentence = trim(first_sentence);
  return first_sentence.starts_with(phrase) &&
         word_boundary_at(first_sentence, phrase.size());
}

Verdict parse_moderator_verdict(const std::string& moderator_text,
                                const std::vector<RosterEntry>& roster) {
  if (roster.empty()) {
    throw VerdictParseError("verdict parsing requires a non-empty roster");
  }
  auto side_of = [&](const std::string& id) -> const RosterEntry* {
    for (const auto& e : roster) {
      if (e.id == id) return &e;
    }
    return nullptr;
  };

  // Primary path: trailing marker line.
  const std::string marker = std::string(kVerdictMarker) + ":";
  std::istringstream stream(moderator_text);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    const auto pos = it->find(marker);
    if (pos == std::string::npos) continue;
    std::string id = trim(it->substr(pos + marker.size()));
    if (const auto ws = id.find_first_of(" \t"); ws != std::string::npos) {
      id = id.substr(0, ws);
    }
    id = strip_terminal_punctuation(id);
    if (const RosterEntry* entry = side_of(id)) {
      return {entry->id, entry->side, moderator_text};
    }
    break;  // marker present but unusable; fall through to the scan
  }

  // Fallback: a unique roster id in the final paragraph.
  const std::string trimmed = trim(moderator_text);
  const auto para_break = trimmed.rfind("\n\n");
  const std::string last_paragraph =
      para_break == std::string::npos ? trimmed : trimmed.substr(para_break + 2);
  std::vector<const RosterEntry*> mentioned;
  for (const auto& e : roster) {
    if (contains_word(last_paragraph, e.id)) mentioned.push_back(&e);
  }
  if (mentioned.size() == 1) {
    return {mentioned[0]->id, mentioned[0]->side, moderator_text};
  }
  if (mentioned.empty()) {
    throw VerdictParseError("moderator reply names no debater id");
  }
  throw VerdictParseError("moderator reply is ambiguous: " +
                          std::to_string(mentioned.size()) +
                          " debater ids in the final paragraph");
}

namespace {

struct ConversationEntry {
  std::string agent_id;
  std::string text;
};

ChatRequest build_debater_request(const Debater& debater, const std::string& topic_statement,
                                  const std::vector<ConversationEntry>& conversation) {
  ChatRequest req;
  req.system_prompt = debater_system_prompt(debater.side, topic_statement);
  req.temperature = debater.spec.temperature;
  req.max_tokens = debater.spec.max_tokens;
  std::vector<ChatMessage> messages;
  messages.push_back({ChatRole::User, debate_kickoff_line()});
  for (const auto& entry : conversation) {
    if (entry.agent_id == debater.id) {
      messages.push_back({ChatRole::Assistant, entry.text});
    } else {
      messages.push_back({ChatRole::User, "[" + entry.agent_id + "]: " + entry.text});
    }
  }
  req.messages = normalize_messages(messages);
  return req;
}

ChatRequest build_moderator_request(const DebateConfig& config,
                                    const std::vector<Debater>& debaters,
                                    const std::vector<ConversationEntry>& conversation,
                                    int attempt) {
  ChatRequest req;
  req.system_prompt = moderator_system_prompt();
  req.temperature = config.neutral_model.temperature;
  req.max_tokens = config.neutral_model.max_tokens;

  std::ostringstream body;
  body << "Debaters:\n";
  for (const auto& d : debaters) {
    body << "- " << d.id << " (" << (d.side == Side::Proponent ? "supporting" : "opposing")
         << ")\n";
  }
  body << "\nDiscussion so far:\n\n";
  for (const auto& entry : conversation) {
    body << "[" << entry.agent_id << "]: " << entry.text << "\n\n";
  }
  if (attempt > 0) {
    body << "Your previous reply did not end with the required marker line. Reply again "
            "and end with a final line of exactly \""
         << kVerdictMarker << ": <debater id>\" choosing one of the listed debater ids.\n";
  }
  req.messages = {{ChatRole::User, body.str()}};
  return req;
}

}  // namespace

DebateTranscript run_debate(const DebateConfig& config, const BackendResolver& backends,
                            DebateMeta* meta) {
  if (const auto issues = validate_config(config); !issues.empty()) {
    std::string msg = "invalid debate config:";
    for (const auto& i : issues) msg += " [" + i.path + ": " + i.message + "]";
    throw ConfigError(msg);
  }

  const std::vector<Debater> debaters = make_debaters(config);
  std::vector<std::string> pro_ids;
  std::vector<std::string> opp_ids;
  std::vector<RosterEntry> roster;
  for (const auto& d : debaters) {
    (d.side == Side::Proponent ? pro_ids : opp_ids).push_back(d.id);
    roster.push_back({d.id, d.side});
  }
  const SpeakingSchedule schedule =
      randomize_speaking_order(pro_ids, opp_ids, config.max_turns,
                               config.slots_per_side_per_turn, config.seed);
  const std::string topic_statement = topic_statement_for(config.topic, config.framing);
  const std::string run_id = run_id_for(config);

  auto record_meta = [&](const ModelSpec& spec, const Completion& c) {
    if (meta == nullptr) return;
    if (!c.model_version.empty()) meta->model_versions[spec.model_id] = c.model_version;
    if (c.usage.has_value()) {
      meta->any_usage = true;
      meta->tokens.prompt_tokens += c.usage->prompt_tokens;
      meta->tokens.completion_tokens += c.usage->completion_tokens;
    }
  };

  DebateTranscript transcript;
  transcript.config = config;
  std::vector<ConversationEntry> conversation;
  std::map<std::string, int> call_counts;

  for (int turn_index = 1; turn_index <= config.max_turns; turn_index++) {
    TurnRecord turn;
    turn.index = turn_index;
    bool terminated = false;

    const auto& slots = schedule.turns[turn_index - 1];
    for (std::size_t s = 0; s < slots.size(); s++) {
      const auto& slot = slots[s];
      const auto debater_it = std::find_if(debaters.begin(), debaters.end(),
                                           [&](const Debater& d) { return d.id == slot.agent_id; });
      const Debater& debater = *debater_it;
      const ChatRequest request =
          build_debater_request(debater, topic_statement, conversation);
      RequestTag tag{run_id, debater.id, turn_index, static_cast<int>(s + 1),
                     call_counts[debater.id], 0};
      call_counts[debater.id]++;
      const Completion completion = backends(debater.spec).complete(debater.spec, request, tag);
      record_meta(debater.spec, completion);
      turn.utterances.push_back({debater.id, debater.side, debater.spec.model_id,
                                 completion.text});
      conversation.push_back({debater.id, completion.text});
      if (detect_complete_agreement(completion.text)) {
        transcript.early_termination = EarlyTermination{turn_index, debater.id};
        terminated = true;
        break;
      }
    }

    // The moderator evaluates the turn even when it ended early; its
    // conversational memory is rebuilt from the transcript each time so
    // retries stay idempotent.
    constexpr int kModeratorAttempts = 3;  // initial ask + 2 structured re-asks
    bool verdict_ok = false;
    for (int attempt = 0; attempt < kModeratorAttempts; attempt++) {
      const ChatRequest request =
          build_moderator_request(config, debaters, conversation, attempt);
      RequestTag tag{run_id, "moderator", turn_index, 0, turn_index - 1, attempt};
      const Completion completion =
          backends(config.neutral_model).complete(config.neutral_model, request, tag);
      record_meta(config.neutral_model, completion);
      try {
        turn.verdict = parse_moderator_verdict(completion.text, roster);
        verdict_ok = true;
        break;
      } catch (const VerdictParseError&) {
        continue;
      }
    }
    if (!verdict_ok) {
      throw DebateError("moderator verdict unparseable after 2 structured re-asks at turn " +
                            std::to_string(turn_index),
                        "moderator_verdict", turn_index, kModeratorAttempts);
    }
    transcript.turns.push_back(std::move(turn));
    if (terminated) break;
  }

  int pro_turns = 0;
  for (const auto& t : transcript.turns) {
    if (t.verdict.selected_side == Side::Proponent) pro_turns++;
  }
  transcript.outcome = {pro_turns, static_cast<int>(transcript.turns.size())};
  return transcript;
}

}  // namespace agora
