#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "agora/types.hpp"

namespace agora {

enum class ChatRole { User, Assistant };

struct ChatMessage {
  ChatRole role = ChatRole::User;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct ChatRequest {
  std::string system_prompt;
  std::vector<ChatMessage> messages;
  double temperature = 0.7;
  int max_tokens = 256;

  bool operator==(const ChatRequest&) const = default;
};

// Merges consecutive same-role messages so the result strictly alternates.
std::vector<ChatMessage> normalize_messages(const std::vector<ChatMessage>& messages);

// Identifies one completion call within an experiment. The scripted
// backend keys its playback on this; live backends use it for audit only.
// call_index counts how many times this agent has been queried before in
// the same debate, so retries of the same logical call share an index.
struct RequestTag {
  std::string run_id;
  std::string agent_id;
  int turn = 0;
  int slot = 0;
  int call_index = 0;
  int attempt = 0;
};

struct TokenUsage {
  long prompt_tokens = 0;
  long completion_tokens = 0;

  bool operator==(const TokenUsage&) const = default;
};

struct Completion {
  std::string text;
  std::string model_version;          // provider-reported, empty when absent
  std::optional<TokenUsage> usage;    // provider-reported, never estimated
};

struct BackendPolicy {
  int max_retries = 5;
  double backoff_base_seconds = 1.0;
  double backoff_cap_seconds = 60.0;
  double request_timeout_seconds = 120.0;
  int max_concurrent = 8;
  std::optional<double> requests_per_second;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual Completion complete(const ModelSpec& spec, const ChatRequest& request,
                              const RequestTag& tag) = 0;
};

// Maps a model spec to the backend that serves it.
using BackendResolver = std::function<ChatBackend&(const ModelSpec&)>;

}  // namespace agora
