#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agora/backend.hpp"

#include <nlohmann/json.hpp>

namespace agora {

// Lines for one agent. Resolution order per call:
//   1. keyed["<turn>:<slot>"]
//   2. lines[call_index], repeating the last line once exhausted
//   3. filler
// A miss at every level is a ScriptError naming the key.
struct ScriptEntry {
  std::map<std::string, std::string> keyed;
  std::vector<std::string> lines;
  std::optional<std::string> filler;
};

// Deterministic playback script. "*" is a wildcard agent entry; per-run
// sections override the global agent table so individual debates can be
// replayed with distinct material.
struct Script {
  std::map<std::string, ScriptEntry> agents;
  std::map<std::string, std::map<std::string, ScriptEntry>> runs;

  static Script from_json(const nlohmann::json& j);
  static Script load(const std::string& path);
};

class ScriptedBackend : public ChatBackend {
 public:
  explicit ScriptedBackend(Script script) : script_(std::move(script)) {}

  Completion complete(const ModelSpec& spec, const ChatRequest& request,
                      const RequestTag& tag) override;

 private:
  Script script_;
};

}  // namespace agora
