#include "agora/scripted_backend.hpp"

#include <fstream>

#include "agora/errors.hpp"

namespace agora {

namespace {

ScriptEntry entry_from_json(const nlohmann::json& j) {
  ScriptEntry e;
  if (j.is_string()) {
    e.filler = j.get<std::string>();
    return e;
  }
  if (j.contains("keyed")) {
    for (auto& [key, value] : j.at("keyed").items()) {
      e.keyed[key] = value.get<std::string>();
    }
  }
  if (j.contains("lines")) {
    for (auto& line : j.at("lines")) {
      e.lines.push_back(line.get<std::string>());
    }
  }
  if (j.contains("filler")) {
    e.filler = j.at("filler").get<std::string>();
  }
  return e;
}

const ScriptEntry* find_entry(const std::map<std::string, ScriptEntry>& table,
                              const std::string& agent_id) {
  if (auto it = table.find(agent_id); it != table.end()) return &it->second;
  if (auto it = table.find("*"); it != table.end()) return &it->second;
  return nullptr;
}

}  // namespace

Script Script::from_json(const nlohmann::json& j) {
  Script s;
  if (j.contains("agents")) {
    for (auto& [agent, entry] : j.at("agents").items()) {
      s.agents[agent] = entry_from_json(entry);
    }
  }
  if (j.contains("runs")) {
    for (auto& [run_id, agents] : j.at("runs").items()) {
      for (auto& [agent, entry] : agents.items()) {
        s.runs[run_id][agent] = entry_from_json(entry);
      }
    }
  }
  return s;
}

Script Script::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open script file '" + path + "'");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed script file '" + path + "': " + e.what());
  }
  return from_json(j);
}

Completion ScriptedBackend::complete(const ModelSpec& spec, const ChatRequest& request,
                                     const RequestTag& tag) {
  (void)request;
  const ScriptEntry* entry = nullptr;
  if (auto it = script_.runs.find(tag.run_id); it != script_.runs.end()) {
    entry = find_entry(it->second, tag.agent_id);
  }
  if (entry == nullptr) {
    entry = find_entry(script_.agents, tag.agent_id);
  }
  auto key_text = [&] {
    return "(agent=" + tag.agent_id + ", turn=" + std::to_string(tag.turn) +
           ", slot=" + std::to_string(tag.slot) + ")";
  };
  if (entry == nullptr) {
    throw ScriptError("no script entry for " + key_text() + " serving model '" +
                      spec.model_id + "'");
  }
  const std::string key = std::to_string(tag.turn) + ":" + std::to_string(tag.slot);
  if (auto it = entry->keyed.find(key); it != entry->keyed.end()) {
    return {it->second, "", std::nullopt};
  }
  if (!entry->lines.empty()) {
    const std::size_t idx =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(tag.call_index, 0)),
                              entry->lines.size() - 1);
    return {entry->lines[idx], "", std::nullopt};
  }
  if (entry->filler.has_value()) {
    return {*entry->filler, "", std::nullopt};
  }
  throw ScriptError("script entry for " + key_text() + " has no line to play");
}

}  // namespace agora
