#include "agora/store.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "agora/errors.hpp"
#include "agora/json_io.hpp"

namespace agora {

using nlohmann::json;

std::string stored_debate_to_line(const StoredDebate& r) {
  const auto& c = r.transcript.config;
  json j = {{"run_id", r.run_id},
            {"config_hash", r.config_hash},
            {"experiment", c.experiment},
            {"scenario_id", c.scenario.id},
            {"topic_id", c.topic.id},
            {"framing", to_string(c.framing)},
            {"pairing", c.pairing.id},
            {"rep", c.rep_index},
            {"seed", c.seed},
            {"transcript", to_json(r.transcript)},
            {"started_at", r.started_at},
            {"finished_at", r.finished_at}};
  json versions = json::object();
  for (const auto& [model, version] : r.model_versions) versions[model] = version;
  j["model_versions"] = versions;
  if (r.tokens.has_value()) {
    j["tokens"] = {{"prompt_tokens", r.tokens->prompt_tokens},
                   {"completion_tokens", r.tokens->completion_tokens}};
  } else {
    j["tokens"] = nullptr;
  }
  return j.dump();
}

StoredDebate stored_debate_from_line(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw StoreError(std::string("malformed transcript line: ") + e.what());
  }
  StoredDebate r;
  try {
    r.run_id = j.at("run_id").get<std::string>();
    r.config_hash = j.at("config_hash").get<std::string>();
    r.transcript = transcript_from_json(j.at("transcript"));
    r.started_at = j.value("started_at", "");
    r.finished_at = j.value("finished_at", "");
    if (j.contains("model_versions")) {
      for (auto& [model, version] : j["model_versions"].items()) {
        r.model_versions[model] = version.get<std::string>();
      }
    }
    if (j.contains("tokens") && !j["tokens"].is_null()) {
      r.tokens = TokenUsage{j["tokens"].value("prompt_tokens", 0L),
                            j["tokens"].value("completion_tokens", 0L)};
    }
  } catch (const json::exception& e) {
    throw StoreError(std::string("transcript line is missing fields: ") + e.what());
  }
  return r;
}

void TranscriptStore::append(const StoredDebate& record) {
  std::ofstream out(path_, std::ios::app);
  if (!out) {
    throw StoreError("cannot open transcript store '" + path_ + "' for append");
  }
  out << stored_debate_to_line(record) << '\n';
  if (!out) {
    throw StoreError("write to transcript store '" + path_ + "' failed");
  }
}

std::vector<StoredDebate> TranscriptStore::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw StoreError("cannot open transcript store '" + path + "'");
  }
  std::vector<StoredDebate> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    line_no++;
    if (line.empty()) continue;
    try {
      out.push_back(stored_debate_from_line(line));
    } catch (const StoreError& e) {
      throw StoreError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

namespace {

// CSV cell for free-form text (ids here are hash/token-like, but quote
// defensively anyway).
std::string csv_cell(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string quoted = "\"";
  for (char ch : v) {
    if (ch == '"') quoted += "\"\"";
    else quoted += ch;
  }
  quoted += "\"";
  return quoted;
}

}  // namespace

std::string summary_csv_header() {
  return "run_id,experiment,scenario_id,topic_id,pairing,rep,framing,cr,fully_pro,"
         "total_turns,early_term";
}

std::string summary_csv_row(const StoredDebate& r) {
  const auto& c = r.transcript.config;
  const auto& o = r.transcript.outcome;
  const double cr = o.total_evaluated_turns > 0
                        ? static_cast<double>(o.proponent_supported_turns) /
                              static_cast<double>(o.total_evaluated_turns)
                        : 0.0;
  char cr_buf[32];
  std::snprintf(cr_buf, sizeof(cr_buf), "%.6f", cr);
  const int fully = o.total_evaluated_turns > 0 &&
                            o.proponent_supported_turns == o.total_evaluated_turns
                        ? 1
                        : 0;
  std::string row;
  row += csv_cell(r.run_id) + ",";
  row += csv_cell(c.experiment) + ",";
  row += csv_cell(c.scenario.id) + ",";
  row += csv_cell(c.topic.id) + ",";
  row += csv_cell(c.pairing.id) + ",";
  row += std::to_string(c.rep_index) + ",";
  row += to_string(c.framing) + ",";
  row += std::string(cr_buf) + ",";
  row += std::to_string(fully) + ",";
  row += std::to_string(o.total_evaluated_turns) + ",";
  row += std::to_string(r.transcript.early_termination.has_value() ? 1 : 0);
  return row;
}

void write_summary_csv(const std::string& path, std::span<const StoredDebate> records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw StoreError("cannot open summary table '" + path + "' for writing");
  }
  out << summary_csv_header() << '\n';
  for (const auto& r : records) out << summary_csv_row(r) << '\n';
}

void append_failure(const std::string& path, const FailureRecord& record) {
  std::ofstream out(path, std::ios::app);
  if (!out) {
    throw StoreError("cannot open failures log '" + path + "' for append");
  }
  const json j = {{"run_id", record.run_id},
                  {"stage", record.stage},
                  {"error", record.error},
                  {"attempts", record.attempts}};
  out << j.dump() << '\n';
}

std::vector<FailureRecord> load_failures(const std::string& path) {
  std::ifstream in(path);
  std::vector<FailureRecord> out;
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    out.push_back({j.value("run_id", ""), j.value("stage", ""), j.value("error", ""),
                   j.value("attempts", 1)});
  }
  return out;
}

}  // namespace agora
