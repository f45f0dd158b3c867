#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agora/backend.hpp"
#include "agora/types.hpp"

namespace agora {

// One line of the transcript store.
struct StoredDebate {
  std::string run_id;
  std::string config_hash;
  DebateTranscript transcript;
  std::string started_at;
  std::string finished_at;
  std::map<std::string, std::string> model_versions;  // provider-reported
  std::optional<TokenUsage> tokens;                   // provider-reported

  bool operator==(const StoredDebate&) const = default;
};

// Append-only line-delimited transcript store: one debate per line, so an
// interrupted run never corrupts earlier results. Transcripts are the
// source of truth; the summary table is regenerable from them.
class TranscriptStore {
 public:
  explicit TranscriptStore(std::string path) : path_(std::move(path)) {}

  void append(const StoredDebate& record);
  static std::vector<StoredDebate> load(const std::string& path);

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string stored_debate_to_line(const StoredDebate& record);
StoredDebate stored_debate_from_line(const std::string& line);

// Summary CSV (regenerable from transcripts).
std::string summary_csv_header();
std::string summary_csv_row(const StoredDebate& record);
void write_summary_csv(const std::string& path, std::span<const StoredDebate> records);

struct FailureRecord {
  std::string run_id;
  std::string stage;
  std::string error;
  int attempts = 1;

  bool operator==(const FailureRecord&) const = default;
};

void append_failure(const std::string& path, const FailureRecord& record);
std::vector<FailureRecord> load_failures(const std::string& path);

}  // namespace agora
