#include "agora/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

#include "agora/debate.hpp"
#include "agora/errors.hpp"
#include "agora/grid.hpp"
#include "agora/prompts.hpp"

namespace agora {

namespace fs = std::filesystem;

std::string utc_now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunGridReport run_grid(std::span<const DebateConfig> grid, const BackendResolver& backends,
                       const RunOptions& options) {
  if (options.output_dir.empty()) {
    throw ConfigError("run_grid requires an output directory");
  }
  std::error_code ec;
  fs::create_directories(options.output_dir, ec);
  if (ec) {
    throw StoreError("cannot create output directory '" + options.output_dir +
                     "': " + ec.message());
  }
  const std::string store_path = (fs::path(options.output_dir) / "transcripts.jsonl").string();
  const std::string summary_path = (fs::path(options.output_dir) / "summary.csv").string();
  const std::string failures_path = (fs::path(options.output_dir) / "failures.jsonl").string();

  std::vector<StoredDebate> existing;
  if (fs::exists(store_path) && fs::file_size(store_path) > 0) {
    if (!options.resume) {
      throw StoreError("transcript store '" + store_path +
                       "' already has results; pass resume to continue it or use a fresh "
                       "output directory");
    }
    existing = TranscriptStore::load(store_path);
  }

  std::map<std::string, std::string> done_hashes;  // run_id -> config_hash
  for (const auto& r : existing) {
    auto [it, inserted] = done_hashes.emplace(r.run_id, r.config_hash);
    if (!inserted && it->second != r.config_hash) {
      throw StoreError("transcript store contains run " + r.run_id +
                       " twice with different configurations");
    }
  }

  RunGridReport report;
  report.total = static_cast<int>(grid.size());

  std::vector<const DebateConfig*> pending;
  std::vector<std::string> pending_run_ids;
  std::vector<std::string> pending_hashes;
  for (const auto& config : grid) {
    const std::string run_id = run_id_for(config);
    const std::string hash = config_fingerprint(config);
    if (auto it = done_hashes.find(run_id); it != done_hashes.end()) {
      if (it->second != hash) {
        throw StoreError("store already holds run " + run_id + " (" + run_identity(config) +
                         ") with a different configuration; refusing to mix grids");
      }
      report.skipped++;
      continue;
    }
    pending.push_back(&config);
    pending_run_ids.push_back(run_id);
    pending_hashes.push_back(hash);
  }

  // The summary table is derived data; rebuild it from the surviving
  // transcripts before appending new rows.
  write_summary_csv(summary_path, existing);

  const auto clock = options.clock ? options.clock : utc_now_iso8601;
  TranscriptStore store(store_path);
  std::mutex sink_mu;  // one writer at a time across all artifact files
  std::ofstream summary_out(summary_path, std::ios::app);
  std::atomic<std::size_t> next{0};
  std::atomic<int> done_count{0};
  std::atomic<int> failed_count{0};

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= pending.size()) return;
      const DebateConfig& config = *pending[i];
      const std::string& run_id = pending_run_ids[i];
      const std::string started = clock();
      try {
        DebateMeta meta;
        DebateTranscript transcript = run_debate(config, backends, &meta);
        StoredDebate record;
        record.run_id = run_id;
        record.config_hash = pending_hashes[i];
        record.transcript = std::move(transcript);
        record.started_at = started;
        record.finished_at = clock();
        record.model_versions = std::move(meta.model_versions);
        if (meta.any_usage) record.tokens = meta.tokens;
        {
          std::lock_guard lock(sink_mu);
          store.append(record);
          summary_out << summary_csv_row(record) << '\n';
          summary_out.flush();
          const int n = ++done_count;
          if (options.progress != nullptr) {
            (*options.progress) << "[done " << n + failed_count.load() << "/" << pending.size()
                                << "] " << run_identity(config) << " run_id=" << run_id
                                << "\n";
          }
        }
      } catch (const DebateError& e) {
        std::lock_guard lock(sink_mu);
        append_failure(failures_path, {run_id, e.stage, e.what(), e.attempts});
        failed_count++;
        if (options.progress != nullptr) {
          (*options.progress) << "[FAILED] " << run_identity(config) << ": " << e.what()
                              << "\n";
        }
      } catch (const TransportError& e) {
        std::lock_guard lock(sink_mu);
        append_failure(failures_path,
                       {run_id, "backend", e.what(), static_cast<int>(e.attempts.size())});
        failed_count++;
        if (options.progress != nullptr) {
          (*options.progress) << "[FAILED] " << run_identity(config) << ": " << e.what()
                              << "\n";
        }
      } catch (const AgoraError& e) {
        std::lock_guard lock(sink_mu);
        append_failure(failures_path, {run_id, "debate", e.what(), 1});
        failed_count++;
        if (options.progress != nullptr) {
          (*options.progress) << "[FAILED] " << run_identity(config) << ": " << e.what()
                              << "\n";
        }
      }
    }
  };

  const int workers = std::max(1, std::min<int>(options.concurrency,
                                                static_cast<int>(pending.size())));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; w++) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  report.done = done_count.load();
  report.failed = failed_count.load();
  return report;
}

namespace {

std::string first_line_lowered(const std::string& text) {
  std::string line;
  for (char c : text) {
    if (c == '\n') {
      if (!line.empty()) break;
      continue;
    }
    line += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  const auto begin = line.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = line.find_last_not_of(" \t\r");
  return line.substr(begin, end - begin + 1);
}

enum class ProbeAnswer { Pros, Cons, NoResponse, Unclassified };

// The reply's first line must start with the marker as a whole word
// ("Pros", "Cons," and "No response." all classify; "prosecution" does
// not).
ProbeAnswer classify_probe_reply(const std::string& text) {
  const std::string head = first_line_lowered(text);
  auto leads_with = [&](std::string_view marker) {
    if (head.size() < marker.size()) return false;
    if (head.compare(0, marker.size(), marker) != 0) return false;
    if (head.size() == marker.size()) return true;
    const unsigned char next = head[marker.size()];
    return !(std::isalnum(next) || next == '_');
  };
  if (leads_with("pros")) return ProbeAnswer::Pros;
  if (leads_with("cons")) return ProbeAnswer::Cons;
  if (leads_with("no response")) return ProbeAnswer::NoResponse;
  return ProbeAnswer::Unclassified;
}

}  // namespace

BiasProbeResult bias_probe(const Topic& topic, const ModelSpec& neutral_model, int trials,
                           const BackendResolver& backends) {
  if (trials <= 0) {
    throw ConfigError("bias probe: trials must be positive");
  }
  if (!topic.reframed_opponent_statement.has_value() ||
      topic.reframed_opponent_statement->empty()) {
    throw ConfigError("bias probe: topic '" + topic.id +
                      "' needs a reframed statement to serve as the cons text");
  }

  BiasProbeResult result;
  result.topic_id = topic.id;
  result.trials = trials;

  ChatRequest base;
  base.system_prompt = bias_probe_system_prompt();
  base.temperature = neutral_model.temperature;
  base.max_tokens = neutral_model.max_tokens;
  base.messages = {{ChatRole::User,
                    bias_probe_topic_message(topic.proponent_statement,
                                             *topic.reframed_opponent_statement)}};

  ChatBackend& backend = backends(neutral_model);
  for (int trial = 1; trial <= trials; trial++) {
    ProbeAnswer answer = ProbeAnswer::Unclassified;
    for (int attempt = 0; attempt < 2 && answer == ProbeAnswer::Unclassified; attempt++) {
      ChatRequest request = base;
      if (attempt > 0) {
        request.messages.push_back(
            {ChatRole::User,
             "Your previous reply did not start with Pros, Cons, or No response. Answer "
             "again with exactly one of those on the first line."});
      }
      RequestTag tag{"bias_probe:" + topic.id, "probe", trial, 0, trial - 1, attempt};
      answer = classify_probe_reply(
          backend.complete(neutral_model, request, tag).text);
    }
    switch (answer) {
      case ProbeAnswer::Pros: result.pros++; break;
      case ProbeAnswer::Cons: result.cons++; break;
      case ProbeAnswer::NoResponse: result.no_response++; break;
      case ProbeAnswer::Unclassified: result.unclassified++; break;
    }
  }
  return result;
}

}  // namespace agora
