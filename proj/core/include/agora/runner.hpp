#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>

#include "agora/backend.hpp"
#include "agora/store.hpp"
#include "agora/types.hpp"

namespace agora {

struct RunOptions {
  int concurrency = 1;
  bool resume = false;
  std::string output_dir;
  // Injectable so deterministic runs can carry fixed timestamps.
  std::function<std::string()> clock;
  std::ostream* progress = nullptr;
};

struct RunGridReport {
  int total = 0;
  int done = 0;
  int failed = 0;
  int skipped = 0;
};

// Executes the pending runs of a grid with a bounded worker pool. Each
// success appends one transcript line and one summary row; failures land
// in the failures log with attempt details. With resume, run ids already
// in the store are skipped exactly; a stored run id whose config hash
// differs from the grid's is an integrity error.
RunGridReport run_grid(std::span<const DebateConfig> grid, const BackendResolver& backends,
                       const RunOptions& options);

struct BiasProbeResult {
  std::string topic_id;
  int trials = 0;
  int pros = 0;
  int cons = 0;
  int no_response = 0;
  int unclassified = 0;  // diagnostic bucket, excluded from the three-way split
};

// Pre-experiment leaning probe: asks the neutral model n times which side
// of the topic reads as more persuasive. Replies are classified by their
// first line; an unclassifiable reply is re-asked once, then counted
// under the diagnostic bucket.
BiasProbeResult bias_probe(const Topic& topic, const ModelSpec& neutral_model, int trials,
                           const BackendResolver& backends);

// ISO-8601 UTC timestamp of the system clock.
std::string utc_now_iso8601();

}  // namespace agora
