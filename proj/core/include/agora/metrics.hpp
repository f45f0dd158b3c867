#pragma once

#include <array>
#include <span>
#include <string>

#include "agora/types.hpp"

namespace agora {

// CR/FCR aggregates over a set of transcripts. Micro CR pools turns
// across debates; macro CR averages per-debate ratios. Denominators use
// evaluated turns only, so early-terminated debates contribute fewer
// turns.
struct ConformitySummary {
  double cr_micro = 0.0;
  double cr_macro = 0.0;
  double fcr = 0.0;
  long proponent_supported_turns = 0;
  long total_evaluated_turns = 0;
  long fully_proponent_discussions = 0;
  long total_discussions = 0;
  int excluded_zero_turn_debates = 0;
};

ConformitySummary conformity_rate(std::span<const DebateTranscript> transcripts);
ConformitySummary full_conformity_ratio(std::span<const DebateTranscript> transcripts);

// 2x2 contingency table of evaluated turns: rows are two transcript
// groups, columns are the verdict side.
struct ContingencyTable2x2 {
  std::array<std::string, 2> row_labels;
  std::array<std::string, 2> col_labels = {"proponent", "opponent"};
  std::array<std::array<double, 2>, 2> observed = {{{0.0, 0.0}, {0.0, 0.0}}};

  double row_total(int i) const { return observed[i][0] + observed[i][1]; }
  double col_total(int j) const { return observed[0][j] + observed[1][j]; }
  double grand_total() const { return row_total(0) + row_total(1); }
  // E_ij = row_i_total * col_j_total / N
  std::array<std::array<double, 2>, 2> expected() const;
};

ContingencyTable2x2 build_contingency(std::span<const DebateTranscript> group_a,
                                      std::span<const DebateTranscript> group_b,
                                      const std::string& label_a,
                                      const std::string& label_b);

// Convenience for tests and reports.
ContingencyTable2x2 make_table(double o11, double o12, double o21, double o22,
                               const std::string& label_a = "group_a",
                               const std::string& label_b = "group_b");

}  // namespace agora
