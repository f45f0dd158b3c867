#include "agora/metrics.hpp"

#include "agora/errors.hpp"

namespace agora {

namespace {

struct DebateCounts {
  long pro = 0;
  long total = 0;
};

DebateCounts count_verdicts(const DebateTranscript& t) {
  DebateCounts c;
  for (const auto& turn : t.turns) {
    c.total++;
    if (turn.verdict.selected_side == Side::Proponent) c.pro++;
  }
  return c;
}

ConformitySummary summarize(std::span<const DebateTranscript> transcripts) {
  if (transcripts.empty()) {
    throw MetricsError("conformity metrics are undefined over an empty transcript set");
  }
  ConformitySummary s;
  double macro_sum = 0.0;
  for (const auto& t : transcripts) {
    const DebateCounts c = count_verdicts(t);
    if (c.total == 0) {
      s.excluded_zero_turn_debates++;
      continue;
    }
    s.proponent_supported_turns += c.pro;
    s.total_evaluated_turns += c.total;
    macro_sum += static_cast<double>(c.pro) / static_cast<double>(c.total);
    if (c.pro == c.total) s.fully_proponent_discussions++;
    s.total_discussions++;
  }
  if (s.total_discussions == 0) {
    throw MetricsError("every transcript in the set had zero evaluated turns");
  }
  s.cr_micro = static_cast<double>(s.proponent_supported_turns) /
               static_cast<double>(s.total_evaluated_turns);
  s.cr_macro = macro_sum / static_cast<double>(s.total_discussions);
  s.fcr = static_cast<double>(s.fully_proponent_discussions) /
          static_cast<double>(s.total_discussions);
  return s;
}

}  // namespace

ConformitySummary conformity_rate(std::span<const DebateTranscript> transcripts) {
  return summarize(transcripts);
}

ConformitySummary full_conformity_ratio(std::span<const DebateTranscript> transcripts) {
  return summarize(transcripts);
}

std::array<std::array<double, 2>, 2> ContingencyTable2x2::expected() const {
  const double n = grand_total();
  std::array<std::array<double, 2>, 2> e{};
  for (int i = 0; i < 2; i++) {
    for (int j = 0; j < 2; j++) {
      e[i][j] = row_total(i) * col_total(j) / n;
    }
  }
  return e;
}

ContingencyTable2x2 build_contingency(std::span<const DebateTranscript> group_a,
                                      std::span<const DebateTranscript> group_b,
                                      const std::string& label_a,
                                      const std::string& label_b) {
  if (group_a.empty() || group_b.empty()) {
    throw MetricsError("contingency table requires both groups to be non-empty");
  }
  ContingencyTable2x2 table;
  table.row_labels = {label_a, label_b};
  const std::span<const DebateTranscript> groups[2] = {group_a, group_b};
  for (int i = 0; i < 2; i++) {
    for (const auto& t : groups[i]) {
      for (const auto& turn : t.turns) {
        const int j = turn.verdict.selected_side == Side::Proponent ? 0 : 1;
        table.observed[i][j] += 1.0;
      }
    }
  }
  return table;
}

ContingencyTable2x2 make_table(double o11, double o12, double o21, double o22,
                               const std::string& label_a, const std::string& label_b) {
  ContingencyTable2x2 table;
  table.row_labels = {label_a, label_b};
  table.observed = {{{o11, o12}, {o21, o22}}};
  return table;
}

}  // namespace agora
