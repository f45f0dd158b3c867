#include <doctest.h>

#include <set>

#include "agora/errors.hpp"
#include "agora/grid.hpp"
#include "support/fixtures.hpp"

using namespace agora;
using namespace agora::testing;

TEST_CASE("paper-scale experiment A builds exactly 2000 configs") {
  const auto cfg = make_experiment_config(10, 4, 5);
  const auto grid = build_experiment_a_grid(cfg);
  CHECK(grid.size() == 2000);  // 10 x 5 x 4 x 10

  std::set<std::string> run_ids;
  for (const auto& c : grid) run_ids.insert(run_id_for(c));
  CHECK(run_ids.size() == grid.size());
}

TEST_CASE("experiment A scales proportionally with reps") {
  const auto cfg = make_experiment_config(1, 4, 5);
  CHECK(build_experiment_a_grid(cfg).size() == 200);
}

TEST_CASE("paper-scale experiment B builds exactly 600 configs") {
  const auto cfg = make_experiment_config(10, 1, 5);
  const auto grid = build_experiment_b_grid(cfg);
  CHECK(grid.size() == 600);  // 6 x 5 x 2 x 10

  std::set<std::string> run_ids;
  for (const auto& c : grid) {
    run_ids.insert(run_id_for(c));
    // Intelligence is held constant within a run.
    CHECK(c.pairing.large.model_id == c.pairing.small.model_id);
    CHECK(c.scenario.intelligence() == IntelligenceRelation::Equivalent);
  }
  CHECK(run_ids.size() == grid.size());
}

TEST_CASE("experiment B includes the 1:8 condition in both directions") {
  const auto cfg = make_experiment_config(1, 1, 1);
  const auto grid = build_experiment_b_grid(cfg);
  bool seen_1_8 = false;
  bool seen_8_1 = false;
  for (const auto& c : grid) {
    if (c.scenario.proponent_count == 1 && c.scenario.opponent_count == 8) seen_1_8 = true;
    if (c.scenario.proponent_count == 8 && c.scenario.opponent_count == 1) seen_8_1 = true;
  }
  CHECK(seen_1_8);
  CHECK(seen_8_1);
}

TEST_CASE("grids are deterministic across invocations") {
  const auto cfg = make_experiment_config(2, 2, 3);
  const auto g1 = build_experiment_a_grid(cfg);
  const auto g2 = build_experiment_a_grid(cfg);
  REQUIRE(g1.size() == g2.size());
  for (std::size_t i = 0; i < g1.size(); i++) {
    CHECK(g1[i] == g2[i]);
    CHECK(run_id_for(g1[i]) == run_id_for(g2[i]));
  }
}

TEST_CASE("grid builders reject missing inputs") {
  auto no_topics = make_experiment_config(2, 1, 1);
  no_topics.topics.clear();
  CHECK_THROWS_AS(build_experiment_a_grid(no_topics), ConfigError);

  auto no_pairings = make_experiment_config(2, 1, 1);
  no_pairings.pairings.clear();
  CHECK_THROWS_AS(build_experiment_a_grid(no_pairings), ConfigError);

  auto no_models = make_experiment_config(2, 1, 1);
  no_models.experiment_b_models.clear();
  CHECK_THROWS_AS(build_experiment_b_grid(no_models), ConfigError);
}

TEST_CASE("seeds derive from the master seed and run identity") {
  auto cfg = make_experiment_config(1, 1, 1);
  const auto g1 = build_experiment_a_grid(cfg);
  cfg.run.master_seed = 999;
  const auto g2 = build_experiment_a_grid(cfg);
  CHECK(g1[0].seed != g2[0].seed);
  CHECK(g1[0].seed == derive_debate_seed(20240811, run_identity(g1[0])));
}

TEST_CASE("config fingerprints track semantic differences") {
  const auto a = make_config("a");
  auto b = a;
  CHECK(config_fingerprint(a) == config_fingerprint(b));
  b.pairing.large.temperature = 0.9;
  CHECK(config_fingerprint(a) != config_fingerprint(b));
  CHECK(run_id_for(a) == run_id_for(b));  // identity ignores non-identity fields
}
