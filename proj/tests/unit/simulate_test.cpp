#include <set>

#include "albatch/simulate.hpp"
#include "doctest.h"

using namespace albatch;

namespace {

RunConfig quick_config() {
  RunConfig cfg;
  cfg.problem = "blobs";
  cfg.dataset.generator = DatasetSpec::Generator::blobs;
  cfg.dataset.blobs.classes = 2;
  cfg.dataset.blobs.per_class = 40;
  cfg.dataset.blobs.noise = 0.7;
  cfg.dataset.blobs.test_per_class = 60;
  cfg.dataset.blobs.seed = 17;
  cfg.model.members = 3;
  cfg.model.hidden_width = 12;
  cfg.model.epochs = 60;
  cfg.model.learning_rate = 0.2;
  cfg.strategy.strategy = Strategy::random;
  cfg.initial_labeled = 10;
  cfg.batch = 10;
  cfg.budget = 50;
  cfg.seeds = {0, 1};
  return cfg;
}

}  // namespace

TEST_CASE("round arithmetic: 4 acquisition rounds, 5 accuracy entries") {
  RunRecord r = run_al_loop(quick_config(), 0);
  REQUIRE(r.rounds.size() == 5);
  int expected_labels = 10;
  for (std::size_t t = 0; t < r.rounds.size(); ++t) {
    CHECK(r.rounds[t].labeled_count == expected_labels);
    CHECK(r.rounds[t].test_accuracy >= 0.0);
    CHECK(r.rounds[t].test_accuracy <= 1.0);
    if (t + 1 < r.rounds.size()) {
      CHECK(r.rounds[t].acquired_indices.size() == 10);
      expected_labels += 10;
    } else {
      CHECK(r.rounds[t].acquired_indices.empty());
    }
  }
  CHECK(r.flag.empty());
}

TEST_CASE("acquired indices never repeat and stay inside the pool") {
  RunConfig cfg = quick_config();
  cfg.strategy.strategy = Strategy::topk_bald;
  RunRecord r = run_al_loop(cfg, 3);
  Dataset d = make_dataset(cfg.dataset);
  std::set<int> pool(d.pool_indices.begin(), d.pool_indices.end());
  std::set<int> seen;
  for (const auto& round : r.rounds) {
    for (int idx : round.acquired_indices) {
      CHECK(pool.contains(idx));
      CHECK(!seen.contains(idx));
      seen.insert(idx);
    }
  }
}

TEST_CASE("balanced initial set") {
  Dataset d = make_dataset(quick_config().dataset);
  std::vector<int> initial = balanced_initial_set(d, 10, 4);
  CHECK(initial.size() == 10);
  int per_class[2] = {0, 0};
  for (int idx : initial) ++per_class[d.labels[idx]];
  CHECK(per_class[0] == 5);
  CHECK(per_class[1] == 5);
  CHECK(balanced_initial_set(d, 10, 4) == initial);
  CHECK_THROWS_AS(balanced_initial_set(d, 7, 4), InvalidSpecError);
}

TEST_CASE("end-to-end determinism per seed") {
  RunConfig cfg = quick_config();
  RunRecord a = run_al_loop(cfg, 5);
  RunRecord b = run_al_loop(cfg, 5);
  REQUIRE(a.rounds.size() == b.rounds.size());
  for (std::size_t t = 0; t < a.rounds.size(); ++t) {
    CHECK(a.rounds[t].test_accuracy == b.rounds[t].test_accuracy);
    CHECK(a.rounds[t].acquired_indices == b.rounds[t].acquired_indices);
  }
  RunRecord c = run_al_loop(cfg, 6);
  bool any_different = false;
  for (std::size_t t = 0; t < a.rounds.size(); ++t) {
    any_different = any_different || a.rounds[t].acquired_indices != c.rounds[t].acquired_indices;
  }
  CHECK(any_different);
}

TEST_CASE("partial final batch is flagged") {
  RunConfig cfg = quick_config();
  cfg.budget = 45;  // (45 - 10) % 10 != 0
  RunRecord r = run_al_loop(cfg, 0);
  CHECK(r.flag == "budget_not_divisible");
  CHECK(r.rounds.back().labeled_count == 45);
  CHECK(r.rounds[r.rounds.size() - 2].acquired_indices.size() == 5);
}

TEST_CASE("config validation") {
  RunConfig cfg = quick_config();
  cfg.budget = 10'000;
  CHECK_THROWS_AS(run_al_loop(cfg, 0), InvalidSpecError);
  cfg = quick_config();
  cfg.initial_labeled = 7;
  CHECK_THROWS_AS(run_al_loop(cfg, 0), InvalidSpecError);
  cfg = quick_config();
  cfg.budget = 5;
  CHECK_THROWS_AS(run_al_loop(cfg, 0), InvalidSpecError);
}

TEST_CASE("summaries aggregate seeds") {
  RunConfig cfg = quick_config();
  std::vector<RunRecord> records = run_all_seeds(cfg);
  REQUIRE(records.size() == 2);
  std::vector<SummaryRow> rows = summarize(records);
  REQUIRE(rows.size() == records[0].rounds.size());
  CHECK(rows[0].labeled == 10);
  CHECK(rows.back().labeled == 50);
  const double a = records[0].rounds[0].test_accuracy;
  const double b = records[1].rounds[0].test_accuracy;
  CHECK(rows[0].accuracy_mean == doctest::Approx((a + b) / 2).epsilon(1e-12));
}
