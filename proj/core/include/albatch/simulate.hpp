// Pool-based active-learning loop: train from scratch, score the pool,
// acquire a batch, repeat until the label budget is exhausted. Everything is
// deterministic per (config, seed).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "albatch/dataset.hpp"
#include "albatch/model.hpp"
#include "albatch/select.hpp"

namespace albatch {

struct IdxSpec {
  std::string images;
  std::string labels;
  int limit = -1;
  double test_fraction = 0.2;
};

struct DatasetSpec {
  enum class Generator { blobs, idx };
  Generator generator = Generator::blobs;
  BlobSpec blobs;
  IdxSpec idx;
};

Dataset make_dataset(const DatasetSpec& spec);

struct RunConfig {
  std::string problem = "problem";  // label used for profile grouping
  DatasetSpec dataset;
  ModelSpec model;
  StrategySpec strategy;
  int initial_labeled = 20;  // class-balanced; must divide by num_classes
  int batch = 10;
  int budget = 100;  // total labels including the initial set
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
};

struct RoundEntry {
  int round = 0;
  int labeled_count = 0;
  double test_accuracy = 0.0;
  double train_wall_time_s = 0.0;
  // Batch acquired after this round's training; empty on the final round.
  double acquisition_wall_time_s = 0.0;
  std::vector<int> acquired_indices;
};

struct RunRecord {
  std::string problem;
  std::string strategy;
  std::uint64_t seed = 0;
  std::vector<RoundEntry> rounds;
  std::string flag;  // e.g. "budget_not_divisible"
  std::vector<std::string> warnings;
};

// One active-learning run. The dataset is rebuilt from its own spec seed;
// model and selection seeds derive from `seed` and the round index.
RunRecord run_al_loop(const RunConfig& cfg, std::uint64_t seed);

std::vector<RunRecord> run_all_seeds(const RunConfig& cfg);

struct SummaryRow {
  int round = 0;
  int labeled = 0;
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;  // sample std over seeds
};

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);

// Deterministic class-balanced initial draw from the pool.
std::vector<int> balanced_initial_set(const Dataset& data, int initial,
                                      std::uint64_t seed);

}  // namespace albatch
