// Wall-clock benchmarking of acquisition strategies on synthetic posterior
// tensors. Selections are deterministic per seed; only the measured times
// vary between runs.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "albatch/select.hpp"
#include "albatch/tensor.hpp"

namespace albatch {

struct PoolSpec {
  int n = 2000;
  int k = 10;
  int c = 10;
  std::uint64_t seed = 0;
};

// Uniform-on-the-simplex member rows (normalized exponentials).
PosteriorTensor synthetic_tensor(const PoolSpec& spec);

struct BenchRow {
  std::string strategy;
  int batch = 0;
  double mean_s = 0.0;
  double std_s = 0.0;
  std::vector<int> indices;  // selection from the first timed repetition
};

struct BenchTable {
  PoolSpec pool;
  int reps = 3;
  std::vector<BenchRow> rows;
};

// Times run_strategy for every (strategy, batch size) cell: one discarded
// warm-up, then `reps` timed repetitions, executed strictly sequentially.
BenchTable bench_runtime(const std::vector<StrategySpec>& strategies,
                         const std::vector<int>& batch_sizes, const PoolSpec& pool,
                         int reps, std::uint64_t seed);

}  // namespace albatch
