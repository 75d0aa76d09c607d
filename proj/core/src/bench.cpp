#include "albatch/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "albatch/rng.hpp"

namespace albatch {

PosteriorTensor synthetic_tensor(const PoolSpec& spec) {
  Rng rng(spec.seed);
  std::vector<double> probs(static_cast<std::size_t>(spec.n) * spec.k * spec.c);
  for (std::size_t row = 0; row < probs.size(); row += spec.c) {
    double sum = 0.0;
    for (int a = 0; a < spec.c; ++a) {
      // Exponential draws normalize to a uniform point on the simplex.
      const double e = -std::log(1.0 - rng.uniform());
      probs[row + a] = e;
      sum += e;
    }
    for (int a = 0; a < spec.c; ++a) probs[row + a] /= sum;
  }
  return PosteriorTensor(spec.n, spec.k, spec.c, std::move(probs));
}

BenchTable bench_runtime(const std::vector<StrategySpec>& strategies,
                         const std::vector<int>& batch_sizes, const PoolSpec& pool,
                         int reps, std::uint64_t seed) {
  if (reps < 1) throw Error("benchmark repetitions must be >= 1");
  using Clock = std::chrono::steady_clock;
  PosteriorTensor tensor = synthetic_tensor(pool);

  BenchTable table;
  table.pool = pool;
  table.reps = reps;
  std::uint64_t row_id = 0;
  for (const auto& strategy : strategies) {
    for (int b : batch_sizes) {
      StrategyParams params =
          StrategyParams::from_spec(strategy, b, Rng::mix(seed, row_id));
      ++row_id;

      run_strategy(tensor, params);  // warm-up, excluded from timing
      std::vector<double> times(reps);
      BenchRow row;
      row.strategy = to_string(strategy.strategy);
      row.batch = b;
      for (int rep = 0; rep < reps; ++rep) {
        const auto start = Clock::now();
        SelectionBatch selection = run_strategy(tensor, params);
        times[rep] = std::chrono::duration<double>(Clock::now() - start).count();
        times[rep] = std::max(times[rep], 1e-9);
        if (rep == 0) row.indices = selection.indices;
      }
      double mean = 0.0;
      for (double t : times) mean += t;
      mean /= reps;
      double var = 0.0;
      for (double t : times) var += (t - mean) * (t - mean);
      row.mean_s = mean;
      row.std_s = reps > 1 ? std::sqrt(var / (reps - 1)) : 0.0;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace albatch
