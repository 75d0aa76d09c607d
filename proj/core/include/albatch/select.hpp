// Batch selection strategies over a posterior tensor: random, top-k on a
// score vector, sequential power sampling, greedy BatchBALD, and greedy
// large-batch BALD (BALD minus pairwise-MI penalties). Every strategy is
// deterministic given (tensor, b, seed).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "albatch/joint.hpp"
#include "albatch/tensor.hpp"

namespace albatch {

enum class Strategy {
  random,
  topk_entropy,
  topk_lc,
  topk_bald,
  pbald,
  batchbald,
  lbb,
  plbb,
};

std::string to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

struct SelectionBatch {
  std::vector<int> indices;   // acquisition order
  std::vector<double> gains;  // per-step marginal gain; empty when undefined
  std::string strategy;
  std::optional<std::uint64_t> seed;
  double wall_time_s = 0.0;
  // Degenerate-input markers, e.g. "batch_larger_than_pool" or
  // "all_scores_zero"; empty on the normal path.
  std::string flag;
};

struct PowerConfig {
  double alpha = 1.0;  // must be > 0
  std::uint64_t seed = 0;
  // Scores are raised to alpha only after clamping here, so non-positive
  // scores (numerical noise in BALD) keep a vanishing but valid weight.
  double clamp_floor = 1e-12;
};

struct LbbOptions {
  // Lazy candidate-vs-selected pairwise terms by default; the full matrix
  // precompute requires pool_size <= kFullMatrixPoolCap.
  bool full_matrix = false;
};

// Indices of the b largest scores, descending; ties resolved to the lowest
// pool index. b > n returns the whole pool flagged.
SelectionBatch select_topk(const ScoreVector& scores, int b);

// Uniform sample without replacement.
SelectionBatch select_random(int n, int b, std::uint64_t seed);

// Sequential renormalized draws without replacement with probabilities
// proportional to score^alpha.
SelectionBatch select_power(const ScoreVector& scores, int b, const PowerConfig& cfg);

// Greedy maximization of the batch mutual information; exact configuration
// enumeration while it fits under the cap, MC sampling afterwards. Gains are
// recorded as score increments.
SelectionBatch select_batchbald(const PosteriorTensor& tensor, int b,
                                const BatchBaldParams& params = {});

// Greedy on gain(x) = bald[x] - 2 * sum_{j in selected} I(x, j); the factor
// 2 matches the ordered-pair total-correlation sum.
SelectionBatch select_lbb(const PosteriorTensor& tensor, int b,
                          const LbbOptions& opts = {});

// Stochastic variant of select_lbb: at each step the clamped gains are
// raised to alpha, normalized, and sampled. Collapses to power-sampled BALD
// when all pairwise terms vanish.
SelectionBatch select_plbb(const PosteriorTensor& tensor, int b, const PowerConfig& cfg,
                           const LbbOptions& opts = {});

// Strategy plus its tuning knobs, without run-specific batch/seed; the form
// configs are written in.
struct StrategySpec {
  Strategy strategy = Strategy::random;
  double alpha = 1.0;
  int mc_samples = kDefaultMcSamples;
  bool lbb_full_matrix = false;
};

// Strategy dispatch used by the CLI and the simulator.
struct StrategyParams {
  Strategy strategy = Strategy::random;
  int batch = 1;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  int mc_samples = kDefaultMcSamples;
  int enumeration_cap = kDefaultEnumerationCap;
  bool lbb_full_matrix = false;

  static StrategyParams from_spec(const StrategySpec& spec, int batch,
                                  std::uint64_t seed) {
    StrategyParams p;
    p.strategy = spec.strategy;
    p.batch = batch;
    p.alpha = spec.alpha;
    p.seed = seed;
    p.mc_samples = spec.mc_samples;
    p.lbb_full_matrix = spec.lbb_full_matrix;
    return p;
  }
};

SelectionBatch run_strategy(const PosteriorTensor& tensor, const StrategyParams& params);

}  // namespace albatch
