#include "albatch/select.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "albatch/pairwise.hpp"
#include "albatch/scores.hpp"

namespace albatch {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_batch(int b) {
  if (b < 1) throw Error("batch size must be >= 1, got " + std::to_string(b));
}

// Argmax with ties resolved to the lowest index; values holds one entry per
// candidate in `order`.
std::size_t argmax_slot(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t q = 1; q < values.size(); ++q) {
    if (values[q] > values[best]) best = q;
  }
  return best;
}

// (1/k) sum_j H(probs[i,j,.]) for every pool point.
std::vector<double> member_conditional_entropies(const PosteriorTensor& tensor) {
  const int n = tensor.pool_size();
  const int k = tensor.members();
  std::vector<double> cond(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double h = 0.0;
    for (int j = 0; j < k; ++j) h += entropy(tensor.member_row(i, j));
    cond[i] = h / k;
  }
  return cond;
}

struct PenaltyTracker {
  // 2 * sum over selected of I(x, selected); lazily extended, or served from
  // a precomputed full matrix.
  PenaltyTracker(const PosteriorTensor& tensor, bool full_matrix)
      : tensor_(&tensor), penalties_(tensor.pool_size(), 0.0) {
    if (full_matrix) matrix_ = pairwise_mi_matrix(tensor);
  }

  void absorb(int chosen, std::span<const int> remaining) {
    const std::size_t n = static_cast<std::size_t>(tensor_->pool_size());
    if (!matrix_.empty()) {
      const double* row = matrix_.data() + static_cast<std::size_t>(chosen) * n;
      for (int idx : remaining) penalties_[idx] += 2.0 * row[idx];
      return;
    }
    std::vector<double> mi = pairwise_mi_against(*tensor_, chosen, remaining);
    for (std::size_t q = 0; q < remaining.size(); ++q) {
      penalties_[remaining[q]] += 2.0 * mi[q];
    }
  }

  double penalty(int idx) const { return penalties_[idx]; }

 private:
  const PosteriorTensor* tensor_;
  std::vector<double> penalties_;
  std::vector<double> matrix_;
};

}  // namespace

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::random: return "random";
    case Strategy::topk_entropy: return "topk-entropy";
    case Strategy::topk_lc: return "topk-lc";
    case Strategy::topk_bald: return "bald";
    case Strategy::pbald: return "pbald";
    case Strategy::batchbald: return "batchbald";
    case Strategy::lbb: return "lbb";
    case Strategy::plbb: return "plbb";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "random") return Strategy::random;
  if (name == "topk-entropy" || name == "entropy") return Strategy::topk_entropy;
  if (name == "topk-lc" || name == "lc") return Strategy::topk_lc;
  if (name == "bald" || name == "topk-bald") return Strategy::topk_bald;
  if (name == "pbald") return Strategy::pbald;
  if (name == "batchbald") return Strategy::batchbald;
  if (name == "lbb") return Strategy::lbb;
  if (name == "plbb") return Strategy::plbb;
  throw Error("unknown strategy: " + std::string(name));
}

SelectionBatch select_topk(const ScoreVector& scores, int b) {
  check_batch(b);
  const auto start = Clock::now();
  const int n = static_cast<int>(scores.size());
  SelectionBatch batch;
  batch.strategy = "topk-" + (scores.label.empty() ? std::string("scores") : scores.label);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int bdx) {
    if (scores.values[a] != scores.values[bdx]) {
      return scores.values[a] > scores.values[bdx];
    }
    return a < bdx;
  });
  int take = b;
  if (b > n) {
    take = n;
    batch.flag = "batch_larger_than_pool";
  }
  batch.indices.assign(order.begin(), order.begin() + take);
  batch.wall_time_s = seconds_since(start);
  return batch;
}

SelectionBatch select_random(int n, int b, std::uint64_t seed) {
  check_batch(b);
  const auto start = Clock::now();
  SelectionBatch batch;
  batch.strategy = "random";
  batch.seed = seed;
  int take = b;
  if (b > n) {
    take = n;
    batch.flag = "batch_larger_than_pool";
  }
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  Rng rng(seed);
  for (int i = 0; i < take; ++i) {
    const std::size_t j =
        static_cast<std::size_t>(i) + rng.uniform_index(static_cast<std::size_t>(n - i));
    std::swap(pool[i], pool[j]);
  }
  batch.indices.assign(pool.begin(), pool.begin() + take);
  batch.wall_time_s = seconds_since(start);
  return batch;
}

SelectionBatch select_power(const ScoreVector& scores, int b, const PowerConfig& cfg) {
  check_batch(b);
  if (!(cfg.alpha > 0.0)) throw Error("power exponent alpha must be > 0");
  const auto start = Clock::now();
  const int n = static_cast<int>(scores.size());
  SelectionBatch batch;
  batch.strategy = "power-" + (scores.label.empty() ? std::string("scores") : scores.label);
  batch.seed = cfg.seed;
  int take = b;
  if (b > n) {
    take = n;
    batch.flag = "batch_larger_than_pool";
  }
  if (n > 0 &&
      *std::max_element(scores.values.begin(), scores.values.end()) <= 0.0) {
    batch.flag = batch.flag.empty() ? "all_scores_zero" : batch.flag + ";all_scores_zero";
  }

  Rng rng(cfg.seed);
  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<double> weights;
  for (int step = 0; step < take; ++step) {
    weights.resize(remaining.size());
    double max_clamped = 0.0;
    for (std::size_t q = 0; q < remaining.size(); ++q) {
      const double s = std::max(scores.values[remaining[q]], cfg.clamp_floor);
      weights[q] = s;
      max_clamped = std::max(max_clamped, s);
    }
    // Normalizing by the maximum keeps score^alpha representable for any
    // alpha; the draw probabilities are unchanged.
    double total = 0.0;
    for (double& w : weights) {
      w = std::pow(w / max_clamped, cfg.alpha);
      total += w;
    }
    const std::size_t slot = rng.categorical(weights, total);
    batch.indices.push_back(remaining[slot]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(slot));
  }
  batch.wall_time_s = seconds_since(start);
  return batch;
}

SelectionBatch select_batchbald(const PosteriorTensor& tensor, int b,
                                const BatchBaldParams& params) {
  check_batch(b);
  const auto start = Clock::now();
  const int n = tensor.pool_size();
  SelectionBatch batch;
  batch.strategy = "batchbald";
  batch.seed = params.seed;
  int take = b;
  if (b > n) {
    take = n;
    batch.flag = "batch_larger_than_pool";
  }

  const std::vector<double> point_cond = member_conditional_entropies(tensor);
  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);

  JointConfigState state(tensor);
  double conditional_sum = 0.0;
  double previous_score = 0.0;
  for (int step = 0; step < take; ++step) {
    if (!state.exact_extension_fits(params.enumeration_cap)) {
      Rng rng(Rng::mix(params.seed, static_cast<std::uint64_t>(step)));
      state.resample_mc(batch.indices, params.mc_samples, rng);
    }
    std::vector<double> joint = state.candidate_joint_entropies(remaining);
    std::vector<double> score(remaining.size());
    for (std::size_t q = 0; q < remaining.size(); ++q) {
      score[q] = joint[q] - (conditional_sum + point_cond[remaining[q]]);
    }
    const std::size_t slot = argmax_slot(score);
    const int chosen = remaining[slot];
    batch.gains.push_back(score[slot] - previous_score);
    previous_score = score[slot];
    conditional_sum += point_cond[chosen];
    batch.indices.push_back(chosen);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(slot));
    if (state.mode() == JointMode::exact &&
        state.exact_extension_fits(params.enumeration_cap)) {
      state.append_exact(chosen, params.enumeration_cap);
    }
  }
  batch.wall_time_s = seconds_since(start);
  return batch;
}

SelectionBatch select_lbb(const PosteriorTensor& tensor, int b, const LbbOptions& opts) {
  check_batch(b);
  const auto start = Clock::now();
  const int n = tensor.pool_size();
  SelectionBatch batch;
  batch.strategy = "lbb";
  int take = b;
  if (b > n) {
    take = n;
    batch.flag = "batch_larger_than_pool";
  }

  const BaldResult bald = bald_scores(tensor);
  PenaltyTracker penalties(tensor, opts.full_matrix);
  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<double> gain;
  for (int step = 0; step < take; ++step) {
    gain.resize(remaining.size());
    for (std::size_t q = 0; q < remaining.size(); ++q) {
      const int idx = remaining[q];
      gain[q] = bald.scores.values[idx] - penalties.penalty(idx);
    }
    const std::size_t slot = argmax_slot(gain);
    const int chosen = remaining[slot];
    batch.gains.push_back(gain[slot]);
    batch.indices.push_back(chosen);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(slot));
    if (step + 1 < take) penalties.absorb(chosen, remaining);
  }
  batch.wall_time_s = seconds_since(start);
  return batch;
}

SelectionBatch select_plbb(const PosteriorTensor& tensor, int b, const PowerConfig& cfg,
                           const LbbOptions& opts) {
  check_batch(b);
  if (!(cfg.alpha > 0.0)) throw Error("power exponent alpha must be > 0");
  const auto start = Clock::now();
  const int n = tensor.pool_size();
  SelectionBatch batch;
  batch.strategy = "plbb";
  batch.seed = cfg.seed;
  int take = b;
  if (b > n) {
    take = n;
    batch.flag = "batch_larger_than_pool";
  }

  const BaldResult bald = bald_scores(tensor);
  if (n > 0 && *std::max_element(bald.scores.values.begin(), bald.scores.values.end()) <=
                   0.0) {
    batch.flag = batch.flag.empty() ? "all_scores_zero" : batch.flag + ";all_scores_zero";
  }
  PenaltyTracker penalties(tensor, opts.full_matrix);
  Rng rng(cfg.seed);
  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<double> weights;
  for (int step = 0; step < take; ++step) {
    weights.resize(remaining.size());
    double max_clamped = 0.0;
    for (std::size_t q = 0; q < remaining.size(); ++q) {
      const int idx = remaining[q];
      const double g =
          std::max(bald.scores.values[idx] - penalties.penalty(idx), cfg.clamp_floor);
      weights[q] = g;
      max_clamped = std::max(max_clamped, g);
    }
    double total = 0.0;
    for (double& w : weights) {
      w = std::pow(w / max_clamped, cfg.alpha);
      total += w;
    }
    const std::size_t slot = rng.categorical(weights, total);
    const int chosen = remaining[slot];
    batch.gains.push_back(bald.scores.values[chosen] - penalties.penalty(chosen));
    batch.indices.push_back(chosen);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(slot));
    if (step + 1 < take) penalties.absorb(chosen, remaining);
  }
  batch.wall_time_s = seconds_since(start);
  return batch;
}

SelectionBatch run_strategy(const PosteriorTensor& tensor, const StrategyParams& params) {
  const auto start = Clock::now();
  SelectionBatch batch;
  switch (params.strategy) {
    case Strategy::random:
      batch = select_random(tensor.pool_size(), params.batch, params.seed);
      break;
    case Strategy::topk_entropy:
      batch = select_topk(entropy_scores(tensor), params.batch);
      break;
    case Strategy::topk_lc:
      batch = select_topk(least_confident_scores(tensor), params.batch);
      break;
    case Strategy::topk_bald:
      batch = select_topk(bald_scores(tensor).scores, params.batch);
      break;
    case Strategy::pbald: {
      PowerConfig cfg;
      cfg.alpha = params.alpha;
      cfg.seed = params.seed;
      batch = select_power(bald_scores(tensor).scores, params.batch, cfg);
      break;
    }
    case Strategy::batchbald: {
      BatchBaldParams bb;
      bb.mc_samples = params.mc_samples;
      bb.seed = params.seed;
      bb.enumeration_cap = params.enumeration_cap;
      batch = select_batchbald(tensor, params.batch, bb);
      break;
    }
    case Strategy::lbb: {
      LbbOptions opts;
      opts.full_matrix = params.lbb_full_matrix;
      batch = select_lbb(tensor, params.batch, opts);
      break;
    }
    case Strategy::plbb: {
      PowerConfig cfg;
      cfg.alpha = params.alpha;
      cfg.seed = params.seed;
      LbbOptions opts;
      opts.full_matrix = params.lbb_full_matrix;
      batch = select_plbb(tensor, params.batch, cfg, opts);
      break;
    }
  }
  batch.strategy = to_string(params.strategy);
  batch.wall_time_s = seconds_since(start);
  return batch;
}

}  // namespace albatch
