#include "albatch/joint.hpp"

#include <algorithm>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "albatch/parallel.hpp"
#include "albatch/scores.hpp"

namespace albatch {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMat>;

constexpr std::size_t kCandidateChunk = 32;

void check_cap_for_subset(int c, std::size_t subset_size, int cap) {
  std::size_t configs = 1;
  for (std::size_t i = 0; i < subset_size; ++i) {
    configs *= static_cast<std::size_t>(c);
    if (configs > static_cast<std::size_t>(cap)) {
      throw EnumerationCapExceededError(
          "c^b = " + std::to_string(c) + "^" + std::to_string(subset_size) +
          " exceeds the enumeration cap " + std::to_string(cap) + "; use MC mode");
    }
  }
}

void check_pool_index(const PosteriorTensor& t, int idx) {
  if (idx < 0 || idx >= t.pool_size()) {
    throw IndexOutOfRangeError("pool index " + std::to_string(idx) + " outside [0," +
                               std::to_string(t.pool_size()) + ")");
  }
}

// Member-coherent configuration sample: pick theta_j uniformly, then draw
// each point's class from its j-th member distribution.
void sample_config(const PosteriorTensor& tensor, std::span<const int> subset, Rng& rng,
                   std::vector<int>& config) {
  const int k = tensor.members();
  const int c = tensor.classes();
  const int j = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(k)));
  config.resize(subset.size());
  for (std::size_t t = 0; t < subset.size(); ++t) {
    auto row = tensor.member_row(subset[t], j);
    double total = 0.0;
    for (int a = 0; a < c; ++a) total += row[a];
    config[t] = static_cast<int>(rng.categorical(row, total));
  }
}

// q(config) = (1/k) sum_j prod_i probs[i, j, config_i].
double config_probability(const PosteriorTensor& tensor, std::span<const int> subset,
                          std::span<const int> config) {
  const int k = tensor.members();
  double q = 0.0;
  for (int j = 0; j < k; ++j) {
    double prod = 1.0;
    for (std::size_t t = 0; t < subset.size(); ++t) {
      prod *= tensor.member_row(subset[t], j)[config[t]];
    }
    q += prod;
  }
  return q / k;
}

}  // namespace

JointConfigState::JointConfigState(const PosteriorTensor& tensor)
    : tensor_(&tensor), probs_(static_cast<std::size_t>(tensor.members()), 1.0) {}

bool JointConfigState::exact_extension_fits(int cap) const {
  return mode_ == JointMode::exact &&
         rows_ * static_cast<std::size_t>(tensor_->classes()) <=
             static_cast<std::size_t>(cap);
}

void JointConfigState::append_exact(int pool_index, int cap) {
  check_pool_index(*tensor_, pool_index);
  if (!exact_extension_fits(cap)) {
    throw EnumerationCapExceededError("appending point " + std::to_string(pool_index) +
                                      " would exceed the enumeration cap " +
                                      std::to_string(cap));
  }
  const int k = tensor_->members();
  const int c = tensor_->classes();
  std::vector<double> grown(rows_ * static_cast<std::size_t>(c) * k);
  for (std::size_t s = 0; s < rows_; ++s) {
    const double* parent = probs_.data() + s * k;
    for (int y = 0; y < c; ++y) {
      double* child = grown.data() + (s * c + y) * k;
      for (int j = 0; j < k; ++j) {
        child[j] = parent[j] * tensor_->member_row(pool_index, j)[y];
      }
    }
  }
  probs_ = std::move(grown);
  rows_ *= static_cast<std::size_t>(c);
  selected_.push_back(pool_index);
}

void JointConfigState::resample_mc(std::span<const int> new_selected, int m, Rng& rng) {
  if (m < 1) throw Error("MC sample count must be >= 1");
  const int k = tensor_->members();
  selected_.assign(new_selected.begin(), new_selected.end());
  for (int idx : selected_) check_pool_index(*tensor_, idx);

  // Deduplicate sampled configurations; std::map keeps a deterministic
  // (lexicographic) row order.
  std::map<std::vector<int>, int> counts;
  std::vector<int> config;
  for (int s = 0; s < m; ++s) {
    sample_config(*tensor_, selected_, rng, config);
    ++counts[config];
  }

  rows_ = counts.size();
  probs_.assign(rows_ * static_cast<std::size_t>(k), 0.0);
  weights_.resize(rows_);
  row_marginal_.resize(rows_);
  std::size_t s = 0;
  for (const auto& [cfg, count] : counts) {
    double* row = probs_.data() + s * k;
    double marginal = 0.0;
    for (int j = 0; j < k; ++j) {
      double prod = 1.0;
      for (std::size_t t = 0; t < cfg.size(); ++t) {
        prod *= tensor_->member_row(selected_[t], j)[cfg[t]];
      }
      row[j] = prod;
      marginal += prod;
    }
    row_marginal_[s] = marginal / k;
    weights_[s] = static_cast<double>(count) / m;
    ++s;
  }
  mode_ = JointMode::mc;
}

std::vector<double> JointConfigState::candidate_joint_entropies(
    std::span<const int> candidates) const {
  const int k = tensor_->members();
  const int c = tensor_->classes();
  const double inv_k = 1.0 / k;
  std::vector<double> out(candidates.size(), 0.0);

  ConstMap state(probs_.data(), static_cast<Eigen::Index>(rows_), k);
  parallel_chunks(candidates.size(), kCandidateChunk, [&](std::size_t q0, std::size_t q1) {
    const std::size_t width = q1 - q0;
    RowMat member_block(k, static_cast<Eigen::Index>(width * c));
    for (std::size_t q = q0; q < q1; ++q) {
      check_pool_index(*tensor_, candidates[q]);
      for (int j = 0; j < k; ++j) {
        auto row = tensor_->member_row(candidates[q], j);
        std::copy(row.begin(), row.end(),
                  member_block.row(j).data() + (q - q0) * c);
      }
    }
    RowMat joint = state * member_block;  // rows_ x (width * c)
    for (std::size_t q = q0; q < q1; ++q) {
      const std::size_t col0 = (q - q0) * c;
      double h = 0.0;
      if (mode_ == JointMode::exact) {
        for (std::size_t s = 0; s < rows_; ++s) {
          const double* jr = joint.row(static_cast<Eigen::Index>(s)).data() + col0;
          for (int y = 0; y < c; ++y) h -= xlogx(jr[y] * inv_k);
        }
      } else {
        for (std::size_t s = 0; s < rows_; ++s) {
          const double* jr = joint.row(static_cast<Eigen::Index>(s)).data() + col0;
          double inner = 0.0;
          for (int y = 0; y < c; ++y) {
            const double v = jr[y] * inv_k;
            if (v > 0.0) inner += v * log_floored(v);
          }
          h -= weights_[s] / row_marginal_[s] * inner;
        }
      }
      out[q] = h;
    }
  });
  return out;
}

double JointConfigState::candidate_joint_entropy(int candidate) const {
  const int one[1] = {candidate};
  return candidate_joint_entropies(one)[0];
}

double JointConfigState::joint_entropy() const {
  const int k = tensor_->members();
  const double inv_k = 1.0 / k;
  if (mode_ == JointMode::exact) {
    double h = 0.0;
    for (std::size_t s = 0; s < rows_; ++s) {
      double q = 0.0;
      const double* row = probs_.data() + s * k;
      for (int j = 0; j < k; ++j) q += row[j];
      h -= xlogx(q * inv_k);
    }
    return h;
  }
  double h = 0.0;
  for (std::size_t s = 0; s < rows_; ++s) {
    h -= weights_[s] * log_floored(row_marginal_[s]);
  }
  return h;
}

double joint_entropy_exact(const PosteriorTensor& tensor, std::span<const int> subset,
                           int cap) {
  if (subset.empty()) return 0.0;
  check_cap_for_subset(tensor.classes(), subset.size(), cap);
  JointConfigState state(tensor);
  for (int idx : subset) state.append_exact(idx, cap);
  return state.joint_entropy();
}

double joint_entropy_mc(const PosteriorTensor& tensor, std::span<const int> subset,
                        int m, std::uint64_t seed) {
  if (m < 1) throw Error("MC sample count must be >= 1");
  if (subset.empty()) return 0.0;
  for (int idx : subset) check_pool_index(tensor, idx);
  Rng rng(seed);
  std::map<std::vector<int>, int> counts;
  std::vector<int> config;
  for (int s = 0; s < m; ++s) {
    sample_config(tensor, subset, rng, config);
    ++counts[config];
  }
  double h = 0.0;
  const double inv_m = 1.0 / m;
  for (const auto& [cfg, count] : counts) {
    const double q = config_probability(tensor, subset, cfg);
    h -= count * inv_m * log_floored(q);
  }
  return h;
}

BatchScoreBreakdown batchbald_score(const PosteriorTensor& tensor,
                                    std::span<const int> subset,
                                    const BatchBaldParams& params) {
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      if (subset[a] == subset[b]) {
        throw DuplicateIndexError("duplicate pool index " + std::to_string(subset[a]) +
                                  " in batch subset");
      }
    }
  }
  BatchScoreBreakdown breakdown;
  breakdown.joint_entropy =
      params.mode == JointMode::exact
          ? joint_entropy_exact(tensor, subset, params.enumeration_cap)
          : joint_entropy_mc(tensor, subset, params.mc_samples, params.seed);
  const int k = tensor.members();
  double conditional = 0.0;
  for (int idx : subset) {
    check_pool_index(tensor, idx);
    double point = 0.0;
    for (int j = 0; j < k; ++j) point += entropy(tensor.member_row(idx, j));
    conditional += point / k;
  }
  breakdown.conditional_joint_entropy = conditional;
  breakdown.score = breakdown.joint_entropy - breakdown.conditional_joint_entropy;
  return breakdown;
}

double total_correlation_exact(const PosteriorTensor& tensor, std::span<const int> subset,
                               int cap) {
  if (subset.empty()) return 0.0;
  check_cap_for_subset(tensor.classes(), subset.size(), cap);
  const int k = tensor.members();
  const int c = tensor.classes();
  for (int idx : subset) check_pool_index(tensor, idx);
  std::size_t rows = 1;
  for (std::size_t t = 0; t < subset.size(); ++t) rows *= static_cast<std::size_t>(c);

  // Floored log predictive-mean rows for the subset points.
  MeanMatrix mean = predictive_mean(tensor);
  std::vector<double> log_means(subset.size() * static_cast<std::size_t>(c));
  for (std::size_t t = 0; t < subset.size(); ++t) {
    auto row = mean.row(subset[t]);
    for (int a = 0; a < c; ++a) log_means[t * c + a] = log_floored(row[a]);
  }

  // Row s encodes the configuration in base c, last subset point least
  // significant.
  double total = 0.0;
  const double inv_k = 1.0 / k;
  std::vector<int> digits(subset.size());
  for (std::size_t s = 0; s < rows; ++s) {
    std::size_t rem = s;
    for (std::size_t t = subset.size(); t-- > 0;) {
      digits[t] = static_cast<int>(rem % c);
      rem /= c;
    }
    double q = 0.0;
    for (int j = 0; j < k; ++j) {
      double prod = 1.0;
      for (std::size_t t = 0; t < subset.size(); ++t) {
        prod *= tensor.member_row(subset[t], j)[digits[t]];
      }
      q += prod;
    }
    q *= inv_k;
    if (q <= 0.0) continue;
    double log_prod_means = 0.0;
    for (std::size_t t = 0; t < subset.size(); ++t) {
      log_prod_means += log_means[t * c + digits[t]];
    }
    total += q * (log_floored(q) - log_prod_means);
  }
  return total;
}

double identity_residual(const PosteriorTensor& tensor, std::span<const int> subset,
                         int cap) {
  const int k = tensor.members();
  MeanMatrix mean = predictive_mean(tensor);
  double bald_sum = 0.0;
  for (int idx : subset) {
    check_pool_index(tensor, idx);
    double conditional = 0.0;
    for (int j = 0; j < k; ++j) conditional += entropy(tensor.member_row(idx, j));
    bald_sum += entropy(mean.row(idx)) - conditional / k;
  }
  BatchBaldParams params;
  params.enumeration_cap = cap;
  const double bb = batchbald_score(tensor, subset, params).score;
  const double tc = total_correlation_exact(tensor, subset, cap);
  return bald_sum - bb - tc;
}

}  // namespace albatch
