// Joint predictive entropies over subsets of pool points, exact by
// enumeration of output configurations or estimated from Monte Carlo
// configuration samples, plus the quantities built on them: BatchBALD
// scores, exact total correlation, and the residual of the identity
//
//   sum_i BALD(y_i) - BatchBALD(y_1..y_b) - C(y_1..y_b) = 0.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "albatch/rng.hpp"
#include "albatch/tensor.hpp"

namespace albatch {

// Exact enumeration is allowed while c^|subset| stays at or below this cap;
// beyond it callers must switch to MC sampling.
inline constexpr int kDefaultEnumerationCap = 10000;

// Default number of MC-sampled configurations.
inline constexpr int kDefaultMcSamples = 10000;

enum class JointMode { exact, mc };

// Running table of p(y_selected = config | theta_j) over the absorbed pool
// points. Exact mode holds all c^depth configurations; MC mode holds
// deduplicated sampled configurations with multiplicities. Frozen states are
// safe to score candidates against from many threads; growth is sequential.
class JointConfigState {
 public:
  explicit JointConfigState(const PosteriorTensor& tensor);

  JointMode mode() const { return mode_; }
  int depth() const { return static_cast<int>(selected_.size()); }
  std::size_t rows() const { return rows_; }
  std::span<const int> selected() const { return selected_; }

  // Whether scoring a candidate on top of this exact state stays within the
  // enumeration cap (rows * c configurations).
  bool exact_extension_fits(int cap) const;

  // Exact growth: every configuration row expands into c children by
  // member-wise multiplication with the new point's distributions.
  void append_exact(int pool_index, int cap);

  // MC growth: rebuilds the table from m member-coherent samples of the
  // selected points' joint outputs (draw theta_j uniformly, then each y from
  // probs[i,j,.]). Duplicates are merged with multiplicity.
  void resample_mc(std::span<const int> new_selected, int m, Rng& rng);

  // Joint entropy of a candidate appended to the frozen state. Exact mode:
  // -sum over (config, y) of q ln q with q = (1/k) sum_j state * probs.
  // MC mode: importance form -sum_s w_s sum_y q(s,y)/p(s) * ln q(s,y).
  double candidate_joint_entropy(int candidate) const;

  // Same quantity for a contiguous range of candidates; parallel over
  // fixed-size chunks, results slotted by candidate index.
  std::vector<double> candidate_joint_entropies(std::span<const int> candidates) const;

  // Joint entropy of the absorbed subset itself.
  double joint_entropy() const;

 private:
  const PosteriorTensor* tensor_;
  JointMode mode_ = JointMode::exact;
  std::size_t rows_ = 1;
  std::vector<int> selected_;
  std::vector<double> probs_;         // rows_ x k, p(config | theta_j)
  std::vector<double> weights_;       // MC: multiplicity_s / m
  std::vector<double> row_marginal_;  // MC: p(config_s) = mean_j probs_
};

double joint_entropy_exact(const PosteriorTensor& tensor, std::span<const int> subset,
                           int cap = kDefaultEnumerationCap);

// Plug-in estimator from m sampled configurations: H ~ -sum over unique
// sampled configs of (count/m) ln q(config). Deterministic given seed.
double joint_entropy_mc(const PosteriorTensor& tensor, std::span<const int> subset,
                        int m, std::uint64_t seed);

struct BatchScoreBreakdown {
  double joint_entropy = 0.0;
  double conditional_joint_entropy = 0.0;
  double score = 0.0;  // joint - conditional
};

struct BatchBaldParams {
  JointMode mode = JointMode::exact;
  int mc_samples = kDefaultMcSamples;
  std::uint64_t seed = 0;
  int enumeration_cap = kDefaultEnumerationCap;
};

BatchScoreBreakdown batchbald_score(const PosteriorTensor& tensor,
                                    std::span<const int> subset,
                                    const BatchBaldParams& params = {});

// C = sum_config q ln(q / prod_i m_i[config_i]), exact enumeration.
double total_correlation_exact(const PosteriorTensor& tensor, std::span<const int> subset,
                               int cap = kDefaultEnumerationCap);

// sum_i BALD[i] - BatchBALD(subset, exact) - C(subset); contractually within
// 1e-9 of zero on exact-feasible instances.
double identity_residual(const PosteriorTensor& tensor, std::span<const int> subset,
                         int cap = kDefaultEnumerationCap);

}  // namespace albatch
