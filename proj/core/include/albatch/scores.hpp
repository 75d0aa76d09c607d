// Per-point acquisition scores: least confident, predictive entropy, and
// BALD (marginal entropy minus posterior mean conditional entropy). All
// entropies are in nats.
#pragma once

#include <span>
#include <vector>

#include "albatch/tensor.hpp"

namespace albatch {

// Audit record for one pool point: bald == marginal - conditional by
// construction. Tiny negative bald values from rounding are reported as-is;
// clamping is left to consumers that require positivity.
struct EntropyDecomposition {
  double marginal_entropy = 0.0;
  double mean_conditional_entropy = 0.0;
  double bald = 0.0;
};

struct BaldResult {
  ScoreVector scores;
  std::vector<EntropyDecomposition> decomposition;
};

// -sum_c p_c ln p_c over one distribution, with the shared log floor.
double entropy(std::span<const double> dist);

// score[i] = 1 - max_c mean[i,c], computed on the ensemble predictive mean.
ScoreVector least_confident_scores(const PosteriorTensor& tensor);

// score[i] = H[mean row i].
ScoreVector entropy_scores(const PosteriorTensor& tensor);

// score[i] = H[mean row i] - (1/k) sum_j H[probs[i,j,.]].
BaldResult bald_scores(const PosteriorTensor& tensor);

}  // namespace albatch
