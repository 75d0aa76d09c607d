#include "albatch/scores.hpp"

#include <algorithm>

namespace albatch {

double entropy(std::span<const double> dist) {
  double h = 0.0;
  for (double p : dist) h -= xlogx(p);
  return h;
}

ScoreVector least_confident_scores(const PosteriorTensor& tensor) {
  MeanMatrix mean = predictive_mean(tensor);
  ScoreVector out;
  out.label = "lc";
  out.values.resize(mean.n);
  for (int i = 0; i < mean.n; ++i) {
    auto row = mean.row(i);
    out.values[i] = 1.0 - *std::max_element(row.begin(), row.end());
  }
  return out;
}

ScoreVector entropy_scores(const PosteriorTensor& tensor) {
  MeanMatrix mean = predictive_mean(tensor);
  ScoreVector out;
  out.label = "entropy";
  out.values.resize(mean.n);
  for (int i = 0; i < mean.n; ++i) out.values[i] = entropy(mean.row(i));
  return out;
}

BaldResult bald_scores(const PosteriorTensor& tensor) {
  const int n = tensor.pool_size();
  const int k = tensor.members();
  MeanMatrix mean = predictive_mean(tensor);
  BaldResult result;
  result.scores.label = "bald";
  result.scores.values.resize(n);
  result.decomposition.resize(n);
  const double inv_k = 1.0 / k;
  for (int i = 0; i < n; ++i) {
    double conditional = 0.0;
    for (int j = 0; j < k; ++j) conditional += entropy(tensor.member_row(i, j));
    conditional *= inv_k;
    const double marginal = entropy(mean.row(i));
    EntropyDecomposition& d = result.decomposition[i];
    d.marginal_entropy = marginal;
    d.mean_conditional_entropy = conditional;
    d.bald = marginal - conditional;
    result.scores.values[i] = d.bald;
  }
  return result;
}

}  // namespace albatch
