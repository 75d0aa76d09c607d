// Test-side generators and independent oracles. The oracles re-derive every
// quantity from first principles (direct enumeration, per-pair joints,
// entropy differences) and share no computational path with the library
// implementations they check.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "albatch/rng.hpp"
#include "albatch/tensor.hpp"

namespace testutil {

// points[i][j][a] = p(y_i = a | theta_j).
inline albatch::PosteriorTensor make_tensor(
    const std::vector<std::vector<std::vector<double>>>& points) {
  const int n = static_cast<int>(points.size());
  const int k = static_cast<int>(points[0].size());
  const int c = static_cast<int>(points[0][0].size());
  std::vector<double> probs;
  probs.reserve(static_cast<std::size_t>(n) * k * c);
  for (const auto& point : points) {
    for (const auto& member : point) {
      probs.insert(probs.end(), member.begin(), member.end());
    }
  }
  return albatch::PosteriorTensor(n, k, c, std::move(probs));
}

// Member rows uniform on the simplex (normalized exponentials).
inline albatch::PosteriorTensor random_tensor(int n, int k, int c, std::uint64_t seed) {
  albatch::Rng rng(seed);
  std::vector<double> probs(static_cast<std::size_t>(n) * k * c);
  for (std::size_t row = 0; row < probs.size(); row += c) {
    double sum = 0.0;
    for (int a = 0; a < c; ++a) {
      probs[row + a] = -std::log(1.0 - rng.uniform());
      sum += probs[row + a];
    }
    for (int a = 0; a < c; ++a) probs[row + a] /= sum;
  }
  return albatch::PosteriorTensor(n, k, c, std::move(probs));
}

inline double oracle_entropy(std::span<const double> dist) {
  double h = 0.0;
  for (double p : dist) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

inline double oracle_bald(const albatch::PosteriorTensor& t, int i) {
  const int k = t.members();
  const int c = t.classes();
  std::vector<double> mean(c, 0.0);
  double conditional = 0.0;
  for (int j = 0; j < k; ++j) {
    auto row = t.member_row(i, j);
    conditional += oracle_entropy(row);
    for (int a = 0; a < c; ++a) mean[a] += row[a] / k;
  }
  return oracle_entropy(mean) - conditional / k;
}

// Direct recursive enumeration of all c^b output configurations.
inline double oracle_joint_entropy(const albatch::PosteriorTensor& t,
                                   std::span<const int> subset) {
  const int k = t.members();
  const int c = t.classes();
  double total = 0.0;
  std::vector<double> per_member(k, 1.0);
  auto recurse = [&](auto&& self, std::size_t depth,
                     const std::vector<double>& partial) -> void {
    if (depth == subset.size()) {
      double q = 0.0;
      for (int j = 0; j < k; ++j) q += partial[j];
      q /= k;
      if (q > 0.0) total -= q * std::log(q);
      return;
    }
    for (int y = 0; y < c; ++y) {
      std::vector<double> next(k);
      for (int j = 0; j < k; ++j) next[j] = partial[j] * t.member_row(subset[depth], j)[y];
      self(self, depth + 1, next);
    }
  };
  recurse(recurse, 0, per_member);
  return total;
}

inline double oracle_batchbald(const albatch::PosteriorTensor& t,
                               std::span<const int> subset) {
  const int k = t.members();
  double conditional = 0.0;
  for (int idx : subset) {
    double h = 0.0;
    for (int j = 0; j < k; ++j) h += oracle_entropy(t.member_row(idx, j));
    conditional += h / k;
  }
  return oracle_joint_entropy(t, subset) - conditional;
}

// Entropy-difference route: C = sum_i H(y_i) - H(y_1..y_b).
inline double oracle_total_correlation(const albatch::PosteriorTensor& t,
                                       std::span<const int> subset) {
  const int k = t.members();
  const int c = t.classes();
  double marginal_sum = 0.0;
  for (int idx : subset) {
    std::vector<double> mean(c, 0.0);
    for (int j = 0; j < k; ++j) {
      auto row = t.member_row(idx, j);
      for (int a = 0; a < c; ++a) mean[a] += row[a] / k;
    }
    marginal_sum += oracle_entropy(mean);
  }
  return marginal_sum - oracle_joint_entropy(t, subset);
}

// Two-point mutual information from the explicitly built c x c joint.
inline double oracle_pairwise_mi(const albatch::PosteriorTensor& t, int i, int j) {
  const int k = t.members();
  const int c = t.classes();
  std::vector<double> joint(static_cast<std::size_t>(c) * c, 0.0);
  std::vector<double> mi(c, 0.0), mj(c, 0.0);
  for (int m = 0; m < k; ++m) {
    auto ri = t.member_row(i, m);
    auto rj = t.member_row(j, m);
    for (int a = 0; a < c; ++a) {
      mi[a] += ri[a] / k;
      for (int b = 0; b < c; ++b) joint[a * c + b] += ri[a] * rj[b] / k;
    }
    for (int b = 0; b < c; ++b) mj[b] += rj[b] / k;
  }
  double info = 0.0;
  for (int a = 0; a < c; ++a) {
    for (int b = 0; b < c; ++b) {
      const double v = joint[a * c + b];
      if (v > 0.0) info += v * std::log(v / (mi[a] * mj[b]));
    }
  }
  return info;
}

// Non-incremental greedy: recompute the full batch score from scratch for
// every candidate at every step.
inline std::vector<int> oracle_greedy_batchbald(const albatch::PosteriorTensor& t, int b,
                                                std::vector<double>* gains = nullptr) {
  std::vector<int> selected;
  double previous = 0.0;
  for (int step = 0; step < b; ++step) {
    double best_score = -1e300;
    int best_idx = -1;
    for (int cand = 0; cand < t.pool_size(); ++cand) {
      bool used = false;
      for (int s : selected) used = used || (s == cand);
      if (used) continue;
      std::vector<int> trial = selected;
      trial.push_back(cand);
      const double score = oracle_batchbald(t, trial);
      if (score > best_score) {
        best_score = score;
        best_idx = cand;
      }
    }
    selected.push_back(best_idx);
    if (gains != nullptr) gains->push_back(best_score - previous);
    previous = best_score;
  }
  return selected;
}

}  // namespace testutil
