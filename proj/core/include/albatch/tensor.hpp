// Posterior predictive tensor: the pool x member x class probability block
// that every acquisition computation consumes. Immutable after construction;
// concurrent reads are safe.
#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "albatch/errors.hpp"

namespace albatch {

// Floor applied inside logarithms; a term p*log(p) contributes 0 when p == 0.
inline constexpr double kLogFloor = 1e-12;

// Tolerance for per-(pool, member) row sums at ingestion.
inline constexpr double kRowSumTol = 1e-6;

// p * ln(p) with the shared epsilon floor.
inline double xlogx(double p) {
  if (p <= 0.0) return 0.0;
  return p * std::log(p < kLogFloor ? kLogFloor : p);
}

// ln(p) with the shared epsilon floor.
inline double log_floored(double p) {
  return std::log(p < kLogFloor ? kLogFloor : p);
}

class PosteriorTensor {
 public:
  // Takes ownership of `probs` laid out row-major as [pool, member, class].
  // Validates shape and probability invariants; throws RowSumViolationError /
  // NegativeProbabilityError / HeaderMismatchError on bad input.
  PosteriorTensor(int n, int k, int c, std::vector<double> probs);

  int pool_size() const { return n_; }
  int members() const { return k_; }
  int classes() const { return c_; }

  // The c probabilities p(y = . | x_i, theta_j).
  std::span<const double> member_row(int i, int j) const {
    return {probs_.data() + (static_cast<std::size_t>(i) * k_ + j) * c_,
            static_cast<std::size_t>(c_)};
  }

  // All k*c values for pool point i, members contiguous.
  std::span<const double> point_block(int i) const {
    return {probs_.data() + static_cast<std::size_t>(i) * k_ * c_,
            static_cast<std::size_t>(k_) * c_};
  }

  const std::vector<double>& data() const { return probs_; }

  // Binary round-trip: one-line JSON header followed by little-endian f64
  // payload. read() re-validates all invariants.
  static PosteriorTensor read(const std::filesystem::path& path);
  static PosteriorTensor read(std::istream& in);
  void write(const std::filesystem::path& path) const;
  void write(std::ostream& out) const;

 private:
  int n_ = 0;
  int k_ = 0;
  int c_ = 0;
  std::vector<double> probs_;
};

// Row-stochastic n x c matrix of ensemble-averaged predictions.
struct MeanMatrix {
  int n = 0;
  int c = 0;
  std::vector<double> values;  // row-major

  std::span<const double> row(int i) const {
    return {values.data() + static_cast<std::size_t>(i) * c,
            static_cast<std::size_t>(c)};
  }

  // CSV with header "pool_index,class_0,...".
  void write_csv(const std::filesystem::path& path) const;
};

// Per-pool-point acquisition scores in nats, aligned to pool indices.
struct ScoreVector {
  std::vector<double> values;
  std::string label;  // strategy name

  std::size_t size() const { return values.size(); }

  // CSV with header "pool_index,score"; the strategy label belongs in the
  // file name, not the payload.
  void write_csv(const std::filesystem::path& path) const;
};

// Row i, class c = (1/k) * sum_j probs[i,j,c].
MeanMatrix predictive_mean(const PosteriorTensor& tensor);

}  // namespace albatch
