// Pairwise mutual information I(y_i; y_j) between pool points' outputs and
// the pairwise (second-order) approximation of total correlation. The joint
// class distribution of a pair marginalizes the members:
//
//   J[a,b] = (1/k) sum_t probs[i,t,a] * probs[j,t,b]
//   I(y_i; y_j) = sum_{a,b} J[a,b] * (ln J[a,b] - ln m_i[a] - ln m_j[b])
//
// where m_i, m_j are predictive-mean rows. Terms with J[a,b] == 0 contribute
// nothing.
#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "albatch/tensor.hpp"

namespace albatch {

// Pools at or below this size may materialize the full n x n matrix.
inline constexpr int kFullMatrixPoolCap = 4096;

double pairwise_mi(const PosteriorTensor& tensor, int i, int j);

// Rectangular tile [row_begin,row_end) x [col_begin,col_end); row-major.
// Diagonal entries (i == j) are 0 by convention so the tile stays usable in
// sums over ordered pairs.
struct MiTile {
  int row_begin = 0;
  int row_end = 0;
  int col_begin = 0;
  int col_end = 0;
  std::vector<double> values;

  double at(int i, int j) const {
    return values[static_cast<std::size_t>(i - row_begin) * (col_end - col_begin) +
                  (j - col_begin)];
  }
};

MiTile pairwise_mi_block(const PosteriorTensor& tensor, int row_begin, int row_end,
                         int col_begin, int col_end);

// Full symmetric matrix with zero diagonal; tiles computed in parallel.
// Throws if the pool exceeds kFullMatrixPoolCap.
std::vector<double> pairwise_mi_matrix(const PosteriorTensor& tensor);

// C_hat = sum over ordered pairs (i != j) of I(y_i; y_j); each unordered
// pair therefore counts twice.
double total_correlation_pairwise(const PosteriorTensor& tensor,
                                  std::span<const int> subset);

// I(point, candidate) for many candidates against one fixed point; the lazy
// path of greedy selection. Entries where candidate == point are 0.
std::vector<double> pairwise_mi_against(const PosteriorTensor& tensor, int point,
                                        std::span<const int> candidates);

// Binary matrix file: {"n":...,"m":...,"dtype":"f64"} header line followed
// by n*m little-endian doubles, row-major.
void write_matrix(const std::filesystem::path& path, int n, int m,
                  std::span<const double> values);
struct MatrixFile {
  int n = 0;
  int m = 0;
  std::vector<double> values;
};
MatrixFile read_matrix(const std::filesystem::path& path);

}  // namespace albatch
