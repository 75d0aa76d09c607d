#include "albatch/pairwise.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "albatch/parallel.hpp"

namespace albatch {

namespace {

void check_index(const PosteriorTensor& t, int i) {
  if (i < 0 || i >= t.pool_size()) {
    throw IndexOutOfRangeError("pool index " + std::to_string(i) + " outside [0," +
                               std::to_string(t.pool_size()) + ")");
  }
}

// Mean and floored-log-mean rows for a set of points, packed contiguously.
struct MeanCache {
  int c = 0;
  std::vector<double> mean;
  std::vector<double> log_mean;

  MeanCache(const PosteriorTensor& t, int begin, int end) : c(t.classes()) {
    const int k = t.members();
    const int count = end - begin;
    mean.assign(static_cast<std::size_t>(count) * c, 0.0);
    log_mean.resize(mean.size());
    const double inv_k = 1.0 / k;
    for (int i = 0; i < count; ++i) {
      double* m = mean.data() + static_cast<std::size_t>(i) * c;
      for (int j = 0; j < k; ++j) {
        auto row = t.member_row(begin + i, j);
        for (int a = 0; a < c; ++a) m[a] += row[a];
      }
      double* lm = log_mean.data() + static_cast<std::size_t>(i) * c;
      for (int a = 0; a < c; ++a) {
        m[a] *= inv_k;
        lm[a] = log_floored(m[a]);
      }
    }
  }

  const double* logs(int offset) const {
    return log_mean.data() + static_cast<std::size_t>(offset) * c;
  }
};

// Shared kernel so the per-pair, tile, and full-matrix paths agree bitwise.
double mi_pair(const double* pi_block, const double* pj_block, const double* log_mi,
               const double* log_mj, int k, int c, double* joint_buf) {
  const std::size_t cc = static_cast<std::size_t>(c) * c;
  std::memset(joint_buf, 0, cc * sizeof(double));
  for (int t = 0; t < k; ++t) {
    const double* pi = pi_block + static_cast<std::size_t>(t) * c;
    const double* pj = pj_block + static_cast<std::size_t>(t) * c;
    for (int a = 0; a < c; ++a) {
      const double pa = pi[a];
      if (pa == 0.0) continue;
      double* row = joint_buf + static_cast<std::size_t>(a) * c;
      for (int b = 0; b < c; ++b) row[b] += pa * pj[b];
    }
  }
  const double inv_k = 1.0 / k;
  double info = 0.0;
  for (int a = 0; a < c; ++a) {
    const double* row = joint_buf + static_cast<std::size_t>(a) * c;
    for (int b = 0; b < c; ++b) {
      const double j = row[b] * inv_k;
      if (j > 0.0) info += j * (log_floored(j) - log_mi[a] - log_mj[b]);
    }
  }
  return info;
}

}  // namespace

double pairwise_mi(const PosteriorTensor& tensor, int i, int j) {
  check_index(tensor, i);
  check_index(tensor, j);
  if (i == j) {
    throw SelfPairError("pairwise MI is undefined for i == j (i = " + std::to_string(i) +
                        ")");
  }
  const int c = tensor.classes();
  MeanCache mi_cache(tensor, i, i + 1);
  MeanCache mj_cache(tensor, j, j + 1);
  std::vector<double> joint(static_cast<std::size_t>(c) * c);
  return mi_pair(tensor.point_block(i).data(), tensor.point_block(j).data(),
                 mi_cache.logs(0), mj_cache.logs(0), tensor.members(), c, joint.data());
}

MiTile pairwise_mi_block(const PosteriorTensor& tensor, int row_begin, int row_end,
                         int col_begin, int col_end) {
  if (row_begin < 0 || col_begin < 0 || row_end > tensor.pool_size() ||
      col_end > tensor.pool_size() || row_begin >= row_end || col_begin >= col_end) {
    throw IndexOutOfRangeError("invalid tile ranges");
  }
  const int c = tensor.classes();
  const int k = tensor.members();
  MiTile tile{row_begin, row_end, col_begin, col_end, {}};
  const int rows = row_end - row_begin;
  const int cols = col_end - col_begin;
  tile.values.assign(static_cast<std::size_t>(rows) * cols, 0.0);

  MeanCache row_cache(tensor, row_begin, row_end);
  MeanCache col_cache(tensor, col_begin, col_end);

  parallel_chunks(static_cast<std::size_t>(rows), 16, [&](std::size_t r0, std::size_t r1) {
    std::vector<double> joint(static_cast<std::size_t>(c) * c);
    for (std::size_t r = r0; r < r1; ++r) {
      const int i = row_begin + static_cast<int>(r);
      double* out = tile.values.data() + r * cols;
      for (int q = 0; q < cols; ++q) {
        const int j = col_begin + q;
        if (i == j) {
          out[q] = 0.0;  // diagonal convention
          continue;
        }
        out[q] = mi_pair(tensor.point_block(i).data(), tensor.point_block(j).data(),
                         row_cache.logs(static_cast<int>(r)), col_cache.logs(q), k, c,
                         joint.data());
      }
    }
  });
  return tile;
}

std::vector<double> pairwise_mi_matrix(const PosteriorTensor& tensor) {
  const int n = tensor.pool_size();
  if (n > kFullMatrixPoolCap) {
    throw Error("pool size " + std::to_string(n) + " exceeds full-matrix cap " +
                std::to_string(kFullMatrixPoolCap));
  }
  const int c = tensor.classes();
  const int k = tensor.members();
  MeanCache cache(tensor, 0, n);
  std::vector<double> matrix(static_cast<std::size_t>(n) * n, 0.0);
  parallel_chunks(static_cast<std::size_t>(n), 8, [&](std::size_t i0, std::size_t i1) {
    std::vector<double> joint(static_cast<std::size_t>(c) * c);
    for (std::size_t i = i0; i < i1; ++i) {
      for (std::size_t j = i + 1; j < static_cast<std::size_t>(n); ++j) {
        const double v = mi_pair(tensor.point_block(static_cast<int>(i)).data(),
                                 tensor.point_block(static_cast<int>(j)).data(),
                                 cache.logs(static_cast<int>(i)),
                                 cache.logs(static_cast<int>(j)), k, c, joint.data());
        matrix[i * n + j] = v;
        matrix[j * n + i] = v;
      }
    }
  });
  return matrix;
}

double total_correlation_pairwise(const PosteriorTensor& tensor,
                                  std::span<const int> subset) {
  std::unordered_set<int> seen;
  for (int idx : subset) {
    check_index(tensor, idx);
    if (!seen.insert(idx).second) {
      throw DuplicateIndexError("duplicate pool index " + std::to_string(idx) +
                                " in subset");
    }
  }
  // Ordered double sum: every unordered pair appears twice.
  double total = 0.0;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      total += 2.0 * pairwise_mi(tensor, subset[a], subset[b]);
    }
  }
  return total;
}

std::vector<double> pairwise_mi_against(const PosteriorTensor& tensor, int point,
                                        std::span<const int> candidates) {
  check_index(tensor, point);
  const int c = tensor.classes();
  const int k = tensor.members();
  MeanCache point_cache(tensor, point, point + 1);
  std::vector<double> out(candidates.size(), 0.0);
  parallel_chunks(candidates.size(), 64, [&](std::size_t q0, std::size_t q1) {
    std::vector<double> joint(static_cast<std::size_t>(c) * c);
    for (std::size_t q = q0; q < q1; ++q) {
      const int cand = candidates[q];
      check_index(tensor, cand);
      if (cand == point) continue;
      MeanCache cand_cache(tensor, cand, cand + 1);
      out[q] = mi_pair(tensor.point_block(cand).data(), tensor.point_block(point).data(),
                       cand_cache.logs(0), point_cache.logs(0), k, c, joint.data());
    }
  });
  return out;
}

void write_matrix(const std::filesystem::path& path, int n, int m,
                  std::span<const double> values) {
  if (values.size() != static_cast<std::size_t>(n) * m) {
    throw Error("matrix payload size does not match n*m");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open matrix file for writing: " + path.string());
  char header[96];
  std::snprintf(header, sizeof(header), "{\"n\":%d,\"m\":%d,\"dtype\":\"f64\"}\n", n, m);
  out << header;
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
}

MatrixFile read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open matrix file: " + path.string());
  std::string header;
  if (!std::getline(in, header)) throw HeaderMismatchError("missing matrix header");
  nlohmann::json h = nlohmann::json::parse(header, nullptr, false);
  if (h.is_discarded() || !h.contains("n") || !h.contains("m") ||
      h.value("dtype", "") != "f64") {
    throw HeaderMismatchError("malformed matrix header: " + header);
  }
  MatrixFile file;
  file.n = h["n"].get<int>();
  file.m = h["m"].get<int>();
  const std::size_t count = static_cast<std::size_t>(file.n) * file.m;
  file.values.resize(count);
  in.read(reinterpret_cast<char*>(file.values.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != count * sizeof(double)) {
    throw HeaderMismatchError("matrix payload shorter than declared n*m");
  }
  return file;
}

}  // namespace albatch
