#include "albatch/tensor.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace albatch {

namespace {

void fail_io(const std::filesystem::path& path, const char* what) {
  throw IoError(std::string(what) + ": " + path.string());
}

}  // namespace

PosteriorTensor::PosteriorTensor(int n, int k, int c, std::vector<double> probs)
    : n_(n), k_(k), c_(c), probs_(std::move(probs)) {
  if (n_ < 1 || k_ < 1 || c_ < 2) {
    throw HeaderMismatchError("tensor shape requires n >= 1, k >= 1, c >= 2, got n=" +
                              std::to_string(n_) + " k=" + std::to_string(k_) +
                              " c=" + std::to_string(c_));
  }
  const std::size_t expected =
      static_cast<std::size_t>(n_) * static_cast<std::size_t>(k_) * static_cast<std::size_t>(c_);
  if (probs_.size() != expected) {
    throw HeaderMismatchError("declared n*k*c = " + std::to_string(expected) +
                              " but payload holds " + std::to_string(probs_.size()) +
                              " values");
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < k_; ++j) {
      const double* row = probs_.data() + (static_cast<std::size_t>(i) * k_ + j) * c_;
      double sum = 0.0;
      for (int a = 0; a < c_; ++a) {
        if (row[a] < 0.0) {
          throw NegativeProbabilityError(
              i, j, a,
              "negative probability at (" + std::to_string(i) + "," + std::to_string(j) +
                  "," + std::to_string(a) + "): " + std::to_string(row[a]));
        }
        sum += row[a];
      }
      if (sum < 1.0 - kRowSumTol || sum > 1.0 + kRowSumTol) {
        std::ostringstream msg;
        msg << "row (" << i << "," << j << ") sums to " << sum
            << ", outside 1 +/- " << kRowSumTol;
        throw RowSumViolationError(i, j, sum, msg.str());
      }
    }
  }
}

PosteriorTensor PosteriorTensor::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_io(path, "cannot open tensor file");
  return read(in);
}

PosteriorTensor PosteriorTensor::read(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    throw HeaderMismatchError("missing tensor header line");
  }
  nlohmann::json h = nlohmann::json::parse(header, nullptr, false);
  if (h.is_discarded() || !h.contains("n") || !h.contains("k") || !h.contains("c")) {
    throw HeaderMismatchError("malformed tensor header: " + header);
  }
  if (h.value("dtype", "") != "f64") {
    throw HeaderMismatchError("unsupported dtype in tensor header");
  }
  const int n = h["n"].get<int>();
  const int k = h["k"].get<int>();
  const int c = h["c"].get<int>();
  if (n < 1 || k < 1 || c < 1) {
    throw HeaderMismatchError("non-positive dimension in tensor header");
  }
  const std::size_t count =
      static_cast<std::size_t>(n) * static_cast<std::size_t>(k) * static_cast<std::size_t>(c);
  std::vector<double> payload(count);
  in.read(reinterpret_cast<char*>(payload.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != count * sizeof(double)) {
    throw HeaderMismatchError("payload shorter than declared n*k*c = " +
                              std::to_string(count));
  }
  // Reject trailing bytes as well: the declared shape must match exactly.
  char extra;
  if (in.read(&extra, 1)) {
    throw HeaderMismatchError("payload longer than declared n*k*c = " +
                              std::to_string(count));
  }
  return PosteriorTensor(n, k, c, std::move(payload));
}

void PosteriorTensor::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail_io(path, "cannot open tensor file for writing");
  write(out);
  if (!out) fail_io(path, "short write on tensor file");
}

void PosteriorTensor::write(std::ostream& out) const {
  // Header keys are emitted in this fixed order so round-trips are bit-exact.
  char header[160];
  std::snprintf(header, sizeof(header),
                "{\"n\":%d,\"k\":%d,\"c\":%d,\"dtype\":\"f64\",\"order\":\"pool,member,class\"}\n",
                n_, k_, c_);
  out << header;
  out.write(reinterpret_cast<const char*>(probs_.data()),
            static_cast<std::streamsize>(probs_.size() * sizeof(double)));
}

MeanMatrix predictive_mean(const PosteriorTensor& tensor) {
  const int n = tensor.pool_size();
  const int k = tensor.members();
  const int c = tensor.classes();
  MeanMatrix mean;
  mean.n = n;
  mean.c = c;
  mean.values.assign(static_cast<std::size_t>(n) * c, 0.0);
  const double inv_k = 1.0 / k;
  for (int i = 0; i < n; ++i) {
    double* out = mean.values.data() + static_cast<std::size_t>(i) * c;
    for (int j = 0; j < k; ++j) {
      auto row = tensor.member_row(i, j);
      for (int a = 0; a < c; ++a) out[a] += row[a];
    }
    for (int a = 0; a < c; ++a) out[a] *= inv_k;
  }
  return mean;
}

void MeanMatrix::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail_io(path, "cannot open csv for writing");
  out << "pool_index";
  for (int a = 0; a < c; ++a) out << ",class_" << a;
  out << "\n";
  char buf[40];
  for (int i = 0; i < n; ++i) {
    out << i;
    for (int a = 0; a < c; ++a) {
      std::snprintf(buf, sizeof(buf), ",%.12g", values[static_cast<std::size_t>(i) * c + a]);
      out << buf;
    }
    out << "\n";
  }
}

void ScoreVector::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail_io(path, "cannot open csv for writing");
  out << "pool_index,score\n";
  char buf[40];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.12g\n", i, values[i]);
    out << buf;
  }
}

}  // namespace albatch
