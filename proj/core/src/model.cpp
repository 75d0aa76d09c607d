#include "albatch/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "albatch/rng.hpp"

namespace albatch {

namespace {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;
using ConstMatMap = Eigen::Map<const Mat>;

Mat glorot(int out_dim, int in_dim, Rng& rng) {
  const double limit = std::sqrt(6.0 / (in_dim + out_dim));
  Mat w(out_dim, in_dim);
  for (int r = 0; r < out_dim; ++r) {
    for (int c = 0; c < in_dim; ++c) w(r, c) = limit * (2.0 * rng.uniform() - 1.0);
  }
  return w;
}

void softmax_rows(Mat& logits) {
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    auto row = logits.row(r);
    const double m = row.maxCoeff();
    row = (row.array() - m).exp();
    row /= row.sum();
  }
}

struct Workspace {
  Mat w1, w2;
  Vec b1, b2;
};

// One full-batch gradient-descent fit. The dropout mask (mc_dropout only)
// is resampled every epoch with inverted scaling.
Workspace fit(const ConstMatMap& x, const std::vector<int>& labels, int num_classes,
              const ModelSpec& spec, std::uint64_t member_seed, bool use_dropout) {
  const int n = static_cast<int>(x.rows());
  const int d = static_cast<int>(x.cols());
  const int h = spec.hidden_width;

  Rng init_rng(Rng::mix(member_seed, 0));
  Rng mask_rng(Rng::mix(member_seed, 1));
  Workspace ws;
  ws.w1 = glorot(h, d, init_rng);
  ws.w2 = glorot(num_classes, h, init_rng);
  ws.b1 = Vec::Zero(h);
  ws.b2 = Vec::Zero(num_classes);

  Mat one_hot = Mat::Zero(n, num_classes);
  for (int i = 0; i < n; ++i) one_hot(i, labels[i]) = 1.0;

  const double keep = 1.0 - spec.dropout_rate;
  Mat mask;
  for (int epoch = 0; epoch < spec.epochs; ++epoch) {
    Mat z1 = x * ws.w1.transpose();
    z1.rowwise() += ws.b1.transpose();
    Mat a1 = z1.cwiseMax(0.0);
    if (use_dropout) {
      mask.resize(n, h);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < h; ++j) {
          mask(i, j) = mask_rng.uniform() < keep ? 1.0 / keep : 0.0;
        }
      }
      a1 = a1.cwiseProduct(mask);
    }
    Mat probs = a1 * ws.w2.transpose();
    probs.rowwise() += ws.b2.transpose();
    softmax_rows(probs);

    Mat dz2 = (probs - one_hot) / n;
    Mat dw2 = dz2.transpose() * a1;
    Vec db2 = dz2.colwise().sum();
    Mat da1 = dz2 * ws.w2;
    if (use_dropout) da1 = da1.cwiseProduct(mask);
    Mat dz1 = da1.cwiseProduct((z1.array() > 0.0).cast<double>().matrix());
    Mat dw1 = dz1.transpose() * x;
    Vec db1 = dz1.colwise().sum();

    ws.w1 -= spec.learning_rate * dw1;
    ws.b1 -= spec.learning_rate * db1;
    ws.w2 -= spec.learning_rate * dw2;
    ws.b2 -= spec.learning_rate * db2;
  }
  return ws;
}

MlpParams to_params(const Workspace& ws) {
  MlpParams p;
  p.w1.assign(ws.w1.data(), ws.w1.data() + ws.w1.size());
  p.b1.assign(ws.b1.data(), ws.b1.data() + ws.b1.size());
  p.w2.assign(ws.w2.data(), ws.w2.data() + ws.w2.size());
  p.b2.assign(ws.b2.data(), ws.b2.data() + ws.b2.size());
  return p;
}

// Forward pass to softmax probabilities; `mask_rng` non-null applies a fresh
// dropout mask to the hidden activations.
Mat forward(const MlpParams& params, const ConstMatMap& x, int hidden, int num_classes,
            double dropout_rate, Rng* mask_rng) {
  const int n = static_cast<int>(x.rows());
  const int d = static_cast<int>(x.cols());
  ConstMatMap w1(params.w1.data(), hidden, d);
  ConstMatMap w2(params.w2.data(), num_classes, hidden);
  Eigen::Map<const Vec> b1(params.b1.data(), hidden);
  Eigen::Map<const Vec> b2(params.b2.data(), num_classes);

  Mat a1 = x * w1.transpose();
  a1.rowwise() += b1.transpose();
  a1 = a1.cwiseMax(0.0);
  if (mask_rng != nullptr) {
    const double keep = 1.0 - dropout_rate;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < hidden; ++j) {
        const double m = mask_rng->uniform() < keep ? 1.0 / keep : 0.0;
        a1(i, j) *= m;
      }
    }
  }
  Mat logits = a1 * w2.transpose();
  logits.rowwise() += b2.transpose();
  softmax_rows(logits);
  return logits;
}

}  // namespace

TrainResult train_model(const Dataset& data, std::span<const int> labeled,
                        const ModelSpec& spec) {
  if (labeled.empty()) throw InvalidSpecError("no labeled points to train on");
  if (spec.kind == ModelKind::mc_dropout &&
      (spec.dropout_rate <= 0.0 || spec.dropout_rate >= 1.0)) {
    throw InvalidSpecError("dropout_rate must be in (0,1)");
  }
  const int n = static_cast<int>(labeled.size());
  const int d = data.dim;
  const int c = data.num_classes;

  Mat x(n, d);
  std::vector<int> labels(n);
  std::vector<int> class_counts(c, 0);
  for (int i = 0; i < n; ++i) {
    auto row = data.point(labeled[i]);
    std::copy(row.begin(), row.end(), x.row(i).data());
    labels[i] = data.labels[labeled[i]];
    ++class_counts[labels[i]];
  }

  TrainResult result{TrainedModel(spec, d, c, {}), {}};
  for (int cls = 0; cls < c; ++cls) {
    if (class_counts[cls] == 0) {
      result.warnings.push_back("class " + std::to_string(cls) +
                                " missing from the labeled set");
    }
  }

  ConstMatMap xmap(x.data(), n, d);
  std::vector<MlpParams> members;
  const bool dropout = spec.kind == ModelKind::mc_dropout;
  const int fits = dropout ? 1 : spec.members;
  for (int j = 0; j < fits; ++j) {
    members.push_back(to_params(fit(xmap, labels, c, spec,
                                    Rng::mix(spec.seed, 100 + j), dropout)));
  }
  result.model = TrainedModel(spec, d, c, std::move(members));
  return result;
}

PosteriorTensor TrainedModel::posterior_predict(std::span<const double> features,
                                                int count) const {
  const int d = input_dim_;
  const int c = num_classes_;
  const int k = spec_.members;
  ConstMatMap x(features.data(), count, d);

  std::vector<double> probs(static_cast<std::size_t>(count) * k * c);
  auto store = [&](const Mat& member_probs, int j) {
    for (int i = 0; i < count; ++i) {
      double* out = probs.data() + (static_cast<std::size_t>(i) * k + j) * c;
      for (int a = 0; a < c; ++a) out[a] = member_probs(i, a);
    }
  };

  if (spec_.kind == ModelKind::ensemble) {
    for (int j = 0; j < k; ++j) {
      store(forward(members_[j], x, spec_.hidden_width, c, 0.0, nullptr), j);
    }
  } else {
    for (int j = 0; j < k; ++j) {
      Rng mask_rng(Rng::mix(spec_.seed, 1000 + static_cast<std::uint64_t>(j)));
      store(forward(members_[0], x, spec_.hidden_width, c, spec_.dropout_rate, &mask_rng),
            j);
    }
  }
  return PosteriorTensor(count, k, c, std::move(probs));
}

PosteriorTensor TrainedModel::posterior_predict(const Dataset& data,
                                                std::span<const int> indices) const {
  std::vector<double> features(indices.size() * static_cast<std::size_t>(data.dim));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    auto row = data.point(indices[i]);
    std::copy(row.begin(), row.end(),
              features.begin() + static_cast<std::ptrdiff_t>(i * data.dim));
  }
  return posterior_predict(features, static_cast<int>(indices.size()));
}

double TrainedModel::accuracy(const Dataset& data, std::span<const int> indices) const {
  if (indices.empty()) return 0.0;
  PosteriorTensor tensor = posterior_predict(data, indices);
  MeanMatrix mean = predictive_mean(tensor);
  int correct = 0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    auto row = mean.row(static_cast<int>(i));
    const int pred =
        static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
    if (pred == data.labels[indices[i]]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(indices.size());
}

}  // namespace albatch
