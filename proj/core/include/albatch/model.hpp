// From-scratch Bayesian surrogates at desk scale: a deep ensemble of small
// single-hidden-layer softmax MLPs with distinct Glorot initializations, or
// one dropout MLP sampled with fresh masks at inference. Training is
// full-batch gradient descent with cross-entropy and is bit-deterministic
// per seed.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "albatch/dataset.hpp"
#include "albatch/tensor.hpp"

namespace albatch {

enum class ModelKind { ensemble, mc_dropout };

struct ModelSpec {
  ModelKind kind = ModelKind::ensemble;
  int members = 5;  // ensemble size, or forward passes for MC-dropout
  int hidden_width = 32;
  double dropout_rate = 0.25;  // mc_dropout only; must be in (0,1)
  int epochs = 200;
  double learning_rate = 0.2;
  std::uint64_t seed = 0;
};

struct MlpParams {
  std::vector<double> w1;  // hidden x dim
  std::vector<double> b1;  // hidden
  std::vector<double> w2;  // classes x hidden
  std::vector<double> b2;  // classes
};

class TrainedModel {
 public:
  TrainedModel(ModelSpec spec, int input_dim, int num_classes,
               std::vector<MlpParams> members)
      : spec_(spec), input_dim_(input_dim), num_classes_(num_classes),
        members_(std::move(members)) {}

  const ModelSpec& spec() const { return spec_; }
  const std::vector<MlpParams>& members() const { return members_; }

  // k member rows per input: softmax outputs per ensemble member, or k
  // stochastic dropout passes. Rows are valid distributions.
  PosteriorTensor posterior_predict(std::span<const double> features, int count) const;
  PosteriorTensor posterior_predict(const Dataset& data,
                                    std::span<const int> indices) const;

  // Fraction of indices whose predictive-mean argmax matches the label.
  double accuracy(const Dataset& data, std::span<const int> indices) const;

 private:
  ModelSpec spec_;
  int input_dim_;
  int num_classes_;
  std::vector<MlpParams> members_;
};

struct TrainResult {
  TrainedModel model;
  std::vector<std::string> warnings;  // e.g. a class missing from the labels
};

TrainResult train_model(const Dataset& data, std::span<const int> labeled,
                        const ModelSpec& spec);

}  // namespace albatch
