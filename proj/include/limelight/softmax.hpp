#pragma once

// Multinomial logistic regression trained by mini-batch gradient descent on
// mean cross-entropy plus (l2 / 2) * ||W||_F^2. The bias is not penalized.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "limelight/tfidf.hpp"

namespace limelight {

struct SoftmaxModel {
  std::size_t num_classes = 0;
  std::size_t num_features = 0;
  std::vector<double> weights;  // num_classes x num_features, row-major
  std::vector<double> bias;     // num_classes

  SoftmaxModel() = default;
  SoftmaxModel(std::size_t classes, std::size_t features)
      : num_classes(classes),
        num_features(features),
        weights(classes * features, 0.0),
        bias(classes, 0.0) {}

  std::span<double> row(std::size_t c) {
    return std::span(weights).subspan(c * num_features, num_features);
  }
  std::span<const double> row(std::size_t c) const {
    return std::span(weights).subspan(c * num_features, num_features);
  }

  bool operator==(const SoftmaxModel&) const = default;
};

struct TrainConfig {
  int epochs = 4;
  double learning_rate = 0.1;
  double l2 = 1e-4;
  std::size_t batch_size = 64;
  std::uint64_t seed = 42;

  // Throws UsageError when a field is out of range.
  void validate() const;
};

// Numerically stable softmax, in place.
void softmax_inplace(std::span<double> logits);

// Throws DataError when a feature index is outside the model.
std::vector<double> predict_proba(const SoftmaxModel& model, const SparseVector& features);
// Throws DataError when the dimension differs from the model's.
std::vector<double> predict_proba(const SoftmaxModel& model, std::span<const double> features);

struct LossGradient {
  double loss = 0.0;
  std::vector<double> weights;  // same layout as SoftmaxModel::weights
  std::vector<double> bias;
};

// Mean cross-entropy over the examples plus the L2 term, with its exact
// gradient.
LossGradient loss_and_gradient(const SoftmaxModel& model, std::span<const SparseVector> features,
                               std::span<const std::size_t> labels, double l2);

double training_loss(const SoftmaxModel& model, std::span<const SparseVector> features,
                     std::span<const std::size_t> labels, double l2);

struct TrainResult {
  SoftmaxModel model;
  // Full training-set objective after each epoch.
  std::vector<double> epoch_losses;
};

// Called after every epoch with the 1-based epoch number.
using EpochCallback = std::function<void(int epoch, const SoftmaxModel&)>;

// Deterministic given the config. Requires aligned features/labels and at
// least one example of every class. Aborts with DataError if the loss stops
// being finite.
TrainResult train_softmax(std::span<const SparseVector> features,
                          std::span<const std::size_t> labels, std::size_t num_features,
                          std::size_t num_classes, const TrainConfig& config,
                          const EpochCallback& on_epoch = {});

}  // namespace limelight
