#include "limelight/softmax.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "limelight/errors.hpp"
#include "limelight/kernels.hpp"
#include "limelight/rng.hpp"

namespace limelight {

void TrainConfig::validate() const {
  if (epochs < 1) throw UsageError("train", "epochs must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw UsageError("train", "learning rate must be > 0");
  }
  if (!(l2 >= 0.0) || !std::isfinite(l2)) throw UsageError("train", "L2 strength must be >= 0");
  if (batch_size < 1) throw UsageError("train", "batch size must be >= 1");
}

void softmax_inplace(std::span<double> logits) {
  if (logits.empty()) return;
  const double top = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (double& v : logits) {
    v = std::exp(v - top);
    total += v;
  }
  for (double& v : logits) v /= total;
}

namespace {

void sparse_logits(const SoftmaxModel& model, const SparseVector& x, std::span<double> out) {
  for (std::size_t c = 0; c < model.num_classes; ++c) {
    const auto w = model.row(c);
    double acc = model.bias[c];
    for (std::size_t k = 0; k < x.nnz(); ++k) acc += w[x.indices[k]] * x.values[k];
    out[c] = acc;
  }
}

void check_indices(const SoftmaxModel& model, const SparseVector& x) {
  for (std::uint32_t idx : x.indices) {
    if (idx >= model.num_features) {
      throw DataError("predict", "feature index " + std::to_string(idx) +
                                     " outside model dimension " +
                                     std::to_string(model.num_features));
    }
  }
}

}  // namespace

std::vector<double> predict_proba(const SoftmaxModel& model, const SparseVector& features) {
  check_indices(model, features);
  std::vector<double> p(model.num_classes);
  sparse_logits(model, features, p);
  softmax_inplace(p);
  return p;
}

std::vector<double> predict_proba(const SoftmaxModel& model, std::span<const double> features) {
  if (features.size() != model.num_features) {
    throw DataError("predict", "feature dimension " + std::to_string(features.size()) +
                                   " does not match model dimension " +
                                   std::to_string(model.num_features));
  }
  std::vector<double> p(model.num_classes);
  for (std::size_t c = 0; c < model.num_classes; ++c) {
    p[c] = model.bias[c] + kernels::dot(model.row(c), features);
  }
  softmax_inplace(p);
  return p;
}

LossGradient loss_and_gradient(const SoftmaxModel& model, std::span<const SparseVector> features,
                               std::span<const std::size_t> labels, double l2) {
  const std::size_t n = features.size();
  LossGradient out;
  out.weights.assign(model.weights.size(), 0.0);
  out.bias.assign(model.num_classes, 0.0);
  std::vector<double> p(model.num_classes);
  double ce = 0.0;
  const double inv_n = n > 0 ? 1.0 / static_cast<double>(n) : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    check_indices(model, features[i]);
    sparse_logits(model, features[i], p);
    softmax_inplace(p);
    ce -= std::log(p[labels[i]]);
    for (std::size_t c = 0; c < model.num_classes; ++c) {
      const double delta = (p[c] - (c == labels[i] ? 1.0 : 0.0)) * inv_n;
      out.bias[c] += delta;
      double* g = out.weights.data() + c * model.num_features;
      for (std::size_t k = 0; k < features[i].nnz(); ++k) {
        g[features[i].indices[k]] += delta * features[i].values[k];
      }
    }
  }
  kernels::axpy(l2, model.weights, out.weights);
  out.loss = ce * inv_n + 0.5 * l2 * kernels::dot(model.weights, model.weights);
  return out;
}

double training_loss(const SoftmaxModel& model, std::span<const SparseVector> features,
                     std::span<const std::size_t> labels, double l2) {
  std::vector<double> p(model.num_classes);
  double ce = 0.0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    sparse_logits(model, features[i], p);
    softmax_inplace(p);
    ce -= std::log(p[labels[i]]);
  }
  const double n = static_cast<double>(std::max<std::size_t>(features.size(), 1));
  return ce / n + 0.5 * l2 * kernels::dot(model.weights, model.weights);
}

TrainResult train_softmax(std::span<const SparseVector> features,
                          std::span<const std::size_t> labels, std::size_t num_features,
                          std::size_t num_classes, const TrainConfig& config,
                          const EpochCallback& on_epoch) {
  config.validate();
  if (features.size() != labels.size()) {
    throw DataError("train", "feature rows and labels differ in length");
  }
  if (features.empty()) throw DataError("train", "empty training set");
  std::vector<std::size_t> per_class(num_classes, 0);
  for (std::size_t y : labels) {
    if (y >= num_classes) throw DataError("train", "label index out of range");
    ++per_class[y];
  }
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (per_class[c] == 0) {
      throw DataError("train", "class " + std::to_string(c) + " has no training examples");
    }
  }
  for (const auto& x : features) {
    for (std::uint32_t idx : x.indices) {
      if (idx >= num_features) throw DataError("train", "feature index out of range");
    }
  }

  TrainResult result{SoftmaxModel(num_classes, num_features), {}};
  SoftmaxModel& model = result.model;
  Rng rng(config.seed);
  std::vector<std::size_t> order(features.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> probs(num_classes * config.batch_size);
  std::vector<double> bias_grad(num_classes);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.shuffle(std::span(order));
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      const std::size_t m = end - start;
      // Probabilities for the whole batch come from the pre-update weights.
      for (std::size_t b = 0; b < m; ++b) {
        const auto p = std::span(probs).subspan(b * num_classes, num_classes);
        sparse_logits(model, features[order[start + b]], p);
        softmax_inplace(p);
      }
      const double step = config.learning_rate / static_cast<double>(m);
      if (config.l2 > 0.0) kernels::scale(1.0 - config.learning_rate * config.l2, model.weights);
      std::fill(bias_grad.begin(), bias_grad.end(), 0.0);
      for (std::size_t b = 0; b < m; ++b) {
        const std::size_t i = order[start + b];
        const SparseVector& x = features[i];
        for (std::size_t c = 0; c < num_classes; ++c) {
          const double delta = probs[b * num_classes + c] - (c == labels[i] ? 1.0 : 0.0);
          bias_grad[c] += delta;
          const auto w = model.row(c);
          for (std::size_t k = 0; k < x.nnz(); ++k) w[x.indices[k]] -= step * delta * x.values[k];
        }
      }
      for (std::size_t c = 0; c < num_classes; ++c) model.bias[c] -= step * bias_grad[c];
    }
    const double loss = training_loss(model, features, labels, config.l2);
    if (!std::isfinite(loss)) {
      throw DataError("train", "loss became non-finite (" + std::to_string(loss) +
                                   ") at epoch " + std::to_string(epoch) +
                                   "; lower the learning rate");
    }
    result.epoch_losses.push_back(loss);
    if (on_epoch) on_epoch(epoch, model);
  }
  return result;
}

}  // namespace limelight
