#include "limelight/lime.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "limelight/errors.hpp"
#include "limelight/rng.hpp"

namespace limelight {

Instance build_instance(std::string_view text, const Tokenizer& tokenizer) {
  Instance inst;
  inst.original_text = std::string(text);
  inst.tokens = tokenizer(text);
  if (inst.tokens.empty()) throw DataError("explain", "nothing to explain: text has no tokens");
  std::unordered_map<std::string, std::size_t> seen;
  inst.token_feature.reserve(inst.tokens.size());
  for (const auto& t : inst.tokens) {
    auto [it, inserted] = seen.emplace(t, inst.features.size());
    if (inserted) inst.features.push_back(t);
    inst.token_feature.push_back(it->second);
  }
  return inst;
}

std::string reconstruct_text(const Instance& instance, std::span<const std::uint8_t> mask) {
  if (mask.size() != instance.dimension()) {
    throw DataError("explain", "mask length " + std::to_string(mask.size()) +
                                   " does not match instance dimension " +
                                   std::to_string(instance.dimension()));
  }
  std::string out;
  for (std::size_t i = 0; i < instance.tokens.size(); ++i) {
    if (!mask[instance.token_feature[i]]) continue;
    if (!out.empty()) out.push_back(' ');
    out += instance.tokens[i];
  }
  return out;
}

double cosine_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw DataError("explain", "cosine distance on vectors of unequal length");
  std::size_t dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool x = a[i] != 0, y = b[i] != 0;
    na += x;
    nb += y;
    dot += x && y;
  }
  if (na == 0 || nb == 0) return 1.0;
  const double cos = static_cast<double>(dot) /
                     std::sqrt(static_cast<double>(na) * static_cast<double>(nb));
  return std::clamp(1.0 - cos, 0.0, 1.0);
}

double proximity_weight(double distance, double sigma) {
  return std::exp(-(distance * distance) / (sigma * sigma));
}

void KernelConfig::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw UsageError("explain", "kernel sigma must be > 0");
}

void SurrogateConfig::validate() const {
  if (num_samples < 2) throw UsageError("explain", "num_samples must be >= 2");
  if (top_k < 1) throw UsageError("explain", "top_k must be >= 1");
  if (!(ridge_lambda >= 0.0) || !std::isfinite(ridge_lambda)) {
    throw UsageError("explain", "ridge lambda must be >= 0");
  }
}

std::string_view to_string(FeatureSelection s) {
  return s == FeatureSelection::kHighestWeight ? "highest_weight" : "forward_selection";
}

std::string_view to_string(SamplingMode s) {
  switch (s) {
    case SamplingMode::kAuto: return "auto";
    case SamplingMode::kRandom: return "random";
    case SamplingMode::kExhaustive: return "exhaustive";
  }
  return "auto";
}

std::optional<FeatureSelection> parse_feature_selection(std::string_view s) {
  if (s == "highest_weight") return FeatureSelection::kHighestWeight;
  if (s == "forward_selection") return FeatureSelection::kForwardSelection;
  return std::nullopt;
}

std::optional<SamplingMode> parse_sampling_mode(std::string_view s) {
  if (s == "auto") return SamplingMode::kAuto;
  if (s == "random") return SamplingMode::kRandom;
  if (s == "exhaustive") return SamplingMode::kExhaustive;
  return std::nullopt;
}

bool uses_exhaustive(std::size_t d, const SurrogateConfig& config) {
  switch (config.sampling) {
    case SamplingMode::kExhaustive: return true;
    case SamplingMode::kRandom: return false;
    case SamplingMode::kAuto:
      return d < 63 && (std::uint64_t{1} << d) <= config.num_samples;
  }
  return false;
}

std::vector<Mask> sample_masks(std::size_t d, const SurrogateConfig& config) {
  config.validate();
  std::vector<Mask> masks;
  if (uses_exhaustive(d, config)) {
    if (d > kMaxExhaustiveFeatures) {
      throw UsageError("explain", "exhaustive sampling needs at most " +
                                      std::to_string(kMaxExhaustiveFeatures) + " features, got " +
                                      std::to_string(d));
    }
    const std::uint64_t total = std::uint64_t{1} << d;
    masks.reserve(total);
    for (std::uint64_t m = total; m-- > 0;) {
      Mask mask(d);
      for (std::size_t j = 0; j < d; ++j) mask[j] = static_cast<std::uint8_t>((m >> j) & 1U);
      masks.push_back(std::move(mask));
    }
    return masks;
  }
  Rng rng(config.seed);
  masks.reserve(config.num_samples);
  masks.emplace_back(d, std::uint8_t{1});
  std::vector<std::size_t> positions(d);
  for (std::size_t s = 1; s < config.num_samples; ++s) {
    const auto remove = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(d)));
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    Mask mask(d, std::uint8_t{1});
    // Partial Fisher-Yates: the first `remove` slots are a uniform subset.
    for (std::size_t i = 0; i < remove; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(d - i));
      std::swap(positions[i], positions[j]);
      mask[positions[i]] = 0;
    }
    masks.push_back(std::move(mask));
  }
  return masks;
}

std::vector<Perturbation> sample_perturbations(const Instance& instance, const KernelConfig& kernel,
                                               const SurrogateConfig& config) {
  kernel.validate();
  const Mask original(instance.dimension(), std::uint8_t{1});
  std::vector<Perturbation> out;
  for (auto& mask : sample_masks(instance.dimension(), config)) {
    Perturbation p;
    p.text = reconstruct_text(instance, mask);
    p.distance = cosine_distance(original, mask);
    p.weight = proximity_weight(p.distance, kernel.sigma);
    p.mask = std::move(mask);
    out.push_back(std::move(p));
  }
  return out;
}

Neighborhood sample_neighborhood(const ClassifierHandle& handle, Instance instance,
                                 const KernelConfig& kernel, const SurrogateConfig& config) {
  const auto perturbations = sample_perturbations(instance, kernel, config);
  const std::size_t n = perturbations.size();
  const std::size_t d = instance.dimension();

  std::vector<std::string> texts;
  texts.reserve(n + 1);
  texts.push_back(instance.original_text);
  for (const auto& p : perturbations) texts.push_back(p.text);
  const ProbabilityMatrix scores = handle.predict_proba_batch(texts);

  Neighborhood hood;
  hood.masks = DesignMatrix(n, d);
  hood.distances.reserve(n);
  hood.weights.reserve(n);
  hood.targets = ProbabilityMatrix(n, scores.cols);
  const auto first = scores.row(0);
  hood.original.assign(first.begin(), first.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) hood.masks(i, j) = perturbations[i].mask[j];
    hood.distances.push_back(perturbations[i].distance);
    hood.weights.push_back(perturbations[i].weight);
    const auto row = scores.row(i + 1);
    std::copy(row.begin(), row.end(), hood.targets.row(i).begin());
  }
  hood.instance = std::move(instance);
  return hood;
}

namespace {

std::vector<std::size_t> iota_columns(std::size_t n) {
  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  return cols;
}

std::vector<std::size_t> forward_select(const DesignMatrix& z, std::span<const double> y,
                                        std::span<const double> w, std::size_t top_k,
                                        double lambda) {
  std::vector<std::size_t> selected;
  std::vector<bool> used(z.cols, false);
  for (std::size_t round = 0; round < top_k; ++round) {
    std::optional<std::size_t> best;
    double best_residual = 0.0;
    for (std::size_t c = 0; c < z.cols; ++c) {
      if (used[c]) continue;
      std::vector<std::size_t> trial = selected;
      trial.insert(std::upper_bound(trial.begin(), trial.end(), c), c);
      RidgeSolution fit;
      try {
        fit = fit_weighted_ridge(z, y, w, lambda, trial);
      } catch (const RankDeficientError&) {
        continue;
      }
      const double r = weighted_residual(y, predict_ridge(z, fit, trial), w);
      if (!best || r < best_residual) {
        best = c;
        best_residual = r;
      }
    }
    if (!best) {
      throw RankDeficientError("surrogate",
                               "forward selection found no identifiable feature to add; use a "
                               "ridge lambda > 0");
    }
    used[*best] = true;
    selected.insert(std::upper_bound(selected.begin(), selected.end(), *best), *best);
  }
  return selected;
}

}  // namespace

std::vector<std::size_t> select_features(const DesignMatrix& z, std::span<const double> y,
                                         std::span<const double> w, std::size_t top_k,
                                         FeatureSelection method, double lambda) {
  if (top_k < 1) throw UsageError("explain", "top_k must be >= 1");
  if (top_k >= z.cols) return iota_columns(z.cols);
  if (method == FeatureSelection::kForwardSelection) return forward_select(z, y, w, top_k, lambda);

  const RidgeSolution full = fit_weighted_ridge(z, y, w, lambda);
  std::vector<std::size_t> order = iota_columns(z.cols);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(full.coefficients[a]) > std::abs(full.coefficients[b]);
  });
  order.resize(top_k);
  std::sort(order.begin(), order.end());
  return order;
}

SurrogateFit fit_class(const std::shared_ptr<const Neighborhood>& neighborhood,
                       std::size_t class_index, const std::vector<std::string>& class_names,
                       const SurrogateConfig& config) {
  const Neighborhood& hood = *neighborhood;
  if (class_index >= hood.targets.cols) {
    throw UsageError("explain", "class index " + std::to_string(class_index) + " out of range");
  }
  std::vector<double> y(hood.targets.rows);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = hood.targets(i, class_index);

  const auto columns = select_features(hood.masks, y, hood.weights, config.top_k, config.selection,
                                       config.ridge_lambda);
  const RidgeSolution fit = fit_weighted_ridge(hood.masks, y, hood.weights, config.ridge_lambda, columns);
  const auto yhat = predict_ridge(hood.masks, fit, columns);

  SurrogateFit out;
  out.class_index = class_index;
  out.class_name = class_index < class_names.size() ? class_names[class_index]
                                                    : std::to_string(class_index);
  out.intercept = fit.intercept;
  out.local_score = weighted_r2(y, yhat, hood.weights);
  out.neighborhood = neighborhood;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    out.features.push_back(
        FeatureWeight{columns[j], hood.instance.features[columns[j]], fit.coefficients[j]});
  }
  std::stable_sort(out.features.begin(), out.features.end(),
                   [](const FeatureWeight& a, const FeatureWeight& b) {
                     return std::abs(a.weight) > std::abs(b.weight);
                   });
  return out;
}

Explanation explain_all_classes(const ClassifierHandle& handle, std::string_view text,
                                const Tokenizer& tokenizer, const KernelConfig& kernel,
                                const SurrogateConfig& config,
                                std::span<const std::size_t> classes) {
  config.validate();
  kernel.validate();
  std::vector<std::size_t> targets(classes.begin(), classes.end());
  if (targets.empty()) targets = iota_columns(handle.num_classes());
  for (std::size_t c : targets) {
    if (c >= handle.num_classes()) {
      throw UsageError("explain", "class index " + std::to_string(c) + " out of range");
    }
  }
  auto hood = std::make_shared<const Neighborhood>(
      sample_neighborhood(handle, build_instance(text, tokenizer), kernel, config));

  Explanation e;
  e.text = std::string(text);
  e.tokens = hood->instance.tokens;
  e.class_names = handle.class_names();
  e.prediction = hood->original;
  e.kernel = kernel;
  e.surrogate = config;
  e.neighborhood = hood;
  for (std::size_t c : targets) e.fits.push_back(fit_class(hood, c, e.class_names, config));
  return e;
}

SurrogateFit explain(const ClassifierHandle& handle, std::string_view text,
                     std::size_t class_index, const Tokenizer& tokenizer,
                     const KernelConfig& kernel, const SurrogateConfig& config) {
  const std::size_t classes[] = {class_index};
  return std::move(explain_all_classes(handle, text, tokenizer, kernel, config, classes).fits.front());
}

std::vector<Explanation> explain_batch(const ClassifierHandle& handle,
                                       std::span<const BatchItem> items, const Tokenizer& tokenizer,
                                       const KernelConfig& kernel, const SurrogateConfig& config,
                                       std::span<const std::size_t> classes, std::size_t jobs) {
  std::vector<Explanation> results(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      try {
        SurrogateConfig cfg = config;
        cfg.seed = derive_seed(config.seed, static_cast<std::uint64_t>(items[i].id));
        results[i] = explain_all_classes(handle, items[i].text, tokenizer, kernel, cfg, classes);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(items.size(), 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return results;
}

}  // namespace limelight
