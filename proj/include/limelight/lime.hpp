#pragma once

// Local surrogate explanations for black-box text classifiers.
//
// An instance is represented by the presence/absence of each of its unique
// tokens. Perturbations drop tokens, the black box scores every perturbed
// text, samples are weighted by an exponential kernel on cosine distance to
// the original, and a weighted ridge model over the presence bits is fitted
// per class. Feature selection caps the surrogate at top_k tokens.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "limelight/blackbox.hpp"
#include "limelight/ridge.hpp"
#include "limelight/text.hpp"

namespace limelight {

using Tokenizer = std::function<Tokens(std::string_view)>;
using Mask = std::vector<std::uint8_t>;

struct Instance {
  std::string original_text;
  // Full token sequence, duplicates included.
  Tokens tokens;
  // Distinct tokens in first-occurrence order; the interpretable features.
  Tokens features;
  // For each entry of `tokens`, the index of its feature.
  std::vector<std::size_t> token_feature;

  std::size_t dimension() const { return features.size(); }
};

// Throws DataError("nothing to explain") when the tokenizer yields nothing.
Instance build_instance(std::string_view text, const Tokenizer& tokenizer);

// The token sequence with every occurrence of each masked-out feature
// removed, joined by single spaces.
std::string reconstruct_text(const Instance& instance, std::span<const std::uint8_t> mask);

// 1 - a.b / (|a| |b|) for binary vectors; 1 when either is all zeros.
double cosine_distance(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

// exp(-distance^2 / sigma^2)
double proximity_weight(double distance, double sigma);

struct KernelConfig {
  double sigma = 25.0;

  void validate() const;
};

enum class FeatureSelection { kHighestWeight, kForwardSelection };
// kAuto enumerates all 2^d masks when 2^d <= num_samples, else samples.
enum class SamplingMode { kAuto, kRandom, kExhaustive };

std::string_view to_string(FeatureSelection s);
std::string_view to_string(SamplingMode s);
std::optional<FeatureSelection> parse_feature_selection(std::string_view s);
std::optional<SamplingMode> parse_sampling_mode(std::string_view s);

struct SurrogateConfig {
  std::size_t num_samples = 1000;
  double ridge_lambda = 1.0;
  std::size_t top_k = 10;
  FeatureSelection selection = FeatureSelection::kHighestWeight;
  SamplingMode sampling = SamplingMode::kAuto;
  std::uint64_t seed = 42;

  void validate() const;
};

// Largest d for which exhaustive enumeration is accepted.
inline constexpr std::size_t kMaxExhaustiveFeatures = 20;

// Whether `config` enumerates every mask for an instance of dimension d.
bool uses_exhaustive(std::size_t d, const SurrogateConfig& config);

// First mask is all ones. Random mode draws a removal count uniformly from
// [1, d] and removes that many distinct positions uniformly; exhaustive mode
// lists every mask once, counting down from all ones (bit j = feature j).
std::vector<Mask> sample_masks(std::size_t d, const SurrogateConfig& config);

struct Perturbation {
  Mask mask;
  std::string text;
  double distance = 0.0;
  double weight = 1.0;
};

std::vector<Perturbation> sample_perturbations(const Instance& instance, const KernelConfig& kernel,
                                               const SurrogateConfig& config);

// Everything the per-class fits share: the sample, its weights, and the
// black-box scores. Produced by one black-box pass.
struct Neighborhood {
  Instance instance;
  DesignMatrix masks;  // num_samples x d presence bits as 0.0 / 1.0
  std::vector<double> distances;
  std::vector<double> weights;
  ProbabilityMatrix targets;     // num_samples x num_classes
  std::vector<double> original;  // black-box row for the original text
};

Neighborhood sample_neighborhood(const ClassifierHandle& handle, Instance instance,
                                 const KernelConfig& kernel, const SurrogateConfig& config);

// Feature columns kept by the complexity cap. When top_k >= number of
// columns, all columns in order. Otherwise kHighestWeight keeps the top_k
// largest |coefficient| of a fit on every column and kForwardSelection adds,
// top_k times, the column whose inclusion minimizes the weighted residual.
// Returned in ascending column order.
std::vector<std::size_t> select_features(const DesignMatrix& z, std::span<const double> y,
                                         std::span<const double> w, std::size_t top_k,
                                         FeatureSelection method, double lambda);

struct FeatureWeight {
  std::size_t feature = 0;
  std::string token;
  double weight = 0.0;

  bool operator==(const FeatureWeight&) const = default;
};

struct SurrogateFit {
  std::size_t class_index = 0;
  std::string class_name;
  // Selected features ranked by |weight| descending, ties by feature index.
  std::vector<FeatureWeight> features;
  double intercept = 0.0;
  // Weighted R^2 of the surrogate on the neighborhood.
  double local_score = 0.0;
  std::shared_ptr<const Neighborhood> neighborhood;
};

SurrogateFit fit_class(const std::shared_ptr<const Neighborhood>& neighborhood,
                       std::size_t class_index, const std::vector<std::string>& class_names,
                       const SurrogateConfig& config);

struct Explanation {
  std::string text;
  Tokens tokens;
  std::vector<std::string> class_names;
  std::vector<double> prediction;
  std::vector<SurrogateFit> fits;
  KernelConfig kernel;
  SurrogateConfig surrogate;
  std::shared_ptr<const Neighborhood> neighborhood;
};

// One class.
SurrogateFit explain(const ClassifierHandle& handle, std::string_view text,
                     std::size_t class_index, const Tokenizer& tokenizer,
                     const KernelConfig& kernel, const SurrogateConfig& config);

// Every class listed in `classes` (all classes when empty), all fitted on
// the same neighborhood.
Explanation explain_all_classes(const ClassifierHandle& handle, std::string_view text,
                                const Tokenizer& tokenizer, const KernelConfig& kernel,
                                const SurrogateConfig& config,
                                std::span<const std::size_t> classes = {});

struct BatchItem {
  std::int64_t id = 0;
  std::string text;
};

// Explains each item with seed derive_seed(config.seed, item.id), using up
// to `jobs` threads. Results are in input order.
std::vector<Explanation> explain_batch(const ClassifierHandle& handle,
                                       std::span<const BatchItem> items, const Tokenizer& tokenizer,
                                       const KernelConfig& kernel, const SurrogateConfig& config,
                                       std::span<const std::size_t> classes, std::size_t jobs);

}  // namespace limelight
