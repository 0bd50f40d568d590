#pragma once

// Error analysis over a labeled evaluation set: confusion counts with
// equal-probability ties, per-class percentage breakdowns, false
// positive/negative rates, and per-class word frequencies.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "limelight/blackbox.hpp"
#include "limelight/corpus.hpp"
#include "limelight/labels.hpp"

namespace limelight {

// Rows are truth, columns prediction. A document whose two largest
// probabilities tie is tallied in `ties` for its truth row instead of in
// `counts`.
struct ConfusionMatrix {
  std::array<std::array<std::size_t, kNumClasses>, kNumClasses> counts{};
  std::array<std::size_t, kNumClasses> ties{};

  std::size_t row_total(std::size_t truth) const;
  std::size_t tie_count() const;
  std::size_t correct() const;
  // Every evaluated document, ties included.
  std::size_t total() const;

  bool operator==(const ConfusionMatrix&) const = default;
};

// Whether the two largest entries of `row` tie. With epsilon == 0 the test
// is bitwise equality; otherwise |p1 - p2| <= epsilon.
bool is_tie(std::span<const double> row, double epsilon = 0.0);

// `probabilities` is either empty (no tie detection) or has one row per
// document. Throws DataError on empty or misaligned inputs.
ConfusionMatrix confusion(std::span<const std::size_t> truth,
                          std::span<const std::size_t> predictions,
                          const ProbabilityMatrix& probabilities, double tie_epsilon = 0.0);

// Predictions are the argmax of each probability row (lowest index on ties).
ConfusionMatrix confusion_from_probabilities(std::span<const std::size_t> truth,
                                             const ProbabilityMatrix& probabilities,
                                             double tie_epsilon = 0.0);

struct BreakdownRow {
  ClassLabel truth = ClassLabel::kNone;
  std::size_t documents = 0;
  // Share of the row predicted as each class, and its tie share, in percent.
  // All zero for a class with no documents.
  std::array<double, kNumClasses> percent{};
  double tie_percent = 0.0;
};

// All rates in percent of every evaluated document. Ties count as errors.
// overall_error = false_positive_rate + false_negative_rate whenever every
// class is either positive or the single negative class.
struct ErrorBreakdown {
  std::array<BreakdownRow, kNumClasses> rows{};
  std::size_t documents = 0;
  double overall_error = 0.0;
  // Negative-truth documents predicted as a positive class, or tied.
  double false_positive_rate = 0.0;
  // Positive-truth documents not predicted as their own class.
  double false_negative_rate = 0.0;
  double tie_rate = 0.0;
};

inline constexpr std::array<ClassLabel, 2> kDefaultPositiveClasses = {ClassLabel::kHate,
                                                                      ClassLabel::kOffensive};

ErrorBreakdown error_breakdown(const ConfusionMatrix& matrix,
                               std::span<const ClassLabel> positive_classes =
                                   kDefaultPositiveClasses);

struct FrequencyTable {
  ClassLabel label = ClassLabel::kNone;
  // Counts non-increasing; equal counts in lexicographic token order.
  std::vector<std::pair<std::string, std::size_t>> entries;
};

// Token occurrence counts over the documents labeled `label`, top k.
FrequencyTable top_frequent_words(const std::vector<LabeledDocument>& docs, ClassLabel label,
                                  std::size_t k = 60,
                                  std::vector<std::string>* warnings = nullptr);

// "rank,token,count" with a header line.
std::string render_frequency_csv(const FrequencyTable& table);
// Horizontal bar chart, one bar per entry, bar length proportional to count.
std::string render_frequency_svg(const FrequencyTable& table);

std::string render_confusion_text(const ConfusionMatrix& matrix);
std::string render_breakdown_text(const ErrorBreakdown& breakdown);
std::string render_analysis_json(const ConfusionMatrix& matrix, const ErrorBreakdown& breakdown);

}  // namespace limelight
