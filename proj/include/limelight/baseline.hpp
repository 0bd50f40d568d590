#pragma once

// The in-process baseline classifier (TF-IDF + softmax) and its evaluation
// report.

#include <filesystem>
#include <string>
#include <vector>

#include "limelight/corpus.hpp"
#include "limelight/softmax.hpp"
#include "limelight/tfidf.hpp"

namespace limelight {

inline constexpr int kModelFormatVersion = 1;

struct BaselineModel {
  std::vector<std::string> class_names;
  TfidfModel tfidf;
  SoftmaxModel softmax;

  std::vector<double> predict_proba_tokens(const Tokens& tokens) const {
    return predict_proba(softmax, tfidf.transform(tokens));
  }
  std::size_t predict_tokens(const Tokens& tokens) const;
};

// Versioned JSON: {format_version, classes, vocabulary, idf, W, b}.
void save_model(const BaselineModel& model, const std::filesystem::path& path);
BaselineModel load_model(const std::filesystem::path& path);
std::string model_to_json(const BaselineModel& model);
BaselineModel model_from_json(std::string_view text);

// Macro-averaged metrics for one evaluation snapshot.
struct EpochMetrics {
  int epoch = 0;
  double precision = 0.0;
  double recall = 0.0;
  double accuracy = 0.0;
  double f1 = 0.0;
};

struct ClassReport {
  std::vector<EpochMetrics> epochs;
  std::vector<std::string> warnings;
};

// Per-class precision, recall and F1 are 0 when undefined (no predictions,
// or no truth examples); classes absent from `truth` add a warning and still
// count towards the macro average.
EpochMetrics compute_metrics(std::span<const std::size_t> truth,
                             std::span<const std::size_t> predicted, std::size_t num_classes,
                             std::vector<std::string>* warnings = nullptr);

EpochMetrics evaluate(const BaselineModel& model, const std::vector<LabeledDocument>& docs,
                      std::vector<std::string>* warnings = nullptr);

struct TrainOutcome {
  BaselineModel model;
  std::vector<double> epoch_losses;
  // One row per epoch on the evaluation set; empty when none was given.
  ClassReport report;
};

// Fits TF-IDF on `train`, trains the softmax, and evaluates on `eval` after
// every epoch when `eval` is non-empty.
TrainOutcome train_baseline(const std::vector<LabeledDocument>& train,
                            const std::vector<LabeledDocument>& eval, const TrainConfig& config);

// Tab-separated table, one row per epoch, values to three decimals:
//   Epoch<TAB>Precision<TAB>Recall<TAB>Accuracy<TAB>F1 Score
std::string render_report_text(const ClassReport& report);
std::string render_report_json(const ClassReport& report);

}  // namespace limelight
