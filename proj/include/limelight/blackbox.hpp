#pragma once

// Black-box classifiers: text in, one probability row per text out.
//
// A ClassifierHandle wraps a realization (in-process baseline, arbitrary
// callable, or external adapter process) and enforces the row contract at
// the boundary: every row has one entry per class, entries are finite and
// >= 0, and the row sums to 1 within kRowSumTolerance.

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "limelight/baseline.hpp"
#include "limelight/text.hpp"

namespace limelight {

inline constexpr std::string_view kProtocolName = "limelight-blackbox";
inline constexpr int kProtocolVersion = 1;
inline constexpr double kRowSumTolerance = 1e-6;
inline constexpr std::size_t kMaxBatchTexts = 256;

// Dense row-major rows x cols matrix of probabilities.
struct ProbabilityMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  ProbabilityMatrix() = default;
  ProbabilityMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  std::span<double> row(std::size_t i) { return std::span(data).subspan(i * cols, cols); }
  std::span<const double> row(std::size_t i) const {
    return std::span(data).subspan(i * cols, cols);
  }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  bool operator==(const ProbabilityMatrix&) const = default;
};

// One realization of the black box. predict_batch receives at most
// kMaxBatchTexts texts.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual const std::vector<std::string>& class_names() const = 0;
  virtual ProbabilityMatrix predict_batch(std::span<const std::string> texts) = 0;
};

enum class HandleKind { kInProcess, kExternal };

// Throws ProtocolError naming the first offending row.
void validate_probability_rows(const ProbabilityMatrix& m, std::size_t expected_rows,
                               std::size_t num_classes);

class ClassifierHandle {
 public:
  ClassifierHandle(std::shared_ptr<Classifier> impl, HandleKind kind);

  const std::vector<std::string>& class_names() const { return impl_->class_names(); }
  std::size_t num_classes() const { return impl_->class_names().size(); }
  HandleKind kind() const { return kind_; }

  // |texts| validated rows in input order. Larger inputs are sent in chunks
  // of kMaxBatchTexts; an empty input makes no call at all.
  ProbabilityMatrix predict_proba_batch(std::span<const std::string> texts) const;

 private:
  std::shared_ptr<Classifier> impl_;
  HandleKind kind_;
};

// The baseline model; input texts are run through `pre` first.
ClassifierHandle make_in_process(BaselineModel model, Preprocessor pre = Preprocessor());

// Any callable text -> probability row.
using RowFunction = std::function<std::vector<double>(const std::string&)>;
ClassifierHandle make_function_classifier(std::vector<std::string> class_names, RowFunction fn);

struct ExternalOptions {
  std::chrono::milliseconds handshake_timeout{5000};
  std::chrono::milliseconds batch_timeout{30000};
};

// Splits a command line into argv. Supports single and double quotes and
// backslash escapes; no other shell syntax.
std::vector<std::string> split_command_line(std::string_view command);

// Spawns `command` and completes the handshake. The adapter's first stdout
// line must be {"protocol":"limelight-blackbox","version":1,"classes":[...]}
// with classes equal to `expected_classes`. Requests are
// {"id":n,"texts":[...]}; replies {"id":n,"probabilities":[[...],...]} or
// {"id":n,"error":"..."}. If the adapter dies mid-request it is restarted
// once and the same request (same id) re-sent.
ClassifierHandle open_external(const std::string& command,
                               std::vector<std::string> expected_classes,
                               const ExternalOptions& options = {});

}  // namespace limelight
