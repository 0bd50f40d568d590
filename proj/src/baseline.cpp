#include "limelight/baseline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "limelight/errors.hpp"

namespace limelight {

using nlohmann::json;
using nlohmann::ordered_json;

std::size_t BaselineModel::predict_tokens(const Tokens& tokens) const {
  const auto p = predict_proba_tokens(tokens);
  return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

std::string model_to_json(const BaselineModel& model) {
  ordered_json j;
  j["format_version"] = kModelFormatVersion;
  j["classes"] = model.class_names;
  j["vocabulary"] = model.tfidf.vocabulary().tokens();
  j["idf"] = std::vector<double>(model.tfidf.idf().begin(), model.tfidf.idf().end());
  ordered_json w = ordered_json::array();
  for (std::size_t c = 0; c < model.softmax.num_classes; ++c) {
    const auto row = model.softmax.row(c);
    w.push_back(std::vector<double>(row.begin(), row.end()));
  }
  j["W"] = std::move(w);
  j["b"] = model.softmax.bias;
  return j.dump();
}

BaselineModel model_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw DataError("model", "unsupported model format_version " + std::to_string(version));
    }
    BaselineModel model;
    model.class_names = j.at("classes").get<std::vector<std::string>>();
    auto tokens = j.at("vocabulary").get<std::vector<std::string>>();
    auto idf = j.at("idf").get<std::vector<double>>();
    const auto w = j.at("W").get<std::vector<std::vector<double>>>();
    const auto b = j.at("b").get<std::vector<double>>();
    const std::size_t classes = model.class_names.size();
    const std::size_t features = tokens.size();
    if (w.size() != classes || b.size() != classes) {
      throw DataError("model", "W/b shape does not match class count");
    }
    model.tfidf = TfidfModel(Vocabulary::from_tokens(std::move(tokens)), std::move(idf));
    model.softmax = SoftmaxModel(classes, features);
    for (std::size_t c = 0; c < classes; ++c) {
      if (w[c].size() != features) throw DataError("model", "W row length mismatch");
      std::copy(w[c].begin(), w[c].end(), model.softmax.row(c).begin());
    }
    model.softmax.bias = b;
    return model;
  } catch (const json::exception& e) {
    throw DataError("model", std::string("malformed model file: ") + e.what());
  }
}

void save_model(const BaselineModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("model", "cannot write " + path.string());
  out << model_to_json(model) << '\n';
}

BaselineModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("model", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

EpochMetrics compute_metrics(std::span<const std::size_t> truth,
                             std::span<const std::size_t> predicted, std::size_t num_classes,
                             std::vector<std::string>* warnings) {
  if (truth.size() != predicted.size()) {
    throw DataError("evaluate", "truth and prediction lengths differ");
  }
  if (truth.empty()) throw DataError("evaluate", "cannot evaluate an empty set");
  std::vector<std::size_t> tp(num_classes, 0), truth_count(num_classes, 0),
      pred_count(num_classes, 0);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] >= num_classes || predicted[i] >= num_classes) {
      throw DataError("evaluate", "class index out of range at row " + std::to_string(i));
    }
    ++truth_count[truth[i]];
    ++pred_count[predicted[i]];
    if (truth[i] == predicted[i]) {
      ++tp[truth[i]];
      ++correct;
    }
  }
  EpochMetrics m;
  for (std::size_t c = 0; c < num_classes; ++c) {
    const double p = pred_count[c] ? static_cast<double>(tp[c]) / static_cast<double>(pred_count[c]) : 0.0;
    double r = 0.0;
    if (truth_count[c]) {
      r = static_cast<double>(tp[c]) / static_cast<double>(truth_count[c]);
    } else if (warnings) {
      warnings->push_back("class " + std::to_string(c) +
                          " absent from truth; its recall is reported as 0");
    }
    m.precision += p;
    m.recall += r;
    m.f1 += (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
  }
  const double k = static_cast<double>(num_classes);
  m.precision /= k;
  m.recall /= k;
  m.f1 /= k;
  m.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
  return m;
}

EpochMetrics evaluate(const BaselineModel& model, const std::vector<LabeledDocument>& docs,
                      std::vector<std::string>* warnings) {
  std::vector<std::size_t> truth, predicted;
  truth.reserve(docs.size());
  predicted.reserve(docs.size());
  for (const auto& d : docs) {
    truth.push_back(index_of(d.label));
    predicted.push_back(model.predict_tokens(d.tokens));
  }
  return compute_metrics(truth, predicted, model.softmax.num_classes, warnings);
}

TrainOutcome train_baseline(const std::vector<LabeledDocument>& train,
                            const std::vector<LabeledDocument>& eval, const TrainConfig& config) {
  config.validate();
  std::vector<Tokens> token_docs;
  token_docs.reserve(train.size());
  for (const auto& d : train) token_docs.push_back(d.tokens);

  TrainOutcome outcome;
  const auto names = default_class_names();
  outcome.model.class_names.assign(names.begin(), names.end());
  outcome.model.tfidf = TfidfModel::fit(token_docs);

  std::vector<SparseVector> features;
  std::vector<std::size_t> labels;
  features.reserve(train.size());
  for (const auto& d : train) {
    features.push_back(outcome.model.tfidf.transform(d.tokens));
    labels.push_back(index_of(d.label));
  }

  BaselineModel snapshot;
  snapshot.class_names = outcome.model.class_names;
  snapshot.tfidf = outcome.model.tfidf;
  auto on_epoch = [&](int epoch, const SoftmaxModel& softmax) {
    if (eval.empty()) return;
    snapshot.softmax = softmax;
    EpochMetrics m = evaluate(snapshot, eval, epoch == 1 ? &outcome.report.warnings : nullptr);
    m.epoch = epoch;
    outcome.report.epochs.push_back(m);
  };
  auto trained = train_softmax(features, labels, outcome.model.tfidf.dimension(), kNumClasses,
                               config, on_epoch);
  outcome.model.softmax = std::move(trained.model);
  outcome.epoch_losses = std::move(trained.epoch_losses);
  return outcome;
}

namespace {
std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}
}  // namespace

std::string render_report_text(const ClassReport& report) {
  std::string out = "Epoch\tPrecision\tRecall\tAccuracy\tF1 Score\n";
  for (const auto& e : report.epochs) {
    out += std::to_string(e.epoch) + '\t' + fixed3(e.precision) + '\t' + fixed3(e.recall) + '\t' +
           fixed3(e.accuracy) + '\t' + fixed3(e.f1) + '\n';
  }
  return out;
}

std::string render_report_json(const ClassReport& report) {
  ordered_json j;
  j["averaging"] = "macro";
  ordered_json rows = ordered_json::array();
  for (const auto& e : report.epochs) {
    ordered_json r;
    r["epoch"] = e.epoch;
    r["precision"] = e.precision;
    r["recall"] = e.recall;
    r["accuracy"] = e.accuracy;
    r["f1"] = e.f1;
    rows.push_back(std::move(r));
  }
  j["epochs"] = std::move(rows);
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

}  // namespace limelight
