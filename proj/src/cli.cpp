#include "limelight/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "limelight/analysis.hpp"
#include "limelight/baseline.hpp"
#include "limelight/blackbox.hpp"
#include "limelight/corpus.hpp"
#include "limelight/errors.hpp"
#include "limelight/lime.hpp"
#include "limelight/report.hpp"
#include "limelight/synth.hpp"

namespace limelight {
namespace {

namespace fs = std::filesystem;

std::string version_string() {
  return "limelight " + std::string(kToolVersion) + " (blackbox protocol " +
         std::string(kProtocolName) + " v" + std::to_string(kProtocolVersion) + ")";
}

void write_output(const std::string& path, std::string_view content, std::ostream& out,
                  const std::string& stage) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw DataError(stage, "cannot write " + path);
  f << content;
  if (!f) throw DataError(stage, "write failed for " + path);
}

std::string read_file(const std::string& path, const std::string& stage) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError(stage, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string to_lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    const auto b = cur.find_first_not_of(" \t");
    const auto e = cur.find_last_not_of(" \t");
    if (b != std::string::npos) parts.push_back(cur.substr(b, e - b + 1));
  }
  return parts;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

// Class selection: "all", or comma-separated names (case-insensitive) or
// 0-based indices.
std::vector<std::size_t> parse_classes(const std::string& list,
                                       const std::vector<std::string>& names) {
  if (to_lower(list) == "all" || list.empty()) return {};
  std::vector<std::size_t> out;
  for (const auto& item : split_list(list)) {
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (to_lower(names[i]) == to_lower(item)) found = i;
    }
    if (!found && !item.empty() && std::all_of(item.begin(), item.end(), ::isdigit)) {
      const std::size_t idx = std::stoul(item);
      if (idx < names.size()) found = idx;
    }
    if (!found) throw UsageError("explain", "unknown class '" + item + "'");
    if (std::find(out.begin(), out.end(), *found) == out.end()) out.push_back(*found);
  }
  return out;
}

struct BlackboxOptions {
  std::string model;
  std::string command;
  std::string classes = "hate,offensive,none";
  int timeout_ms = 30000;
  int handshake_timeout_ms = 5000;

  void add_to(CLI::App* app) {
    auto* m = app->add_option("--model", model, "Baseline model JSON (in-process black box)")
                  ->check(CLI::ExistingFile);
    auto* b = app->add_option("--blackbox", command,
                              "External adapter command speaking the JSONL protocol");
    m->excludes(b);
    app->add_option("--blackbox-classes", classes,
                    "Class names the external adapter must advertise, in order")
        ->capture_default_str();
    app->add_option("--timeout", timeout_ms, "Per-batch adapter timeout in ms")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--handshake-timeout", handshake_timeout_ms, "Adapter handshake timeout in ms")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  }

  bool external() const { return !command.empty(); }

  ClassifierHandle open(const std::string& stage) const {
    if (model.empty() == command.empty()) {
      throw UsageError(stage, "exactly one of --model or --blackbox is required");
    }
    if (!external()) return make_in_process(load_model(model));
    ExternalOptions opts;
    opts.batch_timeout = std::chrono::milliseconds(timeout_ms);
    opts.handshake_timeout = std::chrono::milliseconds(handshake_timeout_ms);
    return open_external(command, split_list(classes), opts);
  }
};

// ---- prep ----

struct PrepOptions {
  std::string in, out;
  std::string label_column = "class", text_column = "tweet", id_column;
  std::string label_map = "0=hate,1=offensive,2=none";
  std::string extra_stopwords;
  bool strict = false;
};

int cmd_prep(const PrepOptions& o, std::ostream& out, std::ostream& err) {
  CsvFormat format;
  format.label_column = o.label_column;
  format.text_column = o.text_column;
  format.id_column = o.id_column;
  format.label_map = parse_label_map(o.label_map);
  format.strict = o.strict;
  const LoadResult loaded = load_corpus(o.in, format);
  print_warnings(loaded.warnings, err);

  Preprocessor pre;
  if (!o.extra_stopwords.empty()) {
    StopList stop = StopList::bundled();
    stop.merge(StopList::parse(read_file(o.extra_stopwords, "prep")));
    pre = Preprocessor(std::move(stop), Lemmatizer());
  }
  const auto docs = preprocess(loaded.records, pre);
  std::ostringstream jsonl;
  write_documents_jsonl(jsonl, docs);
  write_output(o.out, jsonl.str(), out, "prep");
  err << "prep: " << docs.size() << " documents, " << loaded.skipped_rows << " rows skipped\n";
  return kExitOk;
}

// ---- split ----

struct SplitOptions {
  std::string in, out_dir;
  SplitRatios ratios;
  std::uint64_t seed = 42;
};

int cmd_split(const SplitOptions& o, std::ostream& out) {
  const auto docs = read_documents_jsonl(fs::path(o.in));
  const DatasetSplit split = stratified_split(docs, o.ratios, o.seed);
  fs::create_directories(o.out_dir);
  write_documents_jsonl(fs::path(o.out_dir) / "train.jsonl", split.train);
  write_documents_jsonl(fs::path(o.out_dir) / "test.jsonl", split.test);
  write_documents_jsonl(fs::path(o.out_dir) / "validation.jsonl", split.validation);
  out << "train\t" << split.train.size() << "\ntest\t" << split.test.size() << "\nvalidation\t"
      << split.validation.size() << "\n";
  return kExitOk;
}

// ---- train ----

struct TrainOptions {
  std::string train, eval, out, report, report_json;
  TrainConfig config;
};

int cmd_train(const TrainOptions& o, std::ostream& out, std::ostream& err) {
  o.config.validate();
  const auto train = read_documents_jsonl(fs::path(o.train));
  std::vector<LabeledDocument> eval;
  if (!o.eval.empty()) eval = read_documents_jsonl(fs::path(o.eval));
  const TrainOutcome outcome = train_baseline(train, eval, o.config);
  save_model(outcome.model, o.out);
  print_warnings(outcome.report.warnings, err);
  for (std::size_t e = 0; e < outcome.epoch_losses.size(); ++e) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", outcome.epoch_losses[e]);
    err << "epoch " << e + 1 << " loss " << buf << "\n";
  }
  if (!eval.empty()) {
    if (!o.report_json.empty()) write_output(o.report_json, render_report_json(outcome.report), out, "train");
    if (!o.report.empty() || o.report_json.empty()) {
      write_output(o.report, render_report_text(outcome.report), out, "train");
    }
  }
  return kExitOk;
}

// ---- eval ----

struct EvalOptions {
  std::string model, in, out;
  std::string format = "text";
  int epoch = 1;
};

int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
  const BaselineModel model = load_model(o.model);
  const auto docs = read_documents_jsonl(fs::path(o.in));
  ClassReport report;
  EpochMetrics m = evaluate(model, docs, &report.warnings);
  m.epoch = o.epoch;
  report.epochs.push_back(m);
  print_warnings(report.warnings, err);
  write_output(o.out, o.format == "json" ? render_report_json(report) : render_report_text(report),
               out, "eval");
  return kExitOk;
}

// ---- explain ----

struct ExplainOptions {
  BlackboxOptions blackbox;
  std::string text, batch;
  std::string batch_format = "jsonl";
  std::string classes = "all";
  std::string format = "json";
  std::string out;
  std::string token_mode = "auto";
  std::size_t jobs = 1;
  bool no_timestamp = false;
  double sigma = 25.0;
  std::size_t num_samples = 1000;
  double ridge_lambda = 1.0;
  std::size_t top_k = 10;
  std::string selection = "highest_weight";
  std::string sampling = "auto";
  std::uint64_t seed = 42;
};

std::vector<BatchItem> read_batch(const std::string& path, const std::string& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("explain", "cannot read " + path);
  std::vector<BatchItem> items;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (format == "lines") {
      items.push_back(BatchItem{static_cast<std::int64_t>(items.size() + 1), line});
      continue;
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw DataError("explain", path + ":" + std::to_string(lineno) + ": not a JSON object");
    }
    if (!j.is_object()) {
      throw DataError("explain", path + ":" + std::to_string(lineno) + ": not a JSON object");
    }
    BatchItem item;
    item.id = static_cast<std::int64_t>(items.size() + 1);
    if (j.contains("id")) {
      if (!j["id"].is_number_integer()) {
        throw DataError("explain", path + ":" + std::to_string(lineno) + ": id is not an integer");
      }
      item.id = j["id"].get<std::int64_t>();
    }
    const char* key = j.contains("text") ? "text" : "raw_text";
    if (!j.contains(key) || !j[key].is_string()) {
      throw DataError("explain", path + ":" + std::to_string(lineno) + ": missing \"text\"");
    }
    item.text = j[key].get<std::string>();
    items.push_back(std::move(item));
  }
  return items;
}

int cmd_explain(const ExplainOptions& o, std::ostream& out) {
  if (o.text.empty() == o.batch.empty()) {
    throw UsageError("explain", "exactly one of --text or --batch is required");
  }
  const auto format = parse_report_format(o.format);
  if (!format) throw UsageError("explain", "unknown --format '" + o.format + "'");
  if (!o.batch.empty() && *format == ReportFormat::kHtml) {
    throw UsageError("explain", "--batch supports --format json or text");
  }
  KernelConfig kernel;
  kernel.sigma = o.sigma;
  kernel.validate();
  SurrogateConfig cfg;
  cfg.num_samples = o.num_samples;
  cfg.ridge_lambda = o.ridge_lambda;
  cfg.top_k = o.top_k;
  cfg.seed = o.seed;
  const auto selection = parse_feature_selection(o.selection);
  const auto sampling = parse_sampling_mode(o.sampling);
  if (!selection) throw UsageError("explain", "unknown --feature-selection '" + o.selection + "'");
  if (!sampling) throw UsageError("explain", "unknown --sampling '" + o.sampling + "'");
  cfg.selection = *selection;
  cfg.sampling = *sampling;
  cfg.validate();

  std::vector<BatchItem> items;
  if (!o.batch.empty()) items = read_batch(o.batch, o.batch_format);

  const ClassifierHandle handle = o.blackbox.open("explain");
  const auto classes = parse_classes(o.classes, handle.class_names());

  bool preprocessed = !o.blackbox.external();
  if (o.token_mode == "preprocessed") preprocessed = true;
  else if (o.token_mode == "whitespace") preprocessed = false;
  else if (o.token_mode != "auto") throw UsageError("explain", "unknown --tokens '" + o.token_mode + "'");
  Tokenizer tokenizer;
  if (preprocessed) {
    tokenizer = [pre = Preprocessor()](std::string_view t) { return pre(t); };
  } else {
    tokenizer = [](std::string_view t) { return split_whitespace(t); };
  }

  if (o.batch.empty()) {
    const Explanation e = explain_all_classes(handle, o.text, tokenizer, kernel, cfg, classes);
    RenderOptions ro;
    if (!o.no_timestamp) ro.timestamp = utc_timestamp();
    write_output(o.out, render_explanation_report(e, *format, ro), out, "explain");
    return kExitOk;
  }

  const auto results = explain_batch(handle, items, tokenizer, kernel, cfg, classes, o.jobs);
  std::string doc;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (*format == ReportFormat::kJson) {
      RenderOptions ro;
      ro.json_indent = -1;
      ro.id = items[i].id;
      doc += render_explanation_json(results[i], ro) + "\n";
    } else {
      if (i) doc += "\n";
      doc += "Id: " + std::to_string(items[i].id) + "\n" + render_explanation_text(results[i]);
    }
  }
  write_output(o.out, doc, out, "explain");
  return kExitOk;
}

// ---- analyze ----

struct AnalyzeOptions {
  BlackboxOptions blackbox;
  std::string in, out;
  std::string format = "text";
  double tie_epsilon = 0.0;
  std::size_t per_class = 0;
  std::uint64_t seed = 42;
  int epoch = 1;
};

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream& err) {
  if (o.format != "text" && o.format != "json") {
    throw UsageError("analyze", "unknown --format '" + o.format + "'");
  }
  if (o.tie_epsilon < 0.0) throw UsageError("analyze", "--tie-epsilon must be >= 0");
  auto docs = read_documents_jsonl(fs::path(o.in));
  std::vector<std::string> warnings;
  if (o.per_class > 0) docs = sample_per_class(docs, o.per_class, o.seed, &warnings);
  if (docs.empty()) throw DataError("analyze", "no documents to analyze");

  ProbabilityMatrix probs(docs.size(), kNumClasses);
  if (!o.blackbox.external() && !o.blackbox.model.empty()) {
    const BaselineModel model = load_model(o.blackbox.model);
    if (model.class_names.size() != kNumClasses) {
      throw DataError("analyze", "model must have exactly " + std::to_string(kNumClasses) + " classes");
    }
    for (std::size_t i = 0; i < docs.size(); ++i) {
      const auto p = model.predict_proba_tokens(docs[i].tokens);
      std::copy(p.begin(), p.end(), probs.row(i).begin());
    }
  } else {
    const ClassifierHandle handle = o.blackbox.open("analyze");
    if (handle.num_classes() != kNumClasses) {
      throw ProtocolError("analyze", "black box must report exactly " +
                                          std::to_string(kNumClasses) + " classes");
    }
    std::vector<std::string> texts;
    texts.reserve(docs.size());
    for (const auto& d : docs) texts.push_back(d.raw_text);
    probs = handle.predict_proba_batch(texts);
  }

  std::vector<std::size_t> truth(docs.size()), predicted(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    truth[i] = index_of(docs[i].label);
    const auto row = probs.row(i);
    predicted[i] = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  const ConfusionMatrix matrix = confusion(truth, predicted, probs, o.tie_epsilon);
  const ErrorBreakdown breakdown = error_breakdown(matrix);
  ClassReport report;
  EpochMetrics m = compute_metrics(truth, predicted, kNumClasses, &report.warnings);
  m.epoch = o.epoch;
  report.epochs.push_back(m);
  print_warnings(warnings, err);
  print_warnings(report.warnings, err);

  std::string doc;
  if (o.format == "json") {
    auto j = nlohmann::ordered_json::parse(render_analysis_json(matrix, breakdown));
    j["report"] = nlohmann::ordered_json::parse(render_report_json(report));
    doc = j.dump(2) + "\n";
  } else {
    doc = render_report_text(report) + "\n" + render_confusion_text(matrix) + "\n" +
          render_breakdown_text(breakdown);
  }
  write_output(o.out, doc, out, "analyze");
  return kExitOk;
}

// ---- freq ----

struct FreqOptions {
  std::string in, out_dir;
  std::string cls = "all";
  std::size_t k = 60;
};

int cmd_freq(const FreqOptions& o, std::ostream& out, std::ostream& err) {
  const auto docs = read_documents_jsonl(fs::path(o.in));
  std::vector<ClassLabel> labels;
  if (to_lower(o.cls) == "all") {
    labels.assign(kAllLabels.begin(), kAllLabels.end());
  } else {
    for (const auto& name : split_list(o.cls)) {
      const auto l = parse_label(name);
      if (!l) throw UsageError("freq", "unknown class '" + name + "'");
      labels.push_back(*l);
    }
  }
  fs::create_directories(o.out_dir);
  std::vector<std::string> warnings;
  for (ClassLabel l : labels) {
    const FrequencyTable table = top_frequent_words(docs, l, o.k, &warnings);
    const std::string stem = "freq_" + std::string(label_name(l));
    write_output((fs::path(o.out_dir) / (stem + ".csv")).string(), render_frequency_csv(table), out, "freq");
    write_output((fs::path(o.out_dir) / (stem + ".svg")).string(), render_frequency_svg(table), out, "freq");
    out << label_display_name(l) << "\t" << table.entries.size() << " words\n";
  }
  print_warnings(warnings, err);
  return kExitOk;
}

// ---- sample-150 ----

struct SampleOptions {
  std::string in, out;
  std::size_t per_class = 50;
  std::uint64_t seed = 42;
};

int cmd_sample(const SampleOptions& o, std::ostream& out, std::ostream& err) {
  const auto docs = read_documents_jsonl(fs::path(o.in));
  std::vector<std::string> warnings;
  const auto sample = sample_per_class(docs, o.per_class, o.seed, &warnings);
  print_warnings(warnings, err);
  std::ostringstream jsonl;
  write_documents_jsonl(jsonl, sample);
  write_output(o.out, jsonl.str(), out, "sample");
  return kExitOk;
}

// ---- synth ----

struct SynthOptions {
  std::string out;
  SynthConfig config;
};

int cmd_synth(const SynthOptions& o, std::ostream& out) {
  write_output(o.out, records_to_csv(generate_keyword_corpus(o.config)), out, "synth");
  return kExitOk;
}

void add_lime_options(CLI::App* app, ExplainOptions& o) {
  app->add_option("--sigma", o.sigma, "Kernel width")->capture_default_str();
  app->add_option("--num-samples", o.num_samples, "Perturbations per instance")->capture_default_str();
  app->add_option("--ridge-lambda", o.ridge_lambda, "Ridge penalty")->capture_default_str();
  app->add_option("--top-k", o.top_k, "Features kept per class")->capture_default_str();
  app->add_option("--feature-selection", o.selection, "highest_weight or forward_selection")
      ->capture_default_str();
  app->add_option("--sampling", o.sampling, "auto, random or exhaustive")->capture_default_str();
  app->add_option("--seed", o.seed, "Random seed")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local surrogate explanations for hate-speech text classifiers", "limelight"};
  app.set_version_flag("--version", version_string());
  app.set_config("--config", "", "TOML file with option defaults; command-line flags win");
  app.require_subcommand(1);

  PrepOptions prep;
  auto* prep_cmd = app.add_subcommand("prep", "Load a labeled CSV and preprocess it to JSONL");
  prep_cmd->add_option("--in", prep.in, "Input CSV")->required()->check(CLI::ExistingFile);
  prep_cmd->add_option("--out", prep.out, "Output JSONL (stdout when omitted)");
  prep_cmd->add_option("--label-column", prep.label_column, "Label column name or index")
      ->capture_default_str();
  prep_cmd->add_option("--text-column", prep.text_column, "Text column name or index")
      ->capture_default_str();
  prep_cmd->add_option("--id-column", prep.id_column, "Id column name or index");
  prep_cmd->add_option("--label-map", prep.label_map, "Raw label code to class")->capture_default_str();
  prep_cmd->add_option("--extra-stopwords", prep.extra_stopwords, "Additional stopword file")
      ->check(CLI::ExistingFile);
  prep_cmd->add_flag("--strict", prep.strict, "Abort on the first malformed row");

  SplitOptions split;
  auto* split_cmd = app.add_subcommand("split", "Stratified train/test/validation split");
  split_cmd->add_option("--in", split.in, "Preprocessed JSONL")->required()->check(CLI::ExistingFile);
  split_cmd->add_option("--out-dir", split.out_dir, "Output directory")->required();
  split_cmd->add_option("--train", split.ratios.train, "Train share")->capture_default_str();
  split_cmd->add_option("--test", split.ratios.test, "Test share")->capture_default_str();
  split_cmd->add_option("--validation", split.ratios.validation, "Validation share")
      ->capture_default_str();
  split_cmd->add_option("--seed", split.seed, "Random seed")->capture_default_str();

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Train the TF-IDF + softmax baseline");
  train_cmd->add_option("--train", train.train, "Training JSONL")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--eval", train.eval, "Evaluation JSONL, scored after every epoch")
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--out", train.out, "Model JSON")->required();
  train_cmd->add_option("--report", train.report, "Per-epoch report (text)");
  train_cmd->add_option("--report-json", train.report_json, "Per-epoch report (JSON)");
  train_cmd->add_option("--epochs", train.config.epochs, "Epochs")->capture_default_str();
  train_cmd->add_option("--learning-rate", train.config.learning_rate, "Learning rate")
      ->capture_default_str();
  train_cmd->add_option("--l2", train.config.l2, "L2 penalty")->capture_default_str();
  train_cmd->add_option("--batch-size", train.config.batch_size, "Mini-batch size")
      ->capture_default_str();
  train_cmd->add_option("--seed", train.config.seed, "Random seed")->capture_default_str();

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score a model on labeled JSONL");
  eval_cmd->add_option("--model", eval.model, "Model JSON")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--in", eval.in, "Labeled JSONL")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--out", eval.out, "Report file (stdout when omitted)");
  eval_cmd->add_option("--format", eval.format, "text or json")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json"}));
  eval_cmd->add_option("--epoch", eval.epoch, "Value for the Epoch column")->capture_default_str();

  ExplainOptions explain;
  auto* explain_cmd = app.add_subcommand("explain", "Explain predictions with a local surrogate");
  explain.blackbox.add_to(explain_cmd);
  explain_cmd->add_option("--text", explain.text, "Text to explain");
  explain_cmd->add_option("--batch", explain.batch, "File of texts to explain")
      ->check(CLI::ExistingFile);
  explain_cmd->add_option("--batch-format", explain.batch_format,
                          "jsonl ({\"id\",\"text\"} per line) or lines (one text per line)")
      ->capture_default_str()
      ->check(CLI::IsMember({"jsonl", "lines"}));
  explain_cmd->add_option("--classes", explain.classes, "'all' or comma-separated classes")
      ->capture_default_str();
  explain_cmd->add_option("--format", explain.format, "json, html or text")->capture_default_str();
  explain_cmd->add_option("--out", explain.out, "Output file (stdout when omitted)");
  explain_cmd->add_option("--jobs", explain.jobs, "Parallel instances in --batch mode")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  explain_cmd->add_option("--tokens", explain.token_mode,
                          "auto, preprocessed or whitespace feature tokens")
      ->capture_default_str();
  explain_cmd->add_flag("--no-timestamp", explain.no_timestamp, "Omit the HTML timestamp");
  add_lime_options(explain_cmd, explain);

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Confusion matrix and error breakdown");
  analyze.blackbox.add_to(analyze_cmd);
  analyze_cmd->add_option("--in", analyze.in, "Labeled JSONL")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("--out", analyze.out, "Report file (stdout when omitted)");
  analyze_cmd->add_option("--format", analyze.format, "text or json")->capture_default_str();
  analyze_cmd->add_option("--tie-epsilon", analyze.tie_epsilon,
                          "Treat top-2 probabilities within this distance as a tie (0: exact)")
      ->capture_default_str();
  analyze_cmd->add_option("--per-class", analyze.per_class,
                          "Analyze a seeded sample of this many documents per class (0: all)")
      ->capture_default_str();
  analyze_cmd->add_option("--seed", analyze.seed, "Sampling seed")->capture_default_str();
  analyze_cmd->add_option("--epoch", analyze.epoch, "Value for the Epoch column")
      ->capture_default_str();

  FreqOptions freq;
  auto* freq_cmd = app.add_subcommand("freq", "Most frequent words per class (CSV and SVG)");
  freq_cmd->add_option("--in", freq.in, "Preprocessed JSONL")->required()->check(CLI::ExistingFile);
  freq_cmd->add_option("--out-dir", freq.out_dir, "Output directory")->required();
  freq_cmd->add_option("--class", freq.cls, "'all' or comma-separated classes")->capture_default_str();
  freq_cmd->add_option("--k", freq.k, "Words per class")->capture_default_str();

  SampleOptions sample;
  auto* sample_cmd = app.add_subcommand("sample-150", "Seeded sample of documents per class");
  sample_cmd->add_option("--in", sample.in, "Labeled JSONL")->required()->check(CLI::ExistingFile);
  sample_cmd->add_option("--out", sample.out, "Output JSONL (stdout when omitted)");
  sample_cmd->add_option("--per-class", sample.per_class, "Documents per class")->capture_default_str();
  sample_cmd->add_option("--seed", sample.seed, "Random seed")->capture_default_str();

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate the synthetic keyword corpus as CSV");
  synth_cmd->add_option("--out", synth.out, "Output CSV (stdout when omitted)");
  synth_cmd->add_option("--per-class", synth.config.per_class, "Documents per class")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.config.seed, "Random seed")->capture_default_str();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("limelight");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (prep_cmd->parsed()) return cmd_prep(prep, out, err);
    if (split_cmd->parsed()) return cmd_split(split, out);
    if (train_cmd->parsed()) return cmd_train(train, out, err);
    if (eval_cmd->parsed()) return cmd_eval(eval, out, err);
    if (explain_cmd->parsed()) return cmd_explain(explain, out);
    if (analyze_cmd->parsed()) return cmd_analyze(analyze, out, err);
    if (freq_cmd->parsed()) return cmd_freq(freq, out, err);
    if (sample_cmd->parsed()) return cmd_sample(sample, out, err);
    if (synth_cmd->parsed()) return cmd_synth(synth, out);
  } catch (const UsageError& e) {
    err << "error [" << e.stage() << "]: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ProtocolError& e) {
    err << "error [" << e.stage() << "]: " << e.what() << "\n";
    return kExitProtocol;
  } catch (const Error& e) {
    err << "error [" << e.stage() << "]: " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "error [io]: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error [internal]: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace limelight
