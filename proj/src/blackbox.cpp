#include "limelight/blackbox.hpp"

#include <cmath>
#include <condition_variable>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "limelight/errors.hpp"
#include "subprocess.hpp"

namespace limelight {

using nlohmann::json;

void validate_probability_rows(const ProbabilityMatrix& m, std::size_t expected_rows,
                               std::size_t num_classes) {
  if (m.rows != expected_rows) {
    throw ProtocolError("blackbox", "expected " + std::to_string(expected_rows) +
                                        " probability rows, got " + std::to_string(m.rows));
  }
  if (m.cols != num_classes || m.data.size() != m.rows * m.cols) {
    throw ProtocolError("blackbox", "probability rows have " + std::to_string(m.cols) +
                                        " entries; expected " + std::to_string(num_classes));
  }
  for (std::size_t i = 0; i < m.rows; ++i) {
    double sum = 0.0;
    for (double v : m.row(i)) {
      if (!std::isfinite(v) || v < 0.0) {
        throw ProtocolError("blackbox", "row " + std::to_string(i) +
                                            " has a negative or non-finite probability");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "row " << i << " is not normalized (sum " << sum << ")";
      throw ProtocolError("blackbox", msg.str());
    }
  }
}

ClassifierHandle::ClassifierHandle(std::shared_ptr<Classifier> impl, HandleKind kind)
    : impl_(std::move(impl)), kind_(kind) {
  if (!impl_ || impl_->class_names().empty()) {
    throw ProtocolError("blackbox", "classifier must declare at least one class");
  }
}

ProbabilityMatrix ClassifierHandle::predict_proba_batch(std::span<const std::string> texts) const {
  const std::size_t k = num_classes();
  ProbabilityMatrix out(texts.size(), k);
  for (std::size_t start = 0; start < texts.size(); start += kMaxBatchTexts) {
    const std::size_t n = std::min(kMaxBatchTexts, texts.size() - start);
    const ProbabilityMatrix chunk = impl_->predict_batch(texts.subspan(start, n));
    validate_probability_rows(chunk, n, k);
    std::copy(chunk.data.begin(), chunk.data.end(), out.data.begin() + static_cast<std::ptrdiff_t>(start * k));
  }
  return out;
}

namespace {

class InProcessClassifier final : public Classifier {
 public:
  InProcessClassifier(BaselineModel model, Preprocessor pre)
      : model_(std::move(model)), pre_(std::move(pre)) {}

  const std::vector<std::string>& class_names() const override { return model_.class_names; }

  ProbabilityMatrix predict_batch(std::span<const std::string> texts) override {
    ProbabilityMatrix m(texts.size(), model_.class_names.size());
    for (std::size_t i = 0; i < texts.size(); ++i) {
      const auto p = model_.predict_proba_tokens(pre_(texts[i]));
      std::copy(p.begin(), p.end(), m.row(i).begin());
    }
    return m;
  }

 private:
  const BaselineModel model_;
  const Preprocessor pre_;
};

class FunctionClassifier final : public Classifier {
 public:
  FunctionClassifier(std::vector<std::string> names, RowFunction fn)
      : names_(std::move(names)), fn_(std::move(fn)) {}

  const std::vector<std::string>& class_names() const override { return names_; }

  ProbabilityMatrix predict_batch(std::span<const std::string> texts) override {
    ProbabilityMatrix m(texts.size(), names_.size());
    for (std::size_t i = 0; i < texts.size(); ++i) {
      const auto p = fn_(texts[i]);
      if (p.size() != names_.size()) {
        m.cols = p.size();
        m.data.assign(texts.size() * p.size(), 0.0);
        return m;  // rejected by the handle's validator
      }
      std::copy(p.begin(), p.end(), m.row(i).begin());
    }
    return m;
  }

 private:
  std::vector<std::string> names_;
  RowFunction fn_;
};

// Serializes callers in arrival order over the adapter's single channel.
class FifoLock {
 public:
  void lock() {
    std::unique_lock lk(mu_);
    const std::uint64_t ticket = next_++;
    cv_.wait(lk, [&] { return serving_ == ticket; });
  }
  void unlock() {
    std::lock_guard lk(mu_);
    ++serving_;
    cv_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::uint64_t next_ = 0;
  std::uint64_t serving_ = 0;
};

class ExternalClassifier final : public Classifier {
 public:
  ExternalClassifier(std::vector<std::string> argv, std::vector<std::string> expected,
                     ExternalOptions options)
      : argv_(std::move(argv)), names_(std::move(expected)), options_(options) {
    start();
  }

  const std::vector<std::string>& class_names() const override { return names_; }

  ProbabilityMatrix predict_batch(std::span<const std::string> texts) override {
    std::lock_guard guard(lock_);
    const std::int64_t id = next_id_++;
    json request;
    request["id"] = id;
    request["texts"] = std::vector<std::string>(texts.begin(), texts.end());
    const std::string line = request.dump(-1, ' ', false, json::error_handler_t::replace);

    for (int attempt = 0; attempt < 2; ++attempt) {
      if (!proc_) start();
      if (!proc_->write_line(line)) {
        proc_.reset();
        continue;
      }
      std::string reply;
      switch (proc_->read_line(reply, options_.batch_timeout)) {
        case detail::Subprocess::ReadStatus::kLine:
          return parse_reply(reply, id, texts.size());
        case detail::Subprocess::ReadStatus::kEof:
          proc_.reset();
          continue;
        case detail::Subprocess::ReadStatus::kTimeout:
          proc_->kill();
          proc_.reset();
          throw ProtocolError("blackbox", "adapter timed out after " +
                                              std::to_string(options_.batch_timeout.count()) +
                                              " ms on request " + std::to_string(id));
      }
    }
    throw ProtocolError("blackbox", "adapter exited while serving request " + std::to_string(id) +
                                        " and failed again after one restart");
  }

 private:
  void start() {
    auto proc = std::make_unique<detail::Subprocess>(argv_);
    std::string line;
    switch (proc->read_line(line, options_.handshake_timeout)) {
      case detail::Subprocess::ReadStatus::kTimeout:
        proc->kill();
        throw ProtocolError("handshake", "no handshake within " +
                                             std::to_string(options_.handshake_timeout.count()) +
                                             " ms");
      case detail::Subprocess::ReadStatus::kEof:
        throw ProtocolError("handshake", "adapter exited before sending its handshake");
      case detail::Subprocess::ReadStatus::kLine:
        break;
    }
    json hello;
    try {
      hello = json::parse(line);
    } catch (const json::exception&) {
      throw ProtocolError("handshake", "handshake is not JSON: " + line.substr(0, 200));
    }
    if (!hello.is_object() || hello.value("protocol", std::string()) != kProtocolName) {
      throw ProtocolError("handshake", "unexpected handshake: " + line.substr(0, 200));
    }
    const json version = hello.value("version", json());
    if (!version.is_number_integer() || version.get<int>() != kProtocolVersion) {
      throw ProtocolError("handshake", "protocol version mismatch: adapter speaks " +
                                           version.dump() + ", expected " +
                                           std::to_string(kProtocolVersion));
    }
    std::vector<std::string> classes;
    try {
      classes = hello.at("classes").get<std::vector<std::string>>();
    } catch (const json::exception&) {
      throw ProtocolError("handshake", "handshake lacks a string array 'classes'");
    }
    if (classes != names_) {
      throw ProtocolError("handshake", "class mismatch: adapter advertises " +
                                           json(classes).dump() + ", expected " +
                                           json(names_).dump());
    }
    proc_ = std::move(proc);
  }

  ProbabilityMatrix parse_reply(const std::string& line, std::int64_t id, std::size_t n) {
    json reply;
    try {
      reply = json::parse(line);
    } catch (const json::exception&) {
      throw ProtocolError("blackbox", "malformed response line: " + line.substr(0, 200));
    }
    if (!reply.is_object() || !reply.contains("id") || !reply["id"].is_number_integer()) {
      throw ProtocolError("blackbox", "response without integer id: " + line.substr(0, 200));
    }
    if (reply["id"].get<std::int64_t>() != id) {
      throw ProtocolError("blackbox", "response id " + reply["id"].dump() +
                                          " does not match request id " + std::to_string(id));
    }
    if (reply.contains("error")) {
      throw ProtocolError("blackbox", "adapter reported an error for request " +
                                          std::to_string(id) + ": " +
                                          (reply["error"].is_string()
                                               ? reply["error"].get<std::string>()
                                               : reply["error"].dump()));
    }
    const auto it = reply.find("probabilities");
    if (it == reply.end() || !it->is_array()) {
      throw ProtocolError("blackbox", "response lacks a 'probabilities' array");
    }
    if (it->size() != n) {
      throw ProtocolError("blackbox", "response has " + std::to_string(it->size()) +
                                          " rows for " + std::to_string(n) + " texts");
    }
    ProbabilityMatrix m(n, names_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const json& row = (*it)[i];
      if (!row.is_array() || row.size() != names_.size()) {
        throw ProtocolError("blackbox", "row " + std::to_string(i) + " does not have " +
                                            std::to_string(names_.size()) + " entries");
      }
      for (std::size_t j = 0; j < names_.size(); ++j) {
        if (!row[j].is_number()) {
          throw ProtocolError("blackbox", "row " + std::to_string(i) + " has a non-numeric entry");
        }
        m.row(i)[j] = row[j].get<double>();
      }
    }
    return m;
  }

  std::vector<std::string> argv_;
  std::vector<std::string> names_;
  ExternalOptions options_;
  std::unique_ptr<detail::Subprocess> proc_;
  std::int64_t next_id_ = 1;
  FifoLock lock_;
};

}  // namespace

ClassifierHandle make_in_process(BaselineModel model, Preprocessor pre) {
  return ClassifierHandle(std::make_shared<InProcessClassifier>(std::move(model), std::move(pre)),
                          HandleKind::kInProcess);
}

ClassifierHandle make_function_classifier(std::vector<std::string> class_names, RowFunction fn) {
  return ClassifierHandle(
      std::make_shared<FunctionClassifier>(std::move(class_names), std::move(fn)),
      HandleKind::kInProcess);
}

std::vector<std::string> split_command_line(std::string_view command) {
  std::vector<std::string> argv;
  std::string current;
  bool have = false;
  char quote = 0;
  for (std::size_t i = 0; i < command.size(); ++i) {
    const char c = command[i];
    if (quote) {
      if (c == quote) {
        quote = 0;
      } else if (c == '\\' && quote == '"' && i + 1 < command.size()) {
        current.push_back(command[++i]);
      } else {
        current.push_back(c);
      }
    } else if (c == '\'' || c == '"') {
      quote = c;
      have = true;
    } else if (c == '\\' && i + 1 < command.size()) {
      current.push_back(command[++i]);
      have = true;
    } else if (c == ' ' || c == '\t' || c == '\n') {
      if (have) argv.push_back(std::move(current));
      current.clear();
      have = false;
    } else {
      current.push_back(c);
      have = true;
    }
  }
  if (quote) throw UsageError("blackbox", "unterminated quote in adapter command");
  if (have) argv.push_back(std::move(current));
  return argv;
}

ClassifierHandle open_external(const std::string& command,
                               std::vector<std::string> expected_classes,
                               const ExternalOptions& options) {
  auto argv = split_command_line(command);
  if (argv.empty()) throw UsageError("blackbox", "empty adapter command");
  if (expected_classes.empty()) throw UsageError("blackbox", "expected class list is empty");
  return ClassifierHandle(std::make_shared<ExternalClassifier>(std::move(argv),
                                                               std::move(expected_classes), options),
                          HandleKind::kExternal);
}

}  // namespace limelight
