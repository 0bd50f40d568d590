#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "limelight/blackbox.hpp"
#include "limelight/errors.hpp"
#include "stub_protocol.hpp"

using namespace limelight;

namespace {

const std::vector<std::string> kThree = {"hate", "offensive", "none"};

std::string stub_cmd(const std::string& mode) {
  return std::string("'") + LIMELIGHT_STUB_ADAPTER + "' " + mode;
}

}  // namespace

TEST_CASE("empty batch makes no call") {
  int calls = 0;
  const auto h = make_function_classifier(kThree, [&](const std::string&) {
    ++calls;
    return std::vector<double>{1, 0, 0};
  });
  const auto m = h.predict_proba_batch(std::vector<std::string>{});
  CHECK(m.rows == 0);
  CHECK(calls == 0);
  CHECK(h.kind() == HandleKind::kInProcess);
}

TEST_CASE("boundary rejects bad rows and names the row") {
  const auto h = make_function_classifier(kThree, [](const std::string& t) {
    return t == "bad" ? std::vector<double>{0.5, 0.5, 0.5} : std::vector<double>{0.2, 0.3, 0.5};
  });
  const std::vector<std::string> texts = {"ok", "bad"};
  try {
    h.predict_proba_batch(texts);
    FAIL("expected a protocol error");
  } catch (const ProtocolError& e) {
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }
}

TEST_CASE("in-process handle matches the baseline on preprocessed text") {
  BaselineModel model;
  model.class_names = kThree;
  model.tfidf = TfidfModel::fit({{"trash"}, {"sun"}});
  model.softmax = SoftmaxModel(3, model.tfidf.dimension());
  model.softmax.weights[0] = 2.0;
  const auto h = make_in_process(model);
  const std::vector<std::string> texts = {"You are TRASH!"};
  const auto m = h.predict_proba_batch(texts);
  const auto expect = model.predict_proba_tokens(Preprocessor()(texts[0]));
  for (std::size_t c = 0; c < 3; ++c) CHECK(m(0, c) == expect[c]);
}

TEST_CASE("large batches are chunked and stay in order") {
  std::size_t max_seen = 0;
  class Counting : public Classifier {
   public:
    explicit Counting(std::size_t* max) : max_(max) {}
    const std::vector<std::string>& class_names() const override { return kThree; }
    ProbabilityMatrix predict_batch(std::span<const std::string> texts) override {
      *max_ = std::max(*max_, texts.size());
      ProbabilityMatrix m(texts.size(), 3);
      for (std::size_t i = 0; i < texts.size(); ++i) {
        const auto r = stub::hash_row(texts[i]);
        for (std::size_t c = 0; c < 3; ++c) m.row(i)[c] = r[c];
      }
      return m;
    }

   private:
    std::size_t* max_;
  };
  const ClassifierHandle h(std::make_shared<Counting>(&max_seen), HandleKind::kInProcess);
  std::vector<std::string> texts;
  for (int i = 0; i < 600; ++i) texts.push_back("t" + std::to_string(i));
  const auto m = h.predict_proba_batch(texts);
  CHECK(max_seen == kMaxBatchTexts);
  REQUIRE(m.rows == 600);
  CHECK(m(599, 2) == stub::hash_row("t599")[2]);
}

TEST_CASE("external stub round trip") {
  const auto h = open_external(stub_cmd("constant"), kThree);
  CHECK(h.kind() == HandleKind::kExternal);
  const std::vector<std::string> texts = {"a", "b", "c"};
  const auto m = h.predict_proba_batch(texts);
  REQUIRE(m.rows == 3);
  for (std::size_t r = 0; r < 3; ++r) CHECK(m(r, 1) == 0.5);
}

TEST_CASE("handshake failures") {
  CHECK_THROWS_AS(open_external(stub_cmd("two-class"), kThree), ProtocolError);
  CHECK_THROWS_AS(open_external(stub_cmd("bad-version"), kThree), ProtocolError);
  CHECK_THROWS_AS(open_external(stub_cmd("dead"), kThree), ProtocolError);
  CHECK_THROWS_AS(open_external("/nonexistent/adapter", kThree), ProtocolError);
  ExternalOptions fast;
  fast.handshake_timeout = std::chrono::milliseconds(300);
  const auto start = std::chrono::steady_clock::now();
  CHECK_THROWS_AS(open_external(stub_cmd("hang-handshake"), kThree, fast), ProtocolError);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(5));
}

TEST_CASE("adversarial adapters are rejected") {
  const std::vector<std::string> texts = {"x", "y"};
  for (const char* mode : {"bad-norm", "negative", "wrong-count", "wrong-id", "malformed", "error"}) {
    CAPTURE(mode);
    const auto h = open_external(stub_cmd(mode), kThree);
    CHECK_THROWS_AS(h.predict_proba_batch(texts), ProtocolError);
  }
}

TEST_CASE("batch timeout") {
  ExternalOptions fast;
  fast.batch_timeout = std::chrono::milliseconds(300);
  const auto h = open_external(stub_cmd("slow"), kThree, fast);
  const std::vector<std::string> texts = {"x"};
  CHECK_THROWS_AS(h.predict_proba_batch(texts), ProtocolError);
}

TEST_CASE("adapter dying once is restarted with the same request id") {
  const auto dir = std::filesystem::temp_directory_path() / "limelight-unit-restart";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string state = (dir / "state").string();
  const auto h = open_external(stub_cmd("die-once '" + state + "'"), kThree);
  const std::vector<std::string> texts = {"hello"};
  const auto m = h.predict_proba_batch(texts);
  CHECK(m(0, 0) == stub::hash_row("hello")[0]);
  std::filesystem::remove_all(dir);
}

TEST_CASE("command line splitting") {
  CHECK(split_command_line("python3 'my adapter.py' --x \"a b\" c\\ d") ==
        std::vector<std::string>{"python3", "my adapter.py", "--x", "a b", "c d"});
}
