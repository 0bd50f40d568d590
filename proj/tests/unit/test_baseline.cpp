#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "limelight/baseline.hpp"
#include "limelight/errors.hpp"
#include "limelight/softmax.hpp"
#include "limelight/tfidf.hpp"

using namespace limelight;

TEST_CASE("smoothed idf") {
  CHECK(smoothed_idf(5, 5) == doctest::Approx(1.0));
  CHECK(smoothed_idf(2, 1) == doctest::Approx(1.405465).epsilon(1e-6));
  const auto m = TfidfModel::fit({{"a", "b"}, {"a"}});
  for (double v : m.idf()) CHECK(v >= 1.0);
}

TEST_CASE("tfidf rows are l2 normalized and ignore unseen tokens") {
  const auto m = TfidfModel::fit({{"a", "b"}, {"a"}});
  const auto v = m.transform({"a", "a", "b", "zzz"});
  CHECK(v.nnz() == 2);
  double n = 0.0;
  for (double x : v.values) n += x * x;
  CHECK(n == doctest::Approx(1.0));
  CHECK(m.transform({"zzz"}).nnz() == 0);
  CHECK_THROWS_AS(TfidfModel::fit({}), DataError);
}

TEST_CASE("softmax predictions") {
  SoftmaxModel m(3, 4);
  const SparseVector empty;
  for (double p : predict_proba(m, empty)) CHECK(p == doctest::Approx(1.0 / 3.0));
  m.bias = {10.0, 0.0, 0.0};
  CHECK(predict_proba(m, empty)[0] == doctest::Approx(0.99990).epsilon(1e-5));
  std::vector<double> dense(5, 0.0);
  CHECK_THROWS_AS(predict_proba(m, std::span<const double>(dense)), DataError);
}

TEST_CASE("train config contract") {
  TrainConfig c;
  c.epochs = 0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = TrainConfig();
  c.learning_rate = 0.0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = TrainConfig();
  c.l2 = -1.0;
  CHECK_THROWS_AS(c.validate(), UsageError);
}

TEST_CASE("separable toy set is learned in four epochs") {
  std::vector<LabeledDocument> docs;
  const char* words[3] = {"alpha", "beta", "gamma"};
  for (int i = 0; i < 30; ++i) {
    LabeledDocument d;
    d.id = i + 1;
    d.label = label_from_index(static_cast<std::size_t>(i % 3));
    d.tokens = {words[i % 3]};
    docs.push_back(d);
  }
  const auto out = train_baseline(docs, docs, TrainConfig());
  CHECK(evaluate(out.model, docs).accuracy >= 0.99);
  REQUIRE(out.epoch_losses.size() == 4);
  for (std::size_t e = 1; e < 4; ++e) CHECK(out.epoch_losses[e] <= out.epoch_losses[e - 1] + 1e-6);
  CHECK(out.report.epochs.size() == 4);
}

TEST_CASE("hand-computed macro metrics") {
  const std::vector<std::size_t> truth = {0, 0, 1, 1, 2, 2};
  const std::vector<std::size_t> pred = {0, 1, 1, 1, 2, 2};
  const auto m = compute_metrics(truth, pred, 3);
  CHECK(m.accuracy == doctest::Approx(5.0 / 6.0));
  CHECK(m.precision == doctest::Approx(8.0 / 9.0));
  CHECK(m.recall == doctest::Approx(5.0 / 6.0));
  CHECK(m.f1 == doctest::Approx((2.0 / 3.0 + 0.8 + 1.0) / 3.0));
  const auto perfect = compute_metrics(truth, truth, 3);
  CHECK(perfect.accuracy == 1.0);
  CHECK(perfect.f1 == 1.0);
}

TEST_CASE("class absent from truth warns") {
  std::vector<std::string> warnings;
  const std::vector<std::size_t> truth = {0, 1};
  const auto m = compute_metrics(truth, truth, 3, &warnings);
  CHECK(warnings.size() == 1);
  CHECK(m.recall == doctest::Approx(2.0 / 3.0));
  const std::vector<std::size_t> bad = {0, 5};
  CHECK_THROWS_AS(compute_metrics(truth, bad, 3), DataError);
}

TEST_CASE("report text layout") {
  const std::string text = render_report_text(fixtures::epoch_report());
  CHECK(text.find("4\t0.832\t0.814\t0.826\t0.828\n") != std::string::npos);
  std::ifstream golden(std::string(LIMELIGHT_GOLDEN_DIR) + "/epoch_report.txt", std::ios::binary);
  REQUIRE(golden);
  std::stringstream ss;
  ss << golden.rdbuf();
  CHECK(ss.str() == text);
}

TEST_CASE("model json round trip and version check") {
  std::vector<LabeledDocument> docs;
  for (int i = 0; i < 9; ++i) {
    LabeledDocument d;
    d.id = i;
    d.label = label_from_index(static_cast<std::size_t>(i % 3));
    d.tokens = {"w" + std::to_string(i % 3), "common"};
    docs.push_back(d);
  }
  const auto out = train_baseline(docs, docs, TrainConfig());
  const auto back = model_from_json(model_to_json(out.model));
  CHECK(back.softmax == out.model.softmax);
  CHECK(back.class_names == out.model.class_names);
  CHECK(back.predict_proba_tokens({"w1"}) == out.model.predict_proba_tokens({"w1"}));
  std::string j = model_to_json(out.model);
  const auto pos = j.find("\"format_version\":1");
  REQUIRE(pos != std::string::npos);
  j.replace(pos, 18, "\"format_version\":9");
  CHECK_THROWS_AS(model_from_json(j), DataError);
}
