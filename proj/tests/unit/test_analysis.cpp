#include <doctest.h>

#include "fixtures.hpp"
#include "limelight/analysis.hpp"
#include "limelight/errors.hpp"

using namespace limelight;

namespace {

ProbabilityMatrix rows(std::initializer_list<std::array<double, 3>> r) {
  ProbabilityMatrix m(r.size(), 3);
  std::size_t i = 0;
  for (const auto& row : r) {
    for (std::size_t c = 0; c < 3; ++c) m.row(i)[c] = row[c];
    ++i;
  }
  return m;
}

LabeledDocument doc(ClassLabel l, Tokens t) {
  LabeledDocument d;
  d.label = l;
  d.tokens = std::move(t);
  return d;
}

}  // namespace

TEST_CASE("tie detection") {
  const std::array<double, 3> tie = {0.4, 0.4, 0.2}, low_tie = {0.6, 0.2, 0.2}, near = {0.4, 0.4 + 1e-12, 0.2 - 1e-12};
  CHECK(is_tie(tie));
  CHECK_FALSE(is_tie(low_tie));
  CHECK_FALSE(is_tie(near));
  CHECK(is_tie(near, 1e-9));
}

TEST_CASE("confusion counts and ties") {
  const std::vector<std::size_t> truth = {0, 1, 2, 2};
  const std::vector<std::size_t> pred = {0, 1, 2, 0};
  const auto p = rows({{0.8, 0.1, 0.1}, {0.1, 0.8, 0.1}, {0.1, 0.1, 0.8}, {0.4, 0.4, 0.2}});
  const auto m = confusion(truth, pred, p);
  CHECK(m.counts[0][0] == 1);
  CHECK(m.counts[2][2] == 1);
  CHECK(m.tie_count() == 1);
  CHECK(m.ties[2] == 1);
  CHECK(m.total() == 4);
  CHECK(m == confusion_from_probabilities(truth, p));
  const std::vector<std::size_t> short_pred = {0};
  CHECK_THROWS_AS(confusion(truth, short_pred, p), DataError);
}

TEST_CASE("all correct gives a diagonal and zero rates") {
  const std::vector<std::size_t> t = {0, 1, 2, 1};
  const auto m = confusion(t, t, ProbabilityMatrix());
  CHECK(m.correct() == 4);
  const auto b = error_breakdown(m);
  CHECK(b.overall_error == 0.0);
  CHECK(b.false_positive_rate == 0.0);
  CHECK(b.false_negative_rate == 0.0);
}

TEST_CASE("150-document error analysis") {
  const auto a = fixtures::analysis_150();
  const auto m = confusion(a.truth, a.predicted, a.probabilities);
  CHECK(m.counts[0] == std::array<std::size_t, 3>{39, 9, 2});
  CHECK(m.counts[1] == std::array<std::size_t, 3>{11, 37, 1});
  CHECK(m.ties[1] == 1);
  const auto b = error_breakdown(m);
  CHECK(b.rows[0].percent[0] == doctest::Approx(78.0));
  CHECK(b.rows[0].percent[1] == doctest::Approx(18.0));
  CHECK(b.rows[0].percent[2] == doctest::Approx(4.0));
  CHECK(b.overall_error == doctest::Approx(100.0 * 32 / 150));
  CHECK(std::abs(b.overall_error - 21.0) <= 100.0 / 150);
  CHECK(b.false_positive_rate == doctest::Approx(100.0 * 8 / 150));
  CHECK(b.false_negative_rate == doctest::Approx(16.0));
  CHECK(b.tie_rate == doctest::Approx(100.0 / 150));
  for (const auto& row : b.rows) {
    CHECK(row.percent[0] + row.percent[1] + row.percent[2] + row.tie_percent == doctest::Approx(100.0));
  }
  const std::string text = render_breakdown_text(b);
  CHECK(text.find("Hate\t78.00\t18.00\t4.00\t0.00\t50\n") != std::string::npos);
  CHECK(render_confusion_text(m).find("Offensive\t11\t37\t1\t1\t50\n") != std::string::npos);
  CHECK(render_analysis_json(m, b).find("\"confusion\"") != std::string::npos);
}

TEST_CASE("errors only on None truth are false positives") {
  ConfusionMatrix m;
  m.counts[0][0] = 5;
  m.counts[1][1] = 5;
  m.counts[2][0] = 2;
  m.counts[2][2] = 3;
  const auto b = error_breakdown(m);
  CHECK(b.false_negative_rate == 0.0);
  CHECK(b.false_positive_rate > 0.0);
  CHECK(b.rows[0].documents == 5);
}

TEST_CASE("empty truth row has zero percentages") {
  ConfusionMatrix m;
  m.counts[0][0] = 4;
  const auto b = error_breakdown(m);
  CHECK(b.rows[2].documents == 0);
  CHECK(b.rows[2].percent == std::array<double, 3>{0, 0, 0});
}

TEST_CASE("frequency tables") {
  const std::vector<LabeledDocument> docs = {doc(ClassLabel::kHate, {"bad", "bad", "sad"}),
                                             doc(ClassLabel::kNone, {"sun"})};
  const auto t = top_frequent_words(docs, ClassLabel::kHate);
  using E = std::vector<std::pair<std::string, std::size_t>>;
  CHECK(t.entries == E{{"bad", 2}, {"sad", 1}});
  CHECK(top_frequent_words(docs, ClassLabel::kHate, 1).entries == E{{"bad", 2}});
  std::vector<std::string> warnings;
  CHECK(top_frequent_words(docs, ClassLabel::kOffensive, 60, &warnings).entries.empty());
  CHECK(warnings.size() == 1);
  const std::vector<LabeledDocument> ties = {doc(ClassLabel::kNone, {"b", "a", "c", "a", "b"})};
  CHECK(top_frequent_words(ties, ClassLabel::kNone).entries == E{{"a", 2}, {"b", 2}, {"c", 1}});
  const auto csv = render_frequency_csv(t);
  CHECK(csv == "rank,token,count\n1,bad,2\n2,sad,1\n");
  const auto svg = render_frequency_svg(t);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find(">bad<") != std::string::npos);
}
