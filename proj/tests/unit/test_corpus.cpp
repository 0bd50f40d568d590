#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "limelight/corpus.hpp"
#include "limelight/errors.hpp"

using namespace limelight;

namespace {

std::vector<LabeledDocument> docs_with_counts(std::array<std::size_t, 3> counts) {
  std::vector<LabeledDocument> docs;
  std::int64_t id = 1;
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < counts[c]; ++i) {
      LabeledDocument d;
      d.id = id++;
      d.label = label_from_index(c);
      d.tokens = {"t"};
      docs.push_back(d);
    }
  }
  return docs;
}

}  // namespace

TEST_CASE("three-row csv maps labels 0 1 2 in order") {
  const auto r = load_corpus_text(
      ",count,hate_speech,offensive_language,neither,class,tweet\n"
      "0,3,3,0,0,0,\"first, tweet\"\n"
      "1,3,0,3,0,1,second tweet\n"
      "2,3,0,0,3,2,\"third \"\"quoted\"\" tweet\"\n");
  REQUIRE(r.records.size() == 3);
  CHECK(r.records[0].label == ClassLabel::kHate);
  CHECK(r.records[1].label == ClassLabel::kOffensive);
  CHECK(r.records[2].label == ClassLabel::kNone);
  CHECK(r.records[0].text == "first, tweet");
  CHECK(r.records[2].text == "third \"quoted\" tweet");
}

TEST_CASE("header-only csv gives no records and a warning") {
  const auto r = load_corpus_text("class,tweet\n");
  CHECK(r.records.empty());
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("unknown label aborts") {
  CHECK_THROWS_AS(load_corpus_text("class,tweet\n7,hello\n"), DataError);
}

TEST_CASE("malformed rows are skipped unless strict") {
  const std::string csv = "class,tweet\n0,ok\n1\n2,fine\n";
  const auto r = load_corpus_text(csv);
  CHECK(r.records.size() == 2);
  CHECK(r.skipped_rows == 1);
  CsvFormat strict;
  strict.strict = true;
  CHECK_THROWS_AS(load_corpus_text(csv, strict), DataError);
}

TEST_CASE("label map override") {
  CsvFormat f;
  f.label_map = parse_label_map("0=none,1=offensive,2=hate");
  const auto r = load_corpus_text("class,tweet\n0,a b\n", f);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].label == ClassLabel::kNone);
}

TEST_CASE("missing file is a data error") {
  CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.csv"), DataError);
}

TEST_CASE("split sizes floor then assign remainders train first") {
  CHECK(split_sizes(10, {}) == std::array<std::size_t, 3>{7, 2, 1});
  CHECK(split_sizes(4182, {}) == std::array<std::size_t, 3>{2928, 836, 418});
  CHECK(split_sizes(9, {}) == std::array<std::size_t, 3>{7, 2, 0});
}

TEST_CASE("full-size corpus split") {
  const auto docs = docs_with_counts({1430, 19190, 4182});
  REQUIRE(docs.size() == 24802);
  const auto s = stratified_split(docs, {}, 42);
  CHECK(s.train.size() == 17362);
  CHECK(s.test.size() == 4960);
  CHECK(s.validation.size() == 2480);
}

TEST_CASE("split is deterministic and disjoint") {
  const auto docs = docs_with_counts({30, 40, 20});
  const auto a = stratified_split(docs, {}, 7);
  const auto b = stratified_split(docs, {}, 7);
  CHECK(a.train == b.train);
  CHECK(a.test == b.test);
  std::set<std::int64_t> ids;
  for (const auto* part : {&a.train, &a.test, &a.validation})
    for (const auto& d : *part) CHECK(ids.insert(d.id).second);
  CHECK(ids.size() == docs.size());
}

TEST_CASE("class too small to split names the class") {
  const auto docs = docs_with_counts({2, 10, 10});
  try {
    stratified_split(docs, {}, 1);
    FAIL("expected an error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("Hate") != std::string::npos);
  }
}

TEST_CASE("ratios must sum to one") {
  CHECK_THROWS(stratified_split(docs_with_counts({5, 5, 5}), {0.5, 0.2, 0.2}, 1));
}

TEST_CASE("jsonl documents round trip") {
  std::vector<LabeledDocument> docs = preprocess({{1, "I LOVE #Cats!", ClassLabel::kNone},
                                                  {2, "you are trash", ClassLabel::kOffensive}});
  CHECK(docs[0].tokens == Tokens{"love", "#cats"});
  std::stringstream ss;
  write_documents_jsonl(ss, docs);
  CHECK(read_documents_jsonl(ss) == docs);
}

TEST_CASE("per-class sample") {
  const auto docs = docs_with_counts({60, 60, 10});
  std::vector<std::string> warnings;
  const auto s = sample_per_class(docs, 50, 42, &warnings);
  CHECK(s.size() == 110);
  CHECK(warnings.size() == 1);
  CHECK(sample_per_class(docs, 50, 42) == s);
}

TEST_CASE("vocabulary indices are dense") {
  const auto v = Vocabulary::build({{"b", "a", "b"}, {"c", "a"}});
  CHECK(v.size() == 3);
  std::set<std::size_t> idx;
  for (const auto& t : v.tokens()) idx.insert(*v.index(t));
  CHECK(idx == std::set<std::size_t>{0, 1, 2});
  CHECK(v.document_frequency(*v.index("a")) == 2);
  CHECK_FALSE(v.index("zzz").has_value());
}
