#include <doctest.h>

#include <string>
#include <utility>
#include <vector>

#include "limelight/text.hpp"

using namespace limelight;

TEST_CASE("tokenize keeps hashtags and drops mentions and urls") {
  CHECK(tokenize("I LOVE #Cats!") == Tokens{"i", "love", "#cats"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("@user check http://x.co now") == Tokens{"check", "now"});
  CHECK(tokenize("RT @a: www.example.com/x wow") == Tokens{"rt", "wow"});
}

TEST_CASE("stop words and pronouns are removed in order") {
  CHECK(remove_stop_and_pronouns({"you", "are", "trash"}) == Tokens{"trash"});
  CHECK(remove_stop_and_pronouns({}).empty());
  CHECK(remove_stop_and_pronouns({"#blessed", "and", "happy"}) == Tokens{"#blessed", "happy"});
  CHECK(StopList::bundled().contains("she"));
  CHECK_FALSE(StopList::bundled().contains("#and"));
}

TEST_CASE("extra stop words merge with the bundled list") {
  StopList s = StopList::parse("# comment\nfoo\n\nbar\n");
  CHECK(s.size() == 2);
  s.merge(StopList::bundled());
  CHECK(s.contains("foo"));
  CHECK(s.contains("the"));
}

TEST_CASE("porter reference vectors") {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"caresses", "caress"},   {"ponies", "poni"},       {"ties", "ti"},
      {"caress", "caress"},     {"cats", "cat"},          {"feed", "feed"},
      {"agreed", "agre"},       {"plastered", "plaster"}, {"motoring", "motor"},
      {"sing", "sing"},         {"conflated", "conflat"}, {"troubled", "troubl"},
      {"sized", "size"},        {"hopping", "hop"},       {"tanned", "tan"},
      {"falling", "fall"},      {"hissing", "hiss"},      {"fizzed", "fizz"},
      {"failing", "fail"},      {"filing", "file"},       {"happy", "happi"},
      {"sky", "sky"},           {"relational", "relat"},  {"conditional", "condit"},
      {"rational", "ration"},   {"digitizer", "digit"},   {"vietnamization", "vietnam"},
      {"predication", "predic"}, {"operator", "oper"},    {"feudalism", "feudal"},
      {"decisiveness", "decis"}, {"hopefulness", "hope"}, {"callousness", "callous"},
      {"formaliti", "formal"},  {"sensitiviti", "sensit"}, {"triplicate", "triplic"},
      {"formative", "form"},    {"formalize", "formal"},  {"electriciti", "electr"},
      {"electrical", "electr"}, {"hopeful", "hope"},      {"goodness", "good"},
      {"revival", "reviv"},     {"allowance", "allow"},   {"inference", "infer"},
      {"airliner", "airlin"},   {"gyroscopic", "gyroscop"}, {"adjustable", "adjust"},
      {"defensible", "defens"}, {"irritant", "irrit"},    {"replacement", "replac"},
      {"adjustment", "adjust"}, {"dependent", "depend"},  {"adoption", "adopt"},
      {"communism", "commun"},  {"activate", "activ"},    {"effective", "effect"},
      {"bowdlerize", "bowdler"}, {"probate", "probat"},   {"rate", "rate"},
      {"cease", "ceas"},        {"controll", "control"},  {"roll", "roll"},
      {"run", "run"},           {"generalizations", "gener"}};
  for (const auto& [in, out] : cases) {
    CAPTURE(in);
    CHECK(stem(in) == out);
  }
}

TEST_CASE("stem leaves hashtags short tokens and non-ascii tokens alone") {
  CHECK(stem("#running") == "#running");
  CHECK(stem("is") == "is");
  CHECK(stem("caf\xC3\xA9s") == "caf\xC3\xA9s");
}

TEST_CASE("pipeline stems to a fixed point") {
  const Preprocessor pre;
  CHECK(pre("coffee") == Tokens{"coff"});
  CHECK(pre("today") == Tokens{"todai"});
  CHECK(pre(join_tokens(pre("coffee today"))) == pre("coffee today"));
  CHECK(pre("You are TRASH #MAGA") == Tokens{"trash", "#maga"});
}

TEST_CASE("split_whitespace") {
  CHECK(split_whitespace("  a\tb \n c ") == Tokens{"a", "b", "c"});
  CHECK(split_whitespace("").empty());
}
