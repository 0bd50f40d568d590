#include "limelight/synth.hpp"

#include <array>
#include <fstream>
#include <numeric>
#include <string_view>

#include "limelight/errors.hpp"
#include "limelight/rng.hpp"

namespace limelight {
namespace {

using WordList = std::vector<std::string_view>;

const std::array<WordList, kNumClasses>& keywords() {
  static const std::array<WordList, kNumClasses> lists = {
      WordList{"vermin", "subhuman", "exterminate", "invaders", "savages", "deport", "inferior",
               "parasites", "filth", "mongrel", "plague", "scum"},
      WordList{"stupid", "idiot", "moron", "dumb", "loser", "pathetic", "jerk", "clown",
               "ugly", "trash", "lame", "shut"},
      WordList{"sunshine", "coffee", "weekend", "garden", "music", "birthday", "football",
               "recipe", "holiday", "puppy", "movie", "beach"},
  };
  return lists;
}

constexpr std::array<std::string_view, 16> kFiller = {
    "today", "people", "really", "think", "know",  "time",  "guy",   "got",
    "new",   "watch",  "tell",   "look",  "world", "night", "going", "said"};

constexpr std::array<std::string_view, 6> kStopPhrases = {
    "i am", "you are", "they were", "this is", "we have", "she was"};

template <typename List>
std::string_view pick(Rng& rng, const List& list) {
  return list[static_cast<std::size_t>(rng.below(list.size()))];
}

std::string make_document(Rng& rng, std::size_t cls) {
  std::vector<std::string> words;
  const auto& own = keywords()[cls];
  const auto n_keywords = rng.between(2, 3);
  for (std::int64_t i = 0; i < n_keywords; ++i) words.emplace_back(pick(rng, own));
  const auto n_filler = rng.between(3, 6);
  for (std::int64_t i = 0; i < n_filler; ++i) words.emplace_back(pick(rng, kFiller));
  if (rng.bernoulli(0.3)) words.emplace_back(pick(rng, kStopPhrases));
  if (rng.bernoulli(0.2)) words.push_back("#" + std::string(words.front()));
  if (rng.bernoulli(0.1)) {
    const std::size_t other = (cls + 1 + static_cast<std::size_t>(rng.below(kNumClasses - 1))) %
                              kNumClasses;
    words.emplace_back(pick(rng, keywords()[other]));
  }
  rng.shuffle(std::span(words));
  std::string text;
  if (rng.bernoulli(0.15)) text += "RT ";
  if (rng.bernoulli(0.3)) text += "@user" + std::to_string(rng.below(500)) + ": ";
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) text.push_back(' ');
    text += words[i];
  }
  if (rng.bernoulli(0.2)) text += " http://t.co/" + std::to_string(rng.below(100000));
  if (rng.bernoulli(0.3)) text.push_back('!');
  return text;
}

}  // namespace

std::vector<RawRecord> generate_keyword_corpus(const SynthConfig& config) {
  if (config.per_class == 0) throw UsageError("synth", "per_class must be >= 1");
  Rng rng(config.seed);
  std::vector<std::size_t> classes;
  classes.reserve(config.per_class * kNumClasses);
  for (std::size_t c = 0; c < kNumClasses; ++c) classes.insert(classes.end(), config.per_class, c);
  rng.shuffle(std::span(classes));

  std::vector<RawRecord> records;
  records.reserve(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    records.push_back(RawRecord{static_cast<std::int64_t>(i + 1), make_document(rng, classes[i]),
                                label_from_index(classes[i])});
  }
  return records;
}

std::string records_to_csv(const std::vector<RawRecord>& records) {
  std::string out = "id,class,tweet\n";
  for (const auto& r : records) {
    out += std::to_string(r.id) + "," + std::to_string(index_of(r.label)) + ",\"";
    for (char c : r.text) {
      if (c == '"') out.push_back('"');
      out.push_back(c);
    }
    out += "\"\n";
  }
  return out;
}

void write_records_csv(const std::filesystem::path& path, const std::vector<RawRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("synth", "cannot write " + path.string());
  out << records_to_csv(records);
  if (!out) throw DataError("synth", "write failed for " + path.string());
}

}  // namespace limelight
