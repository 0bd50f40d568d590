#pragma once

// Tweet preprocessing: tokenization, stopword/pronoun removal, stemming.

#include <functional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace limelight {

using Tokens = std::vector<std::string>;

// Splits a tweet into lowercase tokens.
//
//  * whitespace and punctuation separate tokens; apostrophes inside a word
//    are dropped ("don't" -> "dont")
//  * "#tag" stays one token, '#' included
//  * chunks starting with '@' (mentions) and URLs (http://, https://, www.)
//    are dropped whole
//  * HTML character references (&amp;, &#8220;) act as separators
//  * bytes >= 0x80 are word characters, so UTF-8 letters survive intact;
//    only ASCII is case-folded
Tokens tokenize(std::string_view text);

// Whitespace split without any normalization. Used to build the feature
// space when explaining external classifiers that read raw text.
Tokens split_whitespace(std::string_view text);

// A set of words to drop. Hashtags are never dropped.
class StopList {
 public:
  StopList() = default;
  explicit StopList(std::unordered_set<std::string> words)
      : words_(std::move(words)) {}

  // The bundled English stopword list plus the pronoun supplement.
  static const StopList& bundled();

  // One word per line; blank lines and lines starting with '#' are skipped.
  static StopList parse(std::string_view text);

  bool contains(std::string_view token) const;
  std::size_t size() const { return words_.size(); }

  void merge(const StopList& other);

 private:
  std::unordered_set<std::string> words_;
};

// Raw contents of the bundled data files.
std::string_view bundled_stopwords_text();
std::string_view bundled_pronouns_text();

Tokens remove_stop_and_pronouns(const Tokens& tokens,
                                const StopList& stop = StopList::bundled());

// Porter stemmer (the reference ANSI C release, including its two
// departures from the 1980 description: "bli" -> "ble" and "logi" -> "log").
// Hashtags, tokens of length <= 2 and tokens containing anything other than
// ASCII lowercase letters are returned unchanged.
std::string stem(std::string_view token);

using Lemmatizer = std::function<std::string(std::string_view)>;

// Full preprocessing pipeline:
//   tokenize -> stop/pronoun removal -> lemmatize -> stem -> stop removal.
// Stemming is repeated to a fixed point and the stop filter runs again after
// it, which makes the pipeline idempotent on its own output.
class Preprocessor {
 public:
  Preprocessor();
  Preprocessor(StopList stop, Lemmatizer lemmatizer);

  Tokens operator()(std::string_view text) const;

  const StopList& stop_list() const { return stop_; }

 private:
  StopList stop_;
  Lemmatizer lemmatizer_;
};

std::string join_tokens(const Tokens& tokens);

}  // namespace limelight
