#include "limelight/text.hpp"

#include <array>
#include <cstring>

namespace limelight {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

// Multi-byte punctuation commonly found in tweets: curly quotes, ellipsis,
// en/em dash.
constexpr std::array<std::string_view, 7> kUnicodePunct = {
    "\xE2\x80\x98", "\xE2\x80\x99", "\xE2\x80\x9C", "\xE2\x80\x9D",
    "\xE2\x80\xA6", "\xE2\x80\x93", "\xE2\x80\x94"};

// Byte length of the punctuation sequence starting at s[i], or 0 when s[i]
// starts a word character.
std::size_t punct_len(std::string_view s, std::size_t i) {
  const unsigned char c = static_cast<unsigned char>(s[i]);
  if (c < 0x80) {
    if (is_ascii_alnum(s[i]) || s[i] == '_') return 0;
    return 1;
  }
  for (std::string_view p : kUnicodePunct) {
    if (s.substr(i, p.size()) == p) return p.size();
  }
  return 0;
}

bool is_apostrophe(std::string_view s, std::size_t i, std::size_t len) {
  if (len == 1) return s[i] == '\'';
  return len == 3 && (s.substr(i, 3) == kUnicodePunct[0] ||
                      s.substr(i, 3) == kUnicodePunct[1]);
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (ascii_lower(s[i]) != prefix[i]) return false;
  }
  return true;
}

// Replaces HTML character references with a space.
std::string strip_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '&') {
      std::size_t j = i + 1;
      if (j < text.size() && text[j] == '#') ++j;
      const std::size_t body = j;
      while (j < text.size() && j - body < 10 && is_ascii_alnum(text[j])) ++j;
      if (j > body && j < text.size() && text[j] == ';') {
        out.push_back(' ');
        i = j + 1;
        continue;
      }
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

void tokenize_chunk(std::string_view chunk, Tokens& out) {
  std::size_t p = 0;
  while (p < chunk.size() && chunk[p] != '#' && chunk[p] != '@') {
    const std::size_t len = punct_len(chunk, p);
    if (len == 0) break;
    p += len;
  }
  chunk.remove_prefix(p);
  if (chunk.empty() || chunk.front() == '@') return;
  if (starts_with_ci(chunk, "http://") || starts_with_ci(chunk, "https://") ||
      starts_with_ci(chunk, "www.")) {
    return;
  }

  std::string current;
  bool hashtag = false;
  auto flush = [&] {
    if (!current.empty() && current != "#") out.push_back(current);
    current.clear();
    hashtag = false;
  };

  std::size_t i = 0;
  while (i < chunk.size()) {
    const std::size_t len = punct_len(chunk, i);
    if (len == 0) {
      current.push_back(ascii_lower(chunk[i]));
      ++i;
      continue;
    }
    const bool next_is_word = i + len < chunk.size() && punct_len(chunk, i + len) == 0;
    if (chunk[i] == '#') {
      flush();
      if (next_is_word) {
        current = "#";
        hashtag = true;
      }
    } else if (is_apostrophe(chunk, i, len) && !hashtag && !current.empty() &&
               next_is_word) {
      // joined contraction
    } else {
      flush();
    }
    i += len;
  }
  flush();
}

}  // namespace

Tokens tokenize(std::string_view text) {
  const std::string cleaned = strip_entities(text);
  const std::string_view s(cleaned);
  Tokens out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) tokenize_chunk(s.substr(i, j - i), out);
    i = j;
  }
  return out;
}

Tokens split_whitespace(std::string_view text) {
  Tokens out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

StopList StopList::parse(std::string_view text) {
  std::unordered_set<std::string> words;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t j = text.find('\n', i);
    if (j == std::string_view::npos) j = text.size();
    std::string_view line = text.substr(i, j - i);
    while (!line.empty() && is_space(line.back())) line.remove_suffix(1);
    while (!line.empty() && is_space(line.front())) line.remove_prefix(1);
    if (!line.empty() && line.front() != '#') words.emplace(line);
    i = j + 1;
  }
  return StopList(std::move(words));
}

const StopList& StopList::bundled() {
  static const StopList list = [] {
    StopList l = parse(bundled_stopwords_text());
    l.merge(parse(bundled_pronouns_text()));
    return l;
  }();
  return list;
}

bool StopList::contains(std::string_view token) const {
  if (!token.empty() && token.front() == '#') return false;
  return words_.find(std::string(token)) != words_.end();
}

void StopList::merge(const StopList& other) {
  words_.insert(other.words_.begin(), other.words_.end());
}

Tokens remove_stop_and_pronouns(const Tokens& tokens, const StopList& stop) {
  Tokens out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!stop.contains(t)) out.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Porter stemmer

namespace {

class PorterStemmer {
 public:
  explicit PorterStemmer(std::string_view word) : b_(word), k_(static_cast<int>(word.size()) - 1) {}

  std::string run() {
    if (k_ <= 1) return b_;
    step1ab();
    if (k_ > 0) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    return b_.substr(0, static_cast<std::size_t>(k_ + 1));
  }

 private:
  bool cons(int i) const {
    switch (b_[static_cast<std::size_t>(i)]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b[0..j].
  int m() const {
    int n = 0;
    int i = 0;
    while (true) {
      if (i > j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i > j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i > j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i) {
      if (!cons(i)) return true;
    }
    return false;
  }

  bool double_c(int j) const {
    if (j < 1) return false;
    if (b_[static_cast<std::size_t>(j)] != b_[static_cast<std::size_t>(j - 1)]) return false;
    return cons(j);
  }

  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char ch = b_[static_cast<std::size_t>(i)];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool ends(std::string_view s) {
    const int len = static_cast<int>(s.size());
    if (len > k_ + 1) return false;
    if (std::string_view(b_).substr(static_cast<std::size_t>(k_ + 1 - len),
                                    static_cast<std::size_t>(len)) != s) {
      return false;
    }
    j_ = k_ - len;
    return true;
  }

  void set_to(std::string_view s) {
    b_.resize(static_cast<std::size_t>(j_ + 1));
    b_.append(s);
    k_ = j_ + static_cast<int>(s.size());
  }

  void r(std::string_view s) {
    if (m() > 0) set_to(s);
  }

  void truncate_to_k() { b_.resize(static_cast<std::size_t>(k_ + 1)); }

  char at(int i) const { return b_[static_cast<std::size_t>(i)]; }

  void step1ab() {
    if (at(k_) == 's') {
      if (ends("sses")) {
        k_ -= 2;
      } else if (ends("ies")) {
        set_to("i");
      } else if (at(k_ - 1) != 's') {
        --k_;
      }
      truncate_to_k();
    }
    if (ends("eed")) {
      if (m() > 0) --k_;
      truncate_to_k();
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      k_ = j_;
      truncate_to_k();
      if (ends("at")) {
        set_to("ate");
      } else if (ends("bl")) {
        set_to("ble");
      } else if (ends("iz")) {
        set_to("ize");
      } else if (double_c(k_)) {
        --k_;
        const char ch = at(k_);
        if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
        truncate_to_k();
      } else if (m() == 1 && cvc(k_)) {
        set_to("e");
      }
    }
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[static_cast<std::size_t>(k_)] = 'i';
  }

  struct Rule {
    std::string_view suffix;
    std::string_view replacement;
  };

  template <std::size_t N>
  void apply_first(const std::array<Rule, N>& rules) {
    for (const Rule& rule : rules) {
      if (ends(rule.suffix)) {
        r(rule.replacement);
        return;
      }
    }
  }

  void step2() {
    if (k_ < 1) return;
    switch (at(k_ - 1)) {
      case 'a':
        apply_first(std::array<Rule, 2>{{{"ational", "ate"}, {"tional", "tion"}}});
        break;
      case 'c':
        apply_first(std::array<Rule, 2>{{{"enci", "ence"}, {"anci", "ance"}}});
        break;
      case 'e':
        apply_first(std::array<Rule, 1>{{{"izer", "ize"}}});
        break;
      case 'l':
        apply_first(std::array<Rule, 5>{{{"bli", "ble"},
                                         {"alli", "al"},
                                         {"entli", "ent"},
                                         {"eli", "e"},
                                         {"ousli", "ous"}}});
        break;
      case 'o':
        apply_first(std::array<Rule, 3>{
            {{"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}}});
        break;
      case 's':
        apply_first(std::array<Rule, 4>{{{"alism", "al"},
                                         {"iveness", "ive"},
                                         {"fulness", "ful"},
                                         {"ousness", "ous"}}});
        break;
      case 't':
        apply_first(std::array<Rule, 3>{
            {{"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}}});
        break;
      case 'g':
        apply_first(std::array<Rule, 1>{{{"logi", "log"}}});
        break;
      default:
        break;
    }
  }

  void step3() {
    switch (at(k_)) {
      case 'e':
        apply_first(std::array<Rule, 3>{
            {{"icate", "ic"}, {"ative", ""}, {"alize", "al"}}});
        break;
      case 'i':
        apply_first(std::array<Rule, 1>{{{"iciti", "ic"}}});
        break;
      case 'l':
        apply_first(std::array<Rule, 2>{{{"ical", "ic"}, {"ful", ""}}});
        break;
      case 's':
        apply_first(std::array<Rule, 1>{{{"ness", ""}}});
        break;
      default:
        break;
    }
  }

  bool ends_any(std::initializer_list<std::string_view> suffixes) {
    for (std::string_view s : suffixes) {
      if (ends(s)) return true;
    }
    return false;
  }

  void step4() {
    if (k_ < 1) return;
    bool matched = false;
    switch (at(k_ - 1)) {
      case 'a': matched = ends("al"); break;
      case 'c': matched = ends_any({"ance", "ence"}); break;
      case 'e': matched = ends("er"); break;
      case 'i': matched = ends("ic"); break;
      case 'l': matched = ends_any({"able", "ible"}); break;
      case 'n': matched = ends_any({"ant", "ement", "ment", "ent"}); break;
      case 'o':
        if (ends("ion") && j_ >= 0 && (at(j_) == 's' || at(j_) == 't')) {
          matched = true;
        } else {
          matched = ends("ou");
        }
        break;
      case 's': matched = ends("ism"); break;
      case 't': matched = ends_any({"ate", "iti"}); break;
      case 'u': matched = ends("ous"); break;
      case 'v': matched = ends("ive"); break;
      case 'z': matched = ends("ize"); break;
      default: break;
    }
    if (matched && m() > 1) {
      k_ = j_;
      truncate_to_k();
    }
  }

  void step5() {
    j_ = k_;
    if (at(k_) == 'e') {
      const int a = m();
      if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
      truncate_to_k();
    }
    if (at(k_) == 'l' && double_c(k_) && m() > 1) {
      --k_;
      truncate_to_k();
    }
  }

  std::string b_;
  int k_;
  int j_ = 0;
};

bool all_lower_ascii(std::string_view s) {
  for (char c : s) {
    if (c < 'a' || c > 'z') return false;
  }
  return true;
}

}  // namespace

std::string stem(std::string_view token) {
  if (token.size() <= 2 || !all_lower_ascii(token)) return std::string(token);
  return PorterStemmer(token).run();
}

// ---------------------------------------------------------------------------

Preprocessor::Preprocessor() : Preprocessor(StopList::bundled(), nullptr) {}

Preprocessor::Preprocessor(StopList stop, Lemmatizer lemmatizer)
    : stop_(std::move(stop)), lemmatizer_(std::move(lemmatizer)) {}

Tokens Preprocessor::operator()(std::string_view text) const {
  Tokens tokens = remove_stop_and_pronouns(tokenize(text), stop_);
  for (auto& t : tokens) {
    if (lemmatizer_) t = lemmatizer_(t);
    for (int round = 0; round < 16; ++round) {
      std::string next = stem(t);
      if (next == t) break;
      t = std::move(next);
    }
  }
  return remove_stop_and_pronouns(tokens, stop_);
}

std::string join_tokens(const Tokens& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace limelight
