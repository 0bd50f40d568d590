#pragma once

// Behavior shared by the stub adapter and the tests that drive it, so both
// sides agree on what a given request should produce.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stub {

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Deterministic normalized row per text.
inline std::array<double, 3> hash_row(std::string_view text) {
  const std::uint64_t h = fnv1a(text);
  std::array<double, 3> raw{};
  double sum = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    raw[c] = 1.0 + static_cast<double>((h >> (c * 16)) & 0xFFFF);
    sum += raw[c];
  }
  for (double& v : raw) v /= sum;
  return raw;
}

// Keyword scorer: one point per occurrence of a class keyword (substring
// match on whitespace tokens), softmax of the points.
inline std::array<double, 3> keyword_row(std::string_view text) {
  static const std::array<std::vector<std::string_view>, 3> kKeywords = {
      std::vector<std::string_view>{"vermin", "subhuman", "exterminate", "parasites", "scum"},
      std::vector<std::string_view>{"stupid", "idiot", "moron", "loser", "trash"},
      std::vector<std::string_view>{"sunshine", "coffee", "weekend", "music", "puppy"}};
  std::array<double, 3> logits{};
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(' ', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view tok = text.substr(start, end - start);
    for (std::size_t c = 0; c < 3; ++c) {
      for (auto k : kKeywords[c]) {
        if (tok == k) logits[c] += 2.0;
      }
    }
    start = end + 1;
  }
  double mx = logits[0];
  for (double v : logits) mx = v > mx ? v : mx;
  double sum = 0.0;
  for (double& v : logits) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : logits) v /= sum;
  return logits;
}

enum class Variant {
  kValid,
  kBadNorm,
  kNegative,
  kMissingRow,
  kShortRow,
  kNonNumeric,
  kWrongId,
  kMalformed,
  kError,
};
inline constexpr int kNumVariants = 9;

// Which response the fuzz mode sends for a request carrying `texts`.
inline Variant fuzz_variant(const std::vector<std::string>& texts) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& t : texts) h = fnv1a(t, h) * 31 + 7;
  return static_cast<Variant>(h % kNumVariants);
}

}  // namespace stub
