#pragma once

// Seeded three-class keyword corpus for desk-scale pipeline runs.
//
// Every document draws two or three keywords from its own class list, three
// to six filler words shared by all classes, and, with small probabilities,
// a stopword phrase, a hashtag of one of its keywords, a mention, a URL, an
// "RT" prefix, and one keyword borrowed from another class. Words are
// shuffled. Documents of all classes are interleaved in a seeded order and
// numbered from 1.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "limelight/corpus.hpp"

namespace limelight {

struct SynthConfig {
  std::size_t per_class = 1000;
  std::uint64_t seed = 42;
};

std::vector<RawRecord> generate_keyword_corpus(const SynthConfig& config = {});

// "id,class,tweet" with the class as its integer code.
std::string records_to_csv(const std::vector<RawRecord>& records);
void write_records_csv(const std::filesystem::path& path, const std::vector<RawRecord>& records);

}  // namespace limelight
