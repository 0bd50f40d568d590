#pragma once

// Labeled tweet corpora: CSV ingestion, preprocessing, stratified splits.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "limelight/labels.hpp"
#include "limelight/text.hpp"

namespace limelight {

// RFC 4180 CSV: quoted fields, doubled quotes, embedded newlines and CRLF.
// Returns one vector of fields per record. `record_lines` (optional) receives
// the 1-based physical line on which each record starts.
std::vector<std::vector<std::string>> parse_csv(
    std::string_view text, std::vector<std::size_t>* record_lines = nullptr);

struct RawRecord {
  std::int64_t id = 0;
  std::string text;
  ClassLabel label = ClassLabel::kNone;
};

// Column layout of an input CSV. Columns are header names, or 0-based
// indices written as decimal strings.
struct CsvFormat {
  std::string label_column = "class";
  std::string text_column = "tweet";
  // Empty: use an "id" column if present; else column 0 when its header is
  // blank (the default public-corpus layout); else the 1-based data row number.
  std::string id_column;
  // Raw integer class value -> label.
  std::array<ClassLabel, kNumClasses> label_map = {
      ClassLabel::kHate, ClassLabel::kOffensive, ClassLabel::kNone};
  // Abort on the first malformed row instead of skipping it.
  bool strict = false;
};

struct LoadResult {
  std::vector<RawRecord> records;
  std::vector<std::string> warnings;
  std::size_t skipped_rows = 0;
};

// Throws DataError on a missing file, a missing column, an out-of-range
// label value, or (strict mode) any malformed row.
LoadResult load_corpus(const std::filesystem::path& path,
                       const CsvFormat& format = {});
LoadResult load_corpus_text(std::string_view csv_text,
                            const CsvFormat& format = {});

// Parses "0=hate,1=offensive,2=none".
std::array<ClassLabel, kNumClasses> parse_label_map(std::string_view text);

struct LabeledDocument {
  std::int64_t id = 0;
  ClassLabel label = ClassLabel::kNone;
  std::string raw_text;
  Tokens tokens;

  bool operator==(const LabeledDocument&) const = default;
};

std::vector<LabeledDocument> preprocess(const std::vector<RawRecord>& records,
                                        const Preprocessor& pre = Preprocessor());

// JSON Lines: {"id", "label", "raw_text", "tokens"} per line.
void write_documents_jsonl(std::ostream& out, const std::vector<LabeledDocument>& docs);
void write_documents_jsonl(const std::filesystem::path& path,
                           const std::vector<LabeledDocument>& docs);
std::vector<LabeledDocument> read_documents_jsonl(std::istream& in);
std::vector<LabeledDocument> read_documents_jsonl(const std::filesystem::path& path);

struct SplitRatios {
  double train = 0.7;
  double test = 0.2;
  double validation = 0.1;
};

struct DatasetSplit {
  std::vector<LabeledDocument> train;
  std::vector<LabeledDocument> test;
  std::vector<LabeledDocument> validation;
  std::uint64_t seed = 0;
};

// Per-class split sizes: floor of each share, then the remainder handed out
// one at a time train -> test -> validation.
std::array<std::size_t, 3> split_sizes(std::size_t count, const SplitRatios& ratios);

// Stratified split. Each class is shuffled with the seed and cut into
// contiguous train/test/validation runs of split_sizes(). Classes with no
// documents are skipped; a class with 1 or 2 documents is an error.
DatasetSplit stratified_split(const std::vector<LabeledDocument>& docs,
                              const SplitRatios& ratios, std::uint64_t seed);

// Seeded sample of up to `per_class` documents from each class.
std::vector<LabeledDocument> sample_per_class(const std::vector<LabeledDocument>& docs,
                                              std::size_t per_class, std::uint64_t seed,
                                              std::vector<std::string>* warnings = nullptr);

// Token -> dense index, with document frequencies. Indices follow
// lexicographic token order so a vocabulary is independent of document order.
class Vocabulary {
 public:
  Vocabulary() = default;

  static Vocabulary build(const std::vector<Tokens>& documents);
  // Restores a vocabulary from tokens listed in index order.
  static Vocabulary from_tokens(std::vector<std::string> tokens,
                                std::vector<std::size_t> document_frequency = {});

  std::size_t size() const { return tokens_.size(); }
  std::optional<std::size_t> index(std::string_view token) const;
  const std::string& token(std::size_t index) const { return tokens_[index]; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t document_frequency(std::size_t index) const { return df_[index]; }
  std::size_t num_documents() const { return num_documents_; }

 private:
  std::vector<std::string> tokens_;
  std::vector<std::size_t> df_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t num_documents_ = 0;
};

}  // namespace limelight
