#include "limelight/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "limelight/errors.hpp"
#include "limelight/rng.hpp"

namespace limelight {

using nlohmann::json;

std::vector<std::vector<std::string>> parse_csv(std::string_view text,
                                                std::vector<std::size_t>* record_lines) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  std::size_t record_line = 1;

  auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    // A physically blank line parses as one empty field; skip it.
    if (!(fields.size() == 1 && fields[0].empty())) {
      records.push_back(std::move(fields));
      if (record_lines) record_lines->push_back(record_line);
    }
    fields.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started && field.empty()) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      // CRLF: the '\n' ends the record
    } else if (c == '\n') {
      end_record();
      ++line;
      record_line = line;
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (!field.empty() || !fields.empty() || field_started) end_record();
  return records;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<std::size_t> resolve_column(const std::vector<std::string>& header,
                                          std::string_view column) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) == column) return i;
  }
  if (auto idx = parse_int(column); idx && *idx >= 0 &&
                                    static_cast<std::size_t>(*idx) < header.size()) {
    return static_cast<std::size_t>(*idx);
  }
  return std::nullopt;
}

}  // namespace

std::array<ClassLabel, kNumClasses> parse_label_map(std::string_view text) {
  std::array<ClassLabel, kNumClasses> map{};
  std::array<bool, kNumClasses> seen{};
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = trim(text.substr(start, end - start));
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("label-map", "expected VALUE=LABEL, got '" + std::string(item) + "'");
    }
    const auto value = parse_int(item.substr(0, eq));
    const auto label = parse_label(trim(item.substr(eq + 1)));
    if (!value || *value < 0 || *value >= static_cast<std::int64_t>(kNumClasses) || !label) {
      throw UsageError("label-map", "bad entry '" + std::string(item) + "'");
    }
    map[static_cast<std::size_t>(*value)] = *label;
    seen[static_cast<std::size_t>(*value)] = true;
    start = end + 1;
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
    throw UsageError("label-map", "label map must cover values 0, 1 and 2");
  }
  return map;
}

LoadResult load_corpus_text(std::string_view csv_text, const CsvFormat& format) {
  LoadResult result;
  std::vector<std::size_t> lines;
  const auto rows = parse_csv(csv_text, &lines);
  if (rows.empty()) {
    result.warnings.push_back("input has no header row; no records loaded");
    return result;
  }
  const auto& header = rows.front();
  const auto label_col = resolve_column(header, format.label_column);
  const auto text_col = resolve_column(header, format.text_column);
  if (!label_col) throw DataError("load", "label column '" + format.label_column + "' not found");
  if (!text_col) throw DataError("load", "text column '" + format.text_column + "' not found");

  std::optional<std::size_t> id_col;
  if (!format.id_column.empty()) {
    id_col = resolve_column(header, format.id_column);
    if (!id_col) throw DataError("load", "id column '" + format.id_column + "' not found");
  } else if (auto named = resolve_column(header, "id"); named && header[*named] == "id") {
    id_col = named;
  } else if (trim(header[0]).empty()) {
    id_col = 0;
  }

  const std::size_t needed = std::max({*label_col, *text_col, id_col.value_or(0)}) + 1;
  std::unordered_set<std::int64_t> ids;

  auto malformed = [&](std::size_t line, const std::string& why) {
    const std::string msg = "row at line " + std::to_string(line) + ": " + why;
    if (format.strict) throw DataError("load", msg);
    result.warnings.push_back(msg + " (skipped)");
    ++result.skipped_rows;
  };

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::size_t line = lines[r];
    if (row.size() < needed) {
      malformed(line, "expected at least " + std::to_string(needed) + " fields, got " +
                          std::to_string(row.size()));
      continue;
    }
    const auto raw_label = parse_int(row[*label_col]);
    if (!raw_label) {
      malformed(line, "label '" + row[*label_col] + "' is not an integer");
      continue;
    }
    if (*raw_label < 0 || *raw_label >= static_cast<std::int64_t>(kNumClasses)) {
      throw DataError("load", "unknown label value " + std::to_string(*raw_label) +
                                  " at line " + std::to_string(line));
    }
    const std::string_view text = trim(row[*text_col]);
    if (text.empty()) {
      malformed(line, "empty text");
      continue;
    }
    std::int64_t id = static_cast<std::int64_t>(r);
    if (id_col) {
      const auto parsed = parse_int(row[*id_col]);
      if (!parsed) {
        malformed(line, "id '" + row[*id_col] + "' is not an integer");
        continue;
      }
      id = *parsed;
    }
    if (!ids.insert(id).second) {
      malformed(line, "duplicate id " + std::to_string(id));
      continue;
    }
    result.records.push_back(
        RawRecord{id, std::string(text), format.label_map[static_cast<std::size_t>(*raw_label)]});
  }
  if (result.records.empty()) result.warnings.push_back("no data rows loaded");
  return result;
}

LoadResult load_corpus(const std::filesystem::path& path, const CsvFormat& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("load", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_corpus_text(buf.str(), format);
}

std::vector<LabeledDocument> preprocess(const std::vector<RawRecord>& records,
                                        const Preprocessor& pre) {
  std::vector<LabeledDocument> docs;
  docs.reserve(records.size());
  for (const auto& r : records) {
    docs.push_back(LabeledDocument{r.id, r.label, r.text, pre(r.text)});
  }
  return docs;
}

void write_documents_jsonl(std::ostream& out, const std::vector<LabeledDocument>& docs) {
  for (const auto& d : docs) {
    nlohmann::ordered_json j;
    j["id"] = d.id;
    j["label"] = label_name(d.label);
    j["raw_text"] = d.raw_text;
    j["tokens"] = d.tokens;
    out << j.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

void write_documents_jsonl(const std::filesystem::path& path,
                           const std::vector<LabeledDocument>& docs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("write", "cannot write " + path.string());
  write_documents_jsonl(out, docs);
}

std::vector<LabeledDocument> read_documents_jsonl(std::istream& in) {
  std::vector<LabeledDocument> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      LabeledDocument d;
      d.id = j.at("id").get<std::int64_t>();
      const auto label = parse_label(j.at("label").get<std::string>());
      if (!label) throw DataError("read", "unknown label at line " + std::to_string(lineno));
      d.label = *label;
      d.raw_text = j.value("raw_text", std::string());
      d.tokens = j.at("tokens").get<Tokens>();
      docs.push_back(std::move(d));
    } catch (const json::exception& e) {
      throw DataError("read", "corpus line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return docs;
}

std::vector<LabeledDocument> read_documents_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("read", "cannot open " + path.string());
  return read_documents_jsonl(in);
}

std::array<std::size_t, 3> split_sizes(std::size_t count, const SplitRatios& ratios) {
  const std::array<double, 3> r = {ratios.train, ratios.test, ratios.validation};
  std::array<std::size_t, 3> sizes{};
  std::size_t assigned = 0;
  for (std::size_t s = 0; s < 3; ++s) {
    // The epsilon keeps exact products such as 0.7 * 10 from flooring to 6.
    sizes[s] = static_cast<std::size_t>(std::floor(r[s] * static_cast<double>(count) + 1e-9));
    assigned += sizes[s];
  }
  for (std::size_t s = 3; assigned > count && s-- > 0;) {
    const std::size_t take = std::min(sizes[s], assigned - count);
    sizes[s] -= take;
    assigned -= take;
  }
  for (std::size_t s = 0; assigned < count; s = (s + 1) % 3) {
    ++sizes[s];
    ++assigned;
  }
  return sizes;
}

namespace {

void validate_ratios(const SplitRatios& ratios) {
  const double sum = ratios.train + ratios.test + ratios.validation;
  if (ratios.train < 0 || ratios.test < 0 || ratios.validation < 0 ||
      std::abs(sum - 1.0) > 1e-9) {
    throw UsageError("split", "split ratios must be non-negative and sum to 1");
  }
}

std::array<std::vector<const LabeledDocument*>, kNumClasses> group_by_class(
    const std::vector<LabeledDocument>& docs) {
  std::array<std::vector<const LabeledDocument*>, kNumClasses> groups;
  for (const auto& d : docs) groups[index_of(d.label)].push_back(&d);
  return groups;
}

}  // namespace

DatasetSplit stratified_split(const std::vector<LabeledDocument>& docs,
                              const SplitRatios& ratios, std::uint64_t seed) {
  validate_ratios(ratios);
  auto groups = group_by_class(docs);
  for (ClassLabel label : kAllLabels) {
    const auto n = groups[index_of(label)].size();
    if (n > 0 && n < 3) {
      throw DataError("split", "class " + std::string(label_display_name(label)) + " has " +
                                   std::to_string(n) + " documents; at least 3 are needed");
    }
  }
  DatasetSplit split;
  split.seed = seed;
  Rng rng(seed);
  for (auto& group : groups) {
    rng.shuffle(std::span(group));
    const auto sizes = split_sizes(group.size(), ratios);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < sizes[0]; ++i) split.train.push_back(*group[pos++]);
    for (std::size_t i = 0; i < sizes[1]; ++i) split.test.push_back(*group[pos++]);
    for (std::size_t i = 0; i < sizes[2]; ++i) split.validation.push_back(*group[pos++]);
  }
  return split;
}

std::vector<LabeledDocument> sample_per_class(const std::vector<LabeledDocument>& docs,
                                              std::size_t per_class, std::uint64_t seed,
                                              std::vector<std::string>* warnings) {
  auto groups = group_by_class(docs);
  Rng rng(seed);
  std::vector<LabeledDocument> out;
  for (ClassLabel label : kAllLabels) {
    auto& group = groups[index_of(label)];
    rng.shuffle(std::span(group));
    if (group.size() < per_class && warnings) {
      warnings->push_back("class " + std::string(label_display_name(label)) + " has only " +
                          std::to_string(group.size()) + " documents");
    }
    const std::size_t take = std::min(per_class, group.size());
    for (std::size_t i = 0; i < take; ++i) out.push_back(*group[i]);
  }
  return out;
}

Vocabulary Vocabulary::build(const std::vector<Tokens>& documents) {
  std::map<std::string, std::size_t> df;
  for (const auto& doc : documents) {
    std::set<std::string_view> unique(doc.begin(), doc.end());
    for (std::string_view t : unique) ++df[std::string(t)];
  }
  std::vector<std::string> tokens;
  std::vector<std::size_t> freq;
  tokens.reserve(df.size());
  for (auto& [token, count] : df) {
    tokens.push_back(token);
    freq.push_back(count);
  }
  Vocabulary v = from_tokens(std::move(tokens), std::move(freq));
  v.num_documents_ = documents.size();
  return v;
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens,
                                   std::vector<std::size_t> document_frequency) {
  Vocabulary v;
  v.tokens_ = std::move(tokens);
  v.df_ = std::move(document_frequency);
  v.df_.resize(v.tokens_.size(), 0);
  for (std::size_t i = 0; i < v.tokens_.size(); ++i) {
    if (!v.index_.emplace(v.tokens_[i], i).second) {
      throw DataError("vocabulary", "duplicate token '" + v.tokens_[i] + "'");
    }
  }
  return v;
}

std::optional<std::size_t> Vocabulary::index(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace limelight
