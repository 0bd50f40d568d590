#include "limelight/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "limelight/errors.hpp"

namespace limelight {

std::size_t ConfusionMatrix::row_total(std::size_t truth) const {
  return std::accumulate(counts[truth].begin(), counts[truth].end(), ties[truth]);
}

std::size_t ConfusionMatrix::tie_count() const {
  return std::accumulate(ties.begin(), ties.end(), std::size_t{0});
}

std::size_t ConfusionMatrix::correct() const {
  std::size_t n = 0;
  for (std::size_t c = 0; c < kNumClasses; ++c) n += counts[c][c];
  return n;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t n = 0;
  for (std::size_t c = 0; c < kNumClasses; ++c) n += row_total(c);
  return n;
}

bool is_tie(std::span<const double> row, double epsilon) {
  if (row.size() < 2) return false;
  double first = row[0], second = row[1];
  if (second > first) std::swap(first, second);
  for (std::size_t i = 2; i < row.size(); ++i) {
    if (row[i] > first) {
      second = first;
      first = row[i];
    } else if (row[i] > second) {
      second = row[i];
    }
  }
  if (epsilon > 0.0) return std::abs(first - second) <= epsilon;
  return std::bit_cast<std::uint64_t>(first) == std::bit_cast<std::uint64_t>(second);
}

ConfusionMatrix confusion(std::span<const std::size_t> truth,
                          std::span<const std::size_t> predictions,
                          const ProbabilityMatrix& probabilities, double tie_epsilon) {
  if (truth.empty()) throw DataError("analyze", "no documents to analyze");
  if (predictions.size() != truth.size()) {
    throw DataError("analyze", "truth has " + std::to_string(truth.size()) +
                                   " entries but predictions has " +
                                   std::to_string(predictions.size()));
  }
  const bool check_ties = probabilities.rows > 0;
  if (check_ties && probabilities.rows != truth.size()) {
    throw DataError("analyze", "truth has " + std::to_string(truth.size()) +
                                   " entries but probabilities has " +
                                   std::to_string(probabilities.rows) + " rows");
  }
  ConfusionMatrix m;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] >= kNumClasses || predictions[i] >= kNumClasses) {
      throw DataError("analyze", "class index out of range at document " + std::to_string(i));
    }
    if (check_ties && is_tie(probabilities.row(i), tie_epsilon)) {
      ++m.ties[truth[i]];
    } else {
      ++m.counts[truth[i]][predictions[i]];
    }
  }
  return m;
}

ConfusionMatrix confusion_from_probabilities(std::span<const std::size_t> truth,
                                             const ProbabilityMatrix& probabilities,
                                             double tie_epsilon) {
  std::vector<std::size_t> predicted(probabilities.rows);
  for (std::size_t i = 0; i < probabilities.rows; ++i) {
    const auto row = probabilities.row(i);
    predicted[i] = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  if (probabilities.rows == 0) throw DataError("analyze", "no documents to analyze");
  return confusion(truth, predicted, probabilities, tie_epsilon);
}

ErrorBreakdown error_breakdown(const ConfusionMatrix& matrix,
                               std::span<const ClassLabel> positive_classes) {
  std::array<bool, kNumClasses> positive{};
  for (ClassLabel c : positive_classes) positive[index_of(c)] = true;

  ErrorBreakdown b;
  b.documents = matrix.total();
  std::size_t fp = 0, fn = 0;
  for (std::size_t t = 0; t < kNumClasses; ++t) {
    BreakdownRow& row = b.rows[t];
    row.truth = label_from_index(t);
    row.documents = matrix.row_total(t);
    if (row.documents > 0) {
      const double n = static_cast<double>(row.documents);
      for (std::size_t p = 0; p < kNumClasses; ++p) {
        row.percent[p] = 100.0 * static_cast<double>(matrix.counts[t][p]) / n;
      }
      row.tie_percent = 100.0 * static_cast<double>(matrix.ties[t]) / n;
    }
    if (positive[t]) {
      fn += row.documents - matrix.counts[t][t];
    } else {
      fp += matrix.ties[t];
      for (std::size_t p = 0; p < kNumClasses; ++p) {
        if (positive[p]) fp += matrix.counts[t][p];
      }
    }
  }
  if (b.documents > 0) {
    const double n = static_cast<double>(b.documents);
    b.overall_error = 100.0 * static_cast<double>(b.documents - matrix.correct()) / n;
    b.false_positive_rate = 100.0 * static_cast<double>(fp) / n;
    b.false_negative_rate = 100.0 * static_cast<double>(fn) / n;
    b.tie_rate = 100.0 * static_cast<double>(matrix.tie_count()) / n;
  }
  return b;
}

FrequencyTable top_frequent_words(const std::vector<LabeledDocument>& docs, ClassLabel label,
                                  std::size_t k, std::vector<std::string>* warnings) {
  FrequencyTable table;
  table.label = label;
  std::map<std::string, std::size_t> counts;
  bool any = false;
  for (const auto& d : docs) {
    if (d.label != label) continue;
    any = true;
    for (const auto& t : d.tokens) ++counts[t];
  }
  if (!any) {
    if (warnings) {
      warnings->push_back("class " + std::string(label_display_name(label)) +
                          " has no documents; frequency table is empty");
    }
    return table;
  }
  table.entries.assign(counts.begin(), counts.end());
  // Map order is lexicographic, so a stable sort by count keeps that as the
  // tie-break.
  std::stable_sort(table.entries.begin(), table.entries.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (table.entries.size() > k) table.entries.resize(k);
  return table;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string render_frequency_csv(const FrequencyTable& table) {
  std::string out = "rank,token,count\n";
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    out += std::to_string(i + 1) + "," + csv_field(table.entries[i].first) + "," +
           std::to_string(table.entries[i].second) + "\n";
  }
  return out;
}

std::string render_frequency_svg(const FrequencyTable& table) {
  constexpr int kBarHeight = 14, kGap = 4, kLabelWidth = 160, kMaxBar = 400, kTop = 30;
  const int n = static_cast<int>(table.entries.size());
  const int height = kTop + n * (kBarHeight + kGap) + 10;
  const int width = kLabelWidth + kMaxBar + 70;
  const std::size_t max_count = table.entries.empty() ? 1 : table.entries.front().second;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<text x=\"4\" y=\"18\" font-size=\"14\">Top " << n << " words: "
      << label_display_name(table.label) << "</text>\n";
  for (int i = 0; i < n; ++i) {
    const auto& [token, count] = table.entries[static_cast<std::size_t>(i)];
    const int y = kTop + i * (kBarHeight + kGap);
    const double len = static_cast<double>(kMaxBar) * static_cast<double>(count) /
                       static_cast<double>(max_count);
    svg << "<text x=\"" << kLabelWidth - 6 << "\" y=\"" << y + kBarHeight - 3
        << "\" text-anchor=\"end\">" << xml_escape(token) << "</text>";
    svg << "<rect x=\"" << kLabelWidth << "\" y=\"" << y << "\" width=\"" << fixed(len, 1)
        << "\" height=\"" << kBarHeight << "\" fill=\"#4a78b0\"/>";
    svg << "<text x=\"" << fixed(kLabelWidth + len + 4, 1) << "\" y=\"" << y + kBarHeight - 3
        << "\">" << count << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_confusion_text(const ConfusionMatrix& m) {
  std::string out = "Truth\\Predicted";
  for (ClassLabel c : kAllLabels) out += "\t" + std::string(label_display_name(c));
  out += "\tTie\tTotal\n";
  for (std::size_t t = 0; t < kNumClasses; ++t) {
    out += std::string(label_display_name(label_from_index(t)));
    for (std::size_t p = 0; p < kNumClasses; ++p) out += "\t" + std::to_string(m.counts[t][p]);
    out += "\t" + std::to_string(m.ties[t]) + "\t" + std::to_string(m.row_total(t)) + "\n";
  }
  return out;
}

std::string render_breakdown_text(const ErrorBreakdown& b) {
  std::string out = "Truth";
  for (ClassLabel c : kAllLabels) out += "\t" + std::string(label_display_name(c)) + " %";
  out += "\tTie %\tDocuments\n";
  for (const auto& row : b.rows) {
    out += std::string(label_display_name(row.truth));
    for (double p : row.percent) out += "\t" + fixed(p, 2);
    out += "\t" + fixed(row.tie_percent, 2) + "\t" + std::to_string(row.documents) + "\n";
  }
  out += "Overall error %\t" + fixed(b.overall_error, 2) + "\n";
  out += "False positive %\t" + fixed(b.false_positive_rate, 2) + "\n";
  out += "False negative %\t" + fixed(b.false_negative_rate, 2) + "\n";
  out += "Tie %\t" + fixed(b.tie_rate, 2) + "\n";
  return out;
}

std::string render_analysis_json(const ConfusionMatrix& m, const ErrorBreakdown& b) {
  using nlohmann::ordered_json;
  ordered_json j;
  ordered_json classes = ordered_json::array();
  for (ClassLabel c : kAllLabels) classes.push_back(label_name(c));
  j["classes"] = classes;
  ordered_json counts = ordered_json::array();
  for (const auto& row : m.counts) counts.push_back(row);
  j["confusion"] = counts;
  j["ties"] = m.ties;
  j["documents"] = b.documents;
  ordered_json rows = ordered_json::array();
  for (const auto& row : b.rows) {
    ordered_json r;
    r["truth"] = label_name(row.truth);
    r["documents"] = row.documents;
    r["percent"] = row.percent;
    r["tie_percent"] = row.tie_percent;
    rows.push_back(r);
  }
  j["breakdown"] = rows;
  j["overall_error"] = b.overall_error;
  j["false_positive_rate"] = b.false_positive_rate;
  j["false_negative_rate"] = b.false_negative_rate;
  j["tie_rate"] = b.tie_rate;
  return j.dump(2) + "\n";
}

}  // namespace limelight
