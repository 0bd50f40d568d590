#pragma once

// Explanation documents: JSON (machine readable, round-trips), a
// self-contained HTML page, and plain text.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "limelight/lime.hpp"

namespace limelight {

enum class ReportFormat { kJson, kHtml, kText };

std::optional<ReportFormat> parse_report_format(std::string_view name);
std::string_view to_string(ReportFormat format);

struct RenderOptions {
  // Shown in the HTML footer when non-empty.
  std::string timestamp;
  // JSON indentation; negative for a single line.
  int json_indent = 2;
  // Added as the leading "id" member of the JSON object.
  std::optional<std::int64_t> id;
};

std::string render_explanation_json(const Explanation& e, const RenderOptions& options = {});
std::string render_explanation_html(const Explanation& e, const RenderOptions& options = {});
std::string render_explanation_text(const Explanation& e);

std::string render_explanation_report(const Explanation& e, ReportFormat format,
                                      const RenderOptions& options = {});
// Throws UsageError for an unknown format name.
std::string render_explanation_report(const Explanation& e, std::string_view format,
                                      const RenderOptions& options = {});

// Inverse of render_explanation_json. The result carries no neighborhood.
// Throws DataError on malformed input.
Explanation parse_explanation_json(std::string_view text);

// The fit the HTML page highlights: the explained class with the highest
// predicted probability. nullptr when there are no fits.
const SurrogateFit* highlighted_fit(const Explanation& e);

}  // namespace limelight
