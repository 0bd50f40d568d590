#include "limelight/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include <json.hpp>

#include "limelight/errors.hpp"

namespace limelight {

using nlohmann::ordered_json;

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "html") return ReportFormat::kHtml;
  if (name == "text") return ReportFormat::kText;
  return std::nullopt;
}

std::string_view to_string(ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson: return "json";
    case ReportFormat::kHtml: return "html";
    case ReportFormat::kText: return "text";
  }
  return "json";
}

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string html_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
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

std::string class_name_of(const Explanation& e, std::size_t index) {
  return index < e.class_names.size() ? e.class_names[index] : std::to_string(index);
}

// Orange for weights pushing towards the class, blue against.
std::string highlight_color(double weight, double max_abs) {
  const double alpha = max_abs > 0.0 ? std::abs(weight) / max_abs : 0.0;
  const char* rgb = weight > 0.0 ? "255,127,14" : "31,119,180";
  return std::string("rgba(") + rgb + "," + fmt("%.3f", alpha) + ")";
}

constexpr std::string_view kStyle = R"(body{font-family:sans-serif;margin:2em;color:#222}
h1{font-size:1.3em}h2{font-size:1.1em;margin-top:1.5em}
.bars{max-width:520px}
.bar-row{display:flex;align-items:center;margin:3px 0}
.bar-label{width:110px}
.bar-track{flex:1;background:#eee;height:16px}
.bar{height:16px;background:#4a78b0}
.bar-value{width:60px;text-align:right;font-family:monospace}
.text{line-height:2em;font-size:1.1em;padding:.5em;border:1px solid #ddd}
mark{padding:2px 3px;border-radius:3px;color:#000}
table{border-collapse:collapse}td,th{padding:2px 10px;text-align:left}
td.w{font-family:monospace;text-align:right}
.pos{color:#c0600a}.neg{color:#1f5fa0}
.timestamp{color:#888;font-size:.8em;margin-top:2em}
)";

}  // namespace

const SurrogateFit* highlighted_fit(const Explanation& e) {
  const SurrogateFit* best = nullptr;
  double best_p = -1.0;
  for (const auto& fit : e.fits) {
    const double p = fit.class_index < e.prediction.size() ? e.prediction[fit.class_index] : 0.0;
    if (!best || p > best_p || (p == best_p && fit.class_index < best->class_index)) {
      best = &fit;
      best_p = p;
    }
  }
  return best;
}

std::string render_explanation_json(const Explanation& e, const RenderOptions& options) {
  ordered_json j;
  if (options.id) j["id"] = *options.id;
  j["text"] = e.text;
  j["tokens"] = e.tokens;
  ordered_json prediction = ordered_json::object();
  for (std::size_t c = 0; c < e.prediction.size(); ++c) prediction[class_name_of(e, c)] = e.prediction[c];
  j["prediction"] = prediction;
  ordered_json classes = ordered_json::array();
  for (const auto& fit : e.fits) {
    ordered_json f;
    f["class"] = fit.class_name;
    f["class_index"] = fit.class_index;
    f["intercept"] = fit.intercept;
    f["local_score"] = fit.local_score;
    ordered_json features = ordered_json::array();
    for (const auto& w : fit.features) {
      features.push_back({{"token", w.token}, {"feature", w.feature}, {"weight", w.weight}});
    }
    f["features"] = features;
    classes.push_back(f);
  }
  j["classes"] = classes;
  ordered_json config;
  config["sigma"] = e.kernel.sigma;
  config["distance"] = "cosine";
  config["num_samples"] = e.surrogate.num_samples;
  config["ridge_lambda"] = e.surrogate.ridge_lambda;
  config["top_k"] = e.surrogate.top_k;
  config["feature_selection"] = to_string(e.surrogate.selection);
  config["sampling"] = to_string(e.surrogate.sampling);
  config["seed"] = e.surrogate.seed;
  j["config"] = config;
  return j.dump(options.json_indent, ' ', false, ordered_json::error_handler_t::replace);
}

Explanation parse_explanation_json(std::string_view text) {
  try {
    const ordered_json j = ordered_json::parse(text);
    Explanation e;
    e.text = j.at("text").get<std::string>();
    e.tokens = j.at("tokens").get<Tokens>();
    for (const auto& [name, p] : j.at("prediction").items()) {
      e.class_names.push_back(name);
      e.prediction.push_back(p.get<double>());
    }
    for (const auto& f : j.at("classes")) {
      SurrogateFit fit;
      fit.class_name = f.at("class").get<std::string>();
      fit.class_index = f.at("class_index").get<std::size_t>();
      fit.intercept = f.at("intercept").get<double>();
      fit.local_score = f.at("local_score").get<double>();
      for (const auto& w : f.at("features")) {
        fit.features.push_back(FeatureWeight{w.at("feature").get<std::size_t>(),
                                             w.at("token").get<std::string>(),
                                             w.at("weight").get<double>()});
      }
      e.fits.push_back(std::move(fit));
    }
    const auto& config = j.at("config");
    e.kernel.sigma = config.at("sigma").get<double>();
    e.surrogate.num_samples = config.at("num_samples").get<std::size_t>();
    e.surrogate.ridge_lambda = config.at("ridge_lambda").get<double>();
    e.surrogate.top_k = config.at("top_k").get<std::size_t>();
    const auto selection = parse_feature_selection(config.at("feature_selection").get<std::string>());
    const auto sampling = parse_sampling_mode(config.at("sampling").get<std::string>());
    if (!selection || !sampling) throw DataError("report", "unknown feature_selection or sampling");
    e.surrogate.selection = *selection;
    e.surrogate.sampling = *sampling;
    e.surrogate.seed = config.at("seed").get<std::uint64_t>();
    return e;
  } catch (const ordered_json::exception& ex) {
    throw DataError("report", std::string("malformed explanation JSON: ") + ex.what());
  }
}

std::string render_explanation_html(const Explanation& e, const RenderOptions& options) {
  const SurrogateFit* focus = highlighted_fit(e);
  std::unordered_map<std::string, double> weights;
  double max_abs = 0.0;
  if (focus) {
    for (const auto& w : focus->features) {
      if (w.weight == 0.0) continue;
      weights.emplace(w.token, w.weight);
      max_abs = std::max(max_abs, std::abs(w.weight));
    }
  }

  std::string out;
  out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  out += "<title>Explanation</title>\n<style>\n";
  out += kStyle;
  out += "</style>\n</head>\n<body>\n<h1>Explanation</h1>\n";

  out += "<h2>Prediction probabilities</h2>\n<div class=\"bars\">\n";
  for (std::size_t c = 0; c < e.prediction.size(); ++c) {
    const std::string name = html_escape(class_name_of(e, c));
    const double p = e.prediction[c];
    out += "<div class=\"bar-row\"><span class=\"bar-label\">" + name +
           "</span><div class=\"bar-track\"><div class=\"bar\" data-class=\"" + name +
           "\" data-probability=\"" + fmt("%.6f", p) + "\" style=\"width:" +
           fmt("%.2f", 100.0 * p) + "%\"></div></div><span class=\"bar-value\">" +
           fmt("%.3f", p) + "</span></div>\n";
  }
  out += "</div>\n";

  out += "<h2>Text with highlighted words";
  if (focus) out += " (" + html_escape(focus->class_name) + ")";
  out += "</h2>\n<div class=\"text\">";
  for (std::size_t i = 0; i < e.tokens.size(); ++i) {
    if (i) out += " ";
    const std::string tok = html_escape(e.tokens[i]);
    const auto it = weights.find(e.tokens[i]);
    if (it == weights.end()) {
      out += tok;
    } else {
      out += "<mark data-token=\"" + tok + "\" data-weight=\"" + fmt("%.6f", it->second) +
             "\" style=\"background-color:" + highlight_color(it->second, max_abs) + "\">" + tok +
             "</mark>";
    }
  }
  out += "</div>\n";

  for (const auto& fit : e.fits) {
    out += "<h2>Class " + html_escape(fit.class_name) + "</h2>\n";
    out += "<p>intercept " + fmt("%.4f", fit.intercept) + ", local score " +
           fmt("%.4f", fit.local_score) + "</p>\n";
    out += "<table>\n<tr><th>Feature</th><th>Weight</th></tr>\n";
    for (const auto& w : fit.features) {
      const char* cls = w.weight > 0.0 ? "pos" : (w.weight < 0.0 ? "neg" : "zero");
      out += "<tr class=\"" + std::string(cls) + "\"><td>" + html_escape(w.token) +
             "</td><td class=\"w\">" + fmt("%+.4f", w.weight) + "</td></tr>\n";
    }
    out += "</table>\n";
  }

  out += "<h2>Original text</h2>\n<p class=\"original\">" + html_escape(e.text) + "</p>\n";
  if (!options.timestamp.empty()) {
    out += "<p class=\"timestamp\">Generated " + html_escape(options.timestamp) + "</p>\n";
  }
  out += "</body>\n</html>\n";
  return out;
}

std::string render_explanation_text(const Explanation& e) {
  std::string out = "Text: " + e.text + "\n";
  out += "Tokens: " + join_tokens(e.tokens) + "\n";
  out += "Prediction:\n";
  for (std::size_t c = 0; c < e.prediction.size(); ++c) {
    out += "  " + class_name_of(e, c) + "\t" + fmt("%.4f", e.prediction[c]) + "\n";
  }
  for (const auto& fit : e.fits) {
    out += "Class " + fit.class_name + " (intercept " + fmt("%.4f", fit.intercept) +
           ", local score " + fmt("%.4f", fit.local_score) + ")\n";
    for (const auto& w : fit.features) out += "  " + w.token + "\t" + fmt("%+.4f", w.weight) + "\n";
  }
  return out;
}

std::string render_explanation_report(const Explanation& e, ReportFormat format,
                                      const RenderOptions& options) {
  switch (format) {
    case ReportFormat::kJson: return render_explanation_json(e, options) + "\n";
    case ReportFormat::kHtml: return render_explanation_html(e, options);
    case ReportFormat::kText: return render_explanation_text(e);
  }
  return {};
}

std::string render_explanation_report(const Explanation& e, std::string_view format,
                                      const RenderOptions& options) {
  const auto f = parse_report_format(format);
  if (!f) {
    throw UsageError("report", "unknown report format '" + std::string(format) +
                                   "' (expected json, html or text)");
  }
  return render_explanation_report(e, *f, options);
}

}  // namespace limelight
