#include "limelight/labels.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace limelight {

std::string_view label_name(ClassLabel label) {
  switch (label) {
    case ClassLabel::kHate: return "hate";
    case ClassLabel::kOffensive: return "offensive";
    case ClassLabel::kNone: return "none";
  }
  return "?";
}

std::string_view label_display_name(ClassLabel label) {
  switch (label) {
    case ClassLabel::kHate: return "Hate";
    case ClassLabel::kOffensive: return "Offensive";
    case ClassLabel::kNone: return "None";
  }
  return "?";
}

std::optional<ClassLabel> parse_label(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (ClassLabel label : kAllLabels) {
    if (lower == label_name(label)) return label;
  }
  return std::nullopt;
}

ClassLabel label_from_index(std::size_t index) {
  if (index >= kNumClasses) {
    throw std::out_of_range("class index out of range: " + std::to_string(index));
  }
  return static_cast<ClassLabel>(index);
}

std::array<std::string, kNumClasses> default_class_names() {
  return {std::string(label_name(ClassLabel::kHate)),
          std::string(label_name(ClassLabel::kOffensive)),
          std::string(label_name(ClassLabel::kNone))};
}

}  // namespace limelight
