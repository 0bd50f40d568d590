#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace limelight {

// Fixed class order; used directly as matrix index.
enum class ClassLabel : int { kHate = 0, kOffensive = 1, kNone = 2 };

inline constexpr std::size_t kNumClasses = 3;

inline constexpr std::array<ClassLabel, kNumClasses> kAllLabels = {
    ClassLabel::kHate, ClassLabel::kOffensive, ClassLabel::kNone};

constexpr std::size_t index_of(ClassLabel label) {
  return static_cast<std::size_t>(label);
}

// Wire/JSON name: "hate", "offensive", "none".
std::string_view label_name(ClassLabel label);
// Report name: "Hate", "Offensive", "None".
std::string_view label_display_name(ClassLabel label);

// Case-insensitive parse of either name form.
std::optional<ClassLabel> parse_label(std::string_view name);

ClassLabel label_from_index(std::size_t index);

// Lowercase class names in index order, as advertised by classifiers.
std::array<std::string, kNumClasses> default_class_names();

}  // namespace limelight
