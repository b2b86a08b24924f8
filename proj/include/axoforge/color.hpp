#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <axoforge/error.hpp>

namespace axoforge::model {

/// RGB triple; components are clamped to [0,1] on construction.
struct Color {
  double r = 0, g = 0, b = 0;

  constexpr Color() = default;
  constexpr Color(double rr, double gg, double bb)
      : r(clamp01(rr)), g(clamp01(gg)), b(clamp01(bb)) {}

  static constexpr Color gray(double level) { return {level, level, level}; }
  friend constexpr bool operator==(Color a, Color b) = default;

private:
  static constexpr double clamp01(double v) { return v < 0 ? 0 : (v > 1 ? 1 : v); }
};

struct NamedColor {
  const char* name;
  Color rgb;
};

// The 68 dvips prologue colors plus the five Light* additions,
// embedded from data/colors.tsv at build time.
inline constexpr NamedColor kColorTable[] = {
#include <axoforge/color_table.inc>
};

inline constexpr Color kBlack{0, 0, 0};
inline constexpr Color kWhite{1, 1, 1};

inline std::span<const NamedColor> color_table() { return kColorTable; }

class UnknownColor : public Error {
public:
  UnknownColor(std::string name, const std::string& msg) : Error(msg), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

private:
  std::string name_;
};

namespace detail {

inline int edit_distance(std::string_view a, std::string_view b) {
  std::vector<int> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    int prev = row[0];
    row[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      int cur = row[j];
      int sub = std::tolower(static_cast<unsigned char>(a[i - 1])) ==
                        std::tolower(static_cast<unsigned char>(b[j - 1]))
                    ? prev
                    : prev + 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, sub});
      prev = cur;
    }
  }
  return row[b.size()];
}

} // namespace detail

/// Case-sensitive lookup in the 73-entry table. Unknown names raise
/// UnknownColor listing the nearest candidates.
inline Color color_lookup(std::string_view name) {
  for (const auto& entry : kColorTable) {
    if (name == entry.name) return entry.rgb;
  }
  std::vector<std::pair<int, const char*>> scored;
  for (const auto& entry : kColorTable) {
    scored.emplace_back(detail::edit_distance(name, entry.name), entry.name);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string msg = "unknown color '" + std::string(name) + "'";
  std::string close;
  for (std::size_t i = 0; i < scored.size() && i < 3; ++i) {
    if (scored[i].first > 3) break;
    close += close.empty() ? "" : ", ";
    close += scored[i].second;
  }
  if (!close.empty()) msg += "; did you mean " + close + "?";
  throw UnknownColor(std::string(name), msg);
}

/// Reverse lookup for serialization; first table entry wins, nullptr if
/// the value is not a table color.
inline const char* color_name(Color c) {
  for (const auto& entry : kColorTable) {
    if (entry.rgb == c) return entry.name;
  }
  return nullptr;
}

} // namespace axoforge::model
