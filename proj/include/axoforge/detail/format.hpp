#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace axoforge::detail {

// Strips trailing zeros (and a dangling '.') from a fixed-point rendering.
inline std::string trim_fixed(std::string s) {
  if (s.find('.') == std::string::npos) return s;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0" || s.empty()) s = "0";
  return s;
}

/// Fixed-point number with at most `decimals` places, trailing zeros trimmed.
/// Used by both backends so SVG and PDF agree token-for-token.
inline std::string fmt_fixed(double v, int decimals = 4) {
  if (!std::isfinite(v)) return "0";
  if (v == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return trim_fixed(buf);
}

/// Up to 6 significant digits, no exponent notation; the serializer's
/// canonical number form.
inline std::string fmt_sig(double v) {
  if (!std::isfinite(v)) return "0";
  if (v == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  std::string s = buf;
  if (s.find('e') != std::string::npos || s.find('E') != std::string::npos) {
    // Diagram coordinates never need exponents; fall back to plain fixed.
    std::snprintf(buf, sizeof buf, "%.6f", v);
    s = trim_fixed(buf);
  }
  if (s == "-0") s = "0";
  return s;
}

} // namespace axoforge::detail
