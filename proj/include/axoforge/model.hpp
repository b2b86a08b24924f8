#pragma once

#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <axoforge/color.hpp>
#include <axoforge/geom.hpp>

namespace axoforge::model {

using geom::Carrier;
using geom::Point;
using geom::WigglySpec;

// Style defaults; one table so the constants stay in sync with the docs.
inline constexpr double kDefaultLineWidth = 0.5;  // pt
inline constexpr double kDefaultDoubleSep = 2.0;  // pt
inline constexpr double kDefaultDashSize = 3.0;   // pt
inline constexpr double kDefaultArrowPos = 0.5;
inline constexpr double kDefaultArrowLength = 10.0; // pt
inline constexpr double kDefaultArrowWidth = 4.0;   // pt
inline constexpr double kDefaultArrowInset = 0.2;
inline constexpr double kDefaultTextSize = 10.0; // pt
inline constexpr double kTextPadding = 2.0;      // pt, boxed/oval text

/// Drawing surface: width/height in pt, lower-left corner at `origin`,
/// all content multiplied by `scale`.
struct Canvas {
  double width = 0;
  double height = 0;
  Point origin{0, 0};
  double scale = 1;
  friend bool operator==(const Canvas&, const Canvas&) = default;
};

struct ArrowSpec {
  double pos = kDefaultArrowPos; // fraction of arc length
  double length = kDefaultArrowLength;
  double width = kDefaultArrowWidth;
  double inset = kDefaultArrowInset; // rear notch fraction
  double scale = 1;
  bool flipped = false;
  friend bool operator==(const ArrowSpec&, const ArrowSpec&) = default;
};

struct LineStyle {
  double width = kDefaultLineWidth;
  Color color = kBlack;
  std::optional<double> double_sep;
  std::optional<double> dash_size;
  std::vector<ArrowSpec> arrows;
  bool explicit_color = false; // a color= option was given
  friend bool operator==(const LineStyle&, const LineStyle&) = default;
};

// --------------------------------------------------------------------
// Primitive shapes
// --------------------------------------------------------------------

struct LinePrim {
  Point p1, p2;
  friend bool operator==(const LinePrim&, const LinePrim&) = default;
};
struct ArcPrim {
  Point center;
  double radius = 0, theta1 = 0, theta2 = 0;
  friend bool operator==(const ArcPrim&, const ArcPrim&) = default;
};
struct BezierPrim {
  Point p0, p1, p2, p3;
  friend bool operator==(const BezierPrim&, const BezierPrim&) = default;
};
struct WigglyPrim {
  Carrier carrier;
  WigglySpec spec;
  friend bool operator==(const WigglyPrim& a, const WigglyPrim& b) {
    return a.carrier == b.carrier && a.spec.kind == b.spec.kind &&
           a.spec.amplitude == b.spec.amplitude && a.spec.count == b.spec.count;
  }
};
struct VertexPrim { // filled disc in the current color
  Point center;
  double radius = 0;
  friend bool operator==(const VertexPrim&, const VertexPrim&) = default;
};
struct CircleOutlinePrim { // transparent interior
  Point center;
  double radius = 0;
  friend bool operator==(const CircleOutlinePrim&, const CircleOutlinePrim&) = default;
};
struct FilledCirclePrim {
  Point center;
  double radius = 0;
  Color fill;
  friend bool operator==(const FilledCirclePrim&, const FilledCirclePrim&) = default;
};
struct BoxPrim { // center form; rotation stored mod 360
  Point center;
  double w = 0, h = 0;
  double rotation = 0;
  std::optional<Color> fill;
  friend bool operator==(const BoxPrim&, const BoxPrim&) = default;

  static BoxPrim from_corner(Point corner, double w, double h, double rotation = 0,
                             std::optional<Color> fill = {}) {
    return {{corner.x + w / 2, corner.y + h / 2}, w, h, rotation, fill};
  }
};
struct PolygonPrim {
  std::vector<Point> points; // >= 3
  std::optional<Color> fill;
  friend bool operator==(const PolygonPrim&, const PolygonPrim&) = default;
};
struct OvalPrim {
  Point center;
  double rx = 0, ry = 0;
  double rotation = 0;
  std::optional<Color> fill;
  friend bool operator==(const OvalPrim&, const OvalPrim&) = default;
};
struct GridPrim {
  Point origin;
  double cell_w = 0, cell_h = 0;
  int cols = 0, rows = 0;
  friend bool operator==(const GridPrim&, const GridPrim&) = default;
};
struct TextPrim {
  Point anchor;
  std::string content;
  double size = kDefaultTextSize;
  friend bool operator==(const TextPrim&, const TextPrim&) = default;
};
struct BoxedTextPrim { // box sized to fit its 1-2 lines
  Point center;
  double w = 0, h = 0;
  std::vector<std::string> lines;
  std::optional<Color> fill;
  double size = kDefaultTextSize;
  friend bool operator==(const BoxedTextPrim&, const BoxedTextPrim&) = default;
};
struct OvalTextPrim { // circumscribing ellipse of the fitted box
  Point center;
  double w = 0, h = 0;
  std::vector<std::string> lines;
  std::optional<Color> fill;
  double size = kDefaultTextSize;
  friend bool operator==(const OvalTextPrim&, const OvalTextPrim&) = default;
};

using PrimitiveShape =
    std::variant<LinePrim, ArcPrim, BezierPrim, WigglyPrim, VertexPrim, CircleOutlinePrim,
                 FilledCirclePrim, BoxPrim, PolygonPrim, OvalPrim, GridPrim, TextPrim,
                 BoxedTextPrim, OvalTextPrim>;

struct Primitive {
  PrimitiveShape shape;
  LineStyle style;
  friend bool operator==(const Primitive&, const Primitive&) = default;
};

// --------------------------------------------------------------------
// State changes and the diagram
// --------------------------------------------------------------------

struct SetColor {
  std::string name; // empty for raw rgb values
  Color rgb;
  friend bool operator==(const SetColor&, const SetColor&) = default;
};
struct SetWidth {
  double width = kDefaultLineWidth;
  friend bool operator==(const SetWidth&, const SetWidth&) = default;
};
struct SetScale {
  double scale = 1;
  friend bool operator==(const SetScale&, const SetScale&) = default;
};

using Item = std::variant<SetColor, SetWidth, SetScale, Primitive>;

/// Ordered scene: state changes affect only the primitives after them.
struct Diagram {
  Canvas canvas;
  std::vector<Item> items;
  friend bool operator==(const Diagram&, const Diagram&) = default;
};

/// Running drawing state while building or lowering a diagram.
struct DrawState {
  Color color = kBlack;
  std::string color_name = "Black";
  double width = kDefaultLineWidth;
  double scale = 1;
};

inline void apply_state_change(DrawState& st, const Item& item) {
  if (const auto* sc = std::get_if<SetColor>(&item)) {
    st.color = sc->rgb;
    st.color_name = sc->name;
  } else if (const auto* sw = std::get_if<SetWidth>(&item)) {
    st.width = sw->width;
  } else if (const auto* ss = std::get_if<SetScale>(&item)) {
    st.scale = ss->scale;
  }
}

// --------------------------------------------------------------------
// Option resolution
// --------------------------------------------------------------------

enum class PrimitiveKind {
  Line,
  Arc,
  Bezier,
  Wiggly,
  Vertex,
  Circle,
  Box,
  Polygon,
  Oval,
  Grid,
  Text,
};

/// Bracket-option map; std::nullopt marks a bare flag.
using OptionMap = std::map<std::string, std::optional<std::string>>;

enum class OptionErrorKind { UnknownOption, BadValue };

class OptionError : public Error {
public:
  OptionError(OptionErrorKind kind, std::string key, const std::string& msg)
      : Error(msg), kind_(kind), key_(std::move(key)) {}
  OptionErrorKind kind() const { return kind_; }
  const std::string& key() const { return key_; }

private:
  OptionErrorKind kind_;
  std::string key_;
};

namespace detail {

inline bool line_like(PrimitiveKind k) {
  return k == PrimitiveKind::Line || k == PrimitiveKind::Arc || k == PrimitiveKind::Bezier ||
         k == PrimitiveKind::Wiggly;
}

inline double parse_number_option(const std::string& key,
                                  const std::optional<std::string>& value) {
  if (!value || value->empty())
    throw OptionError(OptionErrorKind::BadValue, key, "option '" + key + "' needs a value");
  const char* begin = value->c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + value->size() || !std::isfinite(v))
    throw OptionError(OptionErrorKind::BadValue, key,
                      "option '" + key + "': bad number '" + *value + "'");
  return v;
}

} // namespace detail

/// Resolves a raw option map against the current drawing state;
/// sub-options imply their enabling flag (sep => double, arrowpos =>
/// arrow, ...).
inline LineStyle resolve_options(PrimitiveKind kind, const OptionMap& raw,
                                 const DrawState& state) {
  LineStyle style;
  style.width = state.width;
  style.color = state.color;

  bool want_double = false, want_dash = false, want_arrow = false;
  std::optional<double> sep, dsize, apos, alen, awidth, ainset, ascale;
  bool flip = false;

  for (const auto& [key, value] : raw) {
    bool allowed = detail::line_like(kind) || key == "color" || key == "width";
    if (!allowed)
      throw OptionError(OptionErrorKind::UnknownOption, key,
                        "option '" + key + "' does not apply to this command");
    if (key == "double") {
      want_double = true;
    } else if (key == "sep") {
      want_double = true;
      sep = detail::parse_number_option(key, value);
    } else if (key == "dash") {
      want_dash = true;
    } else if (key == "dsize") {
      want_dash = true;
      dsize = detail::parse_number_option(key, value);
    } else if (key == "arrow") {
      want_arrow = true;
    } else if (key == "arrowpos") {
      want_arrow = true;
      apos = detail::parse_number_option(key, value);
    } else if (key == "arrowlength") {
      want_arrow = true;
      alen = detail::parse_number_option(key, value);
    } else if (key == "arrowwidth") {
      want_arrow = true;
      awidth = detail::parse_number_option(key, value);
    } else if (key == "arrowinset") {
      want_arrow = true;
      ainset = detail::parse_number_option(key, value);
    } else if (key == "arrowscale") {
      want_arrow = true;
      ascale = detail::parse_number_option(key, value);
    } else if (key == "flip") {
      want_arrow = true;
      flip = true;
    } else if (key == "color") {
      if (!value || value->empty())
        throw OptionError(OptionErrorKind::BadValue, key, "option 'color' needs a name");
      try {
        style.color = color_lookup(*value);
      } catch (const UnknownColor& e) {
        throw OptionError(OptionErrorKind::BadValue, key, e.what());
      }
      style.explicit_color = true;
    } else if (key == "width") {
      double w = detail::parse_number_option(key, value);
      if (w <= 0) throw OptionError(OptionErrorKind::BadValue, key, "width must be > 0");
      style.width = w;
    } else {
      throw OptionError(OptionErrorKind::UnknownOption, key, "unknown option '" + key + "'");
    }
  }

  if (want_double) {
    double s = sep.value_or(kDefaultDoubleSep);
    if (s <= 0) throw OptionError(OptionErrorKind::BadValue, "sep", "sep must be > 0");
    style.double_sep = s;
  }
  if (want_dash) {
    double d = dsize.value_or(kDefaultDashSize);
    if (d <= 0) throw OptionError(OptionErrorKind::BadValue, "dsize", "dsize must be > 0");
    style.dash_size = d;
  }
  if (want_arrow) {
    ArrowSpec a;
    a.pos = apos.value_or(kDefaultArrowPos);
    a.length = alen.value_or(kDefaultArrowLength);
    a.width = awidth.value_or(kDefaultArrowWidth);
    a.inset = ainset.value_or(kDefaultArrowInset);
    a.scale = ascale.value_or(1.0);
    a.flipped = flip;
    if (a.pos < 0 || a.pos > 1)
      throw OptionError(OptionErrorKind::BadValue, "arrowpos", "arrowpos must be in [0,1]");
    if (a.length <= 0)
      throw OptionError(OptionErrorKind::BadValue, "arrowlength", "arrowlength must be > 0");
    if (a.width <= 0)
      throw OptionError(OptionErrorKind::BadValue, "arrowwidth", "arrowwidth must be > 0");
    if (a.inset < 0 || a.inset >= 1)
      throw OptionError(OptionErrorKind::BadValue, "arrowinset", "arrowinset must be in [0,1)");
    style.arrows.push_back(a);
  }
  return style;
}

// --------------------------------------------------------------------
// Canvas box
// --------------------------------------------------------------------

struct Rect {
  double llx = 0, lly = 0, urx = 0, ury = 0;
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// The page box: the canvas only; content never grows it.
inline Rect bounding_box(const Diagram& d) {
  const Canvas& c = d.canvas;
  return {c.origin.x, c.origin.y, c.origin.x + c.width * c.scale, c.origin.y + c.height * c.scale};
}

/// Rough Helvetica advance estimate (0.6 em per glyph) used to size
/// boxed/oval text; labels are plain text, not typeset.
inline double estimate_text_width(const std::string& s, double size) {
  std::size_t glyphs = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++glyphs; // UTF-8 continuation bytes excluded
  return 0.6 * size * static_cast<double>(glyphs);
}

} // namespace axoforge::model
