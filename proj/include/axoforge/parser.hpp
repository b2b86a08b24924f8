#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <axoforge/detail/format.hpp>
#include <axoforge/model.hpp>

namespace axoforge::parser {

using model::Diagram;
using model::DrawState;
using model::Item;
using model::OptionMap;

struct SourceSpan {
  int line = 1;   // 1-based
  int column = 1; // 1-based
  int length = 0;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class ParseError : public Error {
public:
  ParseError(SourceSpan span, const std::string& msg, std::string expected = "")
      : Error("line " + std::to_string(span.line) + ":" + std::to_string(span.column) + ": " +
              msg),
        span_(span),
        message_(msg),
        expected_(std::move(expected)) {}

  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }
  const std::string& expected() const { return expected_; }

private:
  SourceSpan span_;
  std::string message_;
  std::string expected_;
};

// --------------------------------------------------------------------
// Option lists
// --------------------------------------------------------------------

/// Parses a bracket interior: comma-separated `key` or `key=value`
/// entries, whitespace ignored, duplicate keys last-wins. `key=` with
/// an empty value is a BadValue error.
inline OptionMap parse_option_list(std::string_view raw) {
  OptionMap map;
  std::size_t pos = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  while (pos <= raw.size()) {
    std::size_t comma = raw.find(',', pos);
    std::string_view entry =
        trim(raw.substr(pos, comma == std::string_view::npos ? raw.size() - pos : comma - pos));
    if (!entry.empty()) {
      std::size_t eq = entry.find('=');
      if (eq == std::string_view::npos) {
        map[std::string(entry)] = std::nullopt;
      } else {
        std::string key(trim(entry.substr(0, eq)));
        std::string_view value = trim(entry.substr(eq + 1));
        if (value.empty())
          throw model::OptionError(model::OptionErrorKind::BadValue, key,
                                   "option '" + key + "' has an empty value");
        map[key] = std::string(value);
      }
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return map;
}

// --------------------------------------------------------------------
// Line scanner
// --------------------------------------------------------------------

namespace detail {

class LineScanner {
public:
  LineScanner(std::string_view text, int line_no) : text_(text), line_(line_no) {}

  SourceSpan here(int length = 1) const {
    return {line_, static_cast<int>(pos_) + 1, length};
  }

  [[noreturn]] void fail(const std::string& msg, std::string expected = "") const {
    throw ParseError(here(), msg, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // End of command: line end or a TeX comment outside any group.
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size() || text_[pos_] == '%';
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'", std::string(1, c));
    ++pos_;
  }

  bool consume_literal(std::string_view lit) {
    skip_ws();
    if (text_.substr(pos_, lit.size()) == lit) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  /// `\Name` where Name is letters only.
  std::string command_name() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '\\') fail("expected a \\command", "\\");
    std::size_t start = pos_++;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start + 1) fail("expected a command name after '\\'");
    return std::string(text_.substr(start + 1, pos_ - start - 1));
  }

  /// Decimal number: optional sign, digits, optional fraction; no exponent.
  double number() {
    skip_ws();
    std::size_t start = pos_;
    std::size_t p = pos_;
    if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
    std::size_t digits = 0;
    while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p, ++digits;
    if (p < text_.size() && text_[p] == '.') {
      ++p;
      while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p, ++digits;
    }
    if (digits == 0) fail("expected a number");
    std::string token(text_.substr(start, p - start));
    pos_ = p;
    return std::strtod(token.c_str(), nullptr);
  }

  geom::Point point() {
    expect('(');
    double x = number();
    expect(',');
    double y = number();
    expect(')');
    return {x, y};
  }

  std::array<double, 3> triple() {
    expect('(');
    double a = number();
    expect(',');
    double b = number();
    expect(',');
    double c = number();
    expect(')');
    return {a, b, c};
  }

  double paren_single() {
    expect('(');
    double v = number();
    expect(')');
    return v;
  }

  double brace_number() {
    expect('{');
    double v = number();
    expect('}');
    return v;
  }

  int brace_int(int min_value, const char* what) {
    skip_ws();
    SourceSpan sp = here();
    double v = brace_number();
    if (v != std::floor(v) || v < min_value)
      throw ParseError(sp, std::string(what) + " must be an integer >= " +
                               std::to_string(min_value));
    return static_cast<int>(v);
  }

  /// Verbatim brace group with balanced-brace scanning; '%' inside is
  /// literal text.
  std::string brace_text() {
    expect('{');
    std::size_t start = pos_;
    int depth = 1;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '{') ++depth;
      if (c == '}' && --depth == 0) {
        std::string content(text_.substr(start, pos_ - start));
        ++pos_;
        return content;
      }
      ++pos_;
    }
    fail("expected '}'", "}");
  }

  /// Raw bracket interior, or nullopt when the command has no options.
  std::optional<std::string> bracket_raw(SourceSpan* span_out = nullptr) {
    if (!peek_is('[')) return std::nullopt;
    SourceSpan sp = here();
    ++pos_;
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ']') ++pos_;
    if (pos_ >= text_.size()) fail("expected ']'", "]");
    std::string raw(text_.substr(start, pos_ - start));
    ++pos_;
    if (span_out) {
      sp.length = static_cast<int>(pos_ - (start - 1));
      *span_out = sp;
    }
    return raw;
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing characters");
  }

  std::string_view rest() {
    skip_ws();
    return text_.substr(pos_);
  }

private:
  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

inline double positive(LineScanner& sc, double v, SourceSpan sp, const char* what) {
  if (!(v > 0)) throw ParseError(sp, std::string(what) + " must be > 0");
  (void)sc;
  return v;
}

inline double norm_rotation(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0) r += 360.0;
  return r;
}

inline double gray_level(LineScanner& sc, SourceSpan sp, double v) {
  (void)sc;
  if (v < 0 || v > 1) throw ParseError(sp, "gray level must be in [0,1]");
  return v;
}

} // namespace detail

// --------------------------------------------------------------------
// Single-command parsing
// --------------------------------------------------------------------

namespace detail {

struct CommandContext {
  LineScanner& sc;
  const DrawState& state;
  OptionMap opts;
  SourceSpan opts_span;
  double text_size = model::kDefaultTextSize;

  model::LineStyle resolve(model::PrimitiveKind kind) {
    try {
      return model::resolve_options(kind, opts, state);
    } catch (const model::OptionError& e) {
      throw ParseError(opts_span.length ? opts_span : sc.here(0), e.what());
    }
  }

  // Pulls the text-only `size` option out before line-style resolution.
  void take_text_size() {
    auto it = opts.find("size");
    if (it == opts.end()) return;
    if (!it->second)
      throw ParseError(opts_span, "option 'size' needs a value");
    char* end = nullptr;
    double v = std::strtod(it->second->c_str(), &end);
    if (end != it->second->c_str() + it->second->size() || !(v > 0))
      throw ParseError(opts_span, "option 'size': bad value '" + *it->second + "'");
    text_size = v;
    opts.erase(it);
  }
};

inline model::WigglyPrim wiggly_segment(LineScanner& sc, geom::WigglyKind kind) {
  geom::Point p1 = sc.point();
  SourceSpan sp2 = sc.here();
  geom::Point p2 = sc.point();
  if (p1 == p2) throw ParseError(sp2, "carrier endpoints must be distinct");
  SourceSpan spa = sc.here();
  double amp = sc.brace_number();
  positive(sc, amp, spa, "amplitude");
  int count = sc.brace_int(1, kind == geom::WigglyKind::Gluon ? "windings" : "wiggles");
  return {geom::SegmentCarrier{p1, p2}, {kind, amp, count}};
}

inline model::WigglyPrim wiggly_arc(LineScanner& sc, geom::WigglyKind kind) {
  geom::Point c = sc.point();
  SourceSpan spr = sc.here();
  auto [r, t1, t2] = sc.triple();
  positive(sc, r, spr, "radius");
  if (t1 == t2) throw ParseError(spr, "arc opening must be nonzero");
  SourceSpan spa = sc.here();
  double amp = sc.brace_number();
  positive(sc, amp, spa, "amplitude");
  int count = sc.brace_int(1, kind == geom::WigglyKind::Gluon ? "windings" : "wiggles");
  return {geom::ArcCarrier{c, r, t1, t2}, {kind, amp, count}};
}

inline model::BoxedTextPrim boxed_text(geom::Point center, std::vector<std::string> lines,
                                       std::optional<model::Color> fill, double size) {
  model::BoxedTextPrim b;
  b.center = center;
  b.size = size;
  double wmax = 0;
  for (const auto& ln : lines) wmax = std::max(wmax, model::estimate_text_width(ln, size));
  b.w = wmax + 2 * model::kTextPadding;
  b.h = 1.2 * size * static_cast<double>(lines.size()) + 2 * model::kTextPadding;
  b.lines = std::move(lines);
  b.fill = fill;
  return b;
}

inline model::OvalTextPrim oval_text(geom::Point center, std::vector<std::string> lines,
                                     std::optional<model::Color> fill, double size) {
  model::BoxedTextPrim b = boxed_text(center, std::move(lines), fill, size);
  model::OvalTextPrim o;
  o.center = b.center;
  o.w = b.w;
  o.h = b.h;
  o.lines = std::move(b.lines);
  o.fill = b.fill;
  o.size = b.size;
  return o;
}

inline Item parse_command_line(std::string_view line_text, int line_no, const DrawState& state) {
  LineScanner sc(line_text, line_no);
  SourceSpan name_span = sc.here();
  std::string name = sc.command_name();
  name_span.length = static_cast<int>(name.size()) + 1;

  CommandContext ctx{sc, state, {}, {}, model::kDefaultTextSize};
  auto opts_raw = sc.bracket_raw(&ctx.opts_span);
  if (opts_raw) {
    try {
      ctx.opts = parse_option_list(*opts_raw);
    } catch (const model::OptionError& e) {
      throw ParseError(ctx.opts_span, e.what());
    }
  }

  auto finish = [&](Item item) {
    sc.expect_end();
    return item;
  };
  auto no_options = [&]() {
    if (opts_raw) throw ParseError(ctx.opts_span, "'\\" + name + "' takes no options");
  };
  auto style_for = [&](model::PrimitiveKind kind) { return ctx.resolve(kind); };
  auto prim = [&](model::PrimitiveShape shape, model::LineStyle style) {
    return Item(model::Primitive{std::move(shape), std::move(style)});
  };

  using geom::WigglyKind;
  using model::PrimitiveKind;

  // ---- straight lines and their convenience forms ----
  if (name == "Line" || name == "LongArrow" || name == "DashLine" || name == "DoubleLine" ||
      name == "DashDoubleLine" || name == "DashLongArrow" || name == "DoubleLongArrow") {
    geom::Point p1 = sc.point();
    geom::Point p2 = sc.point();
    bool dash = name.find("Dash") != std::string::npos;
    bool dbl = name.find("Double") != std::string::npos;
    bool arrow_at_end = name.find("LongArrow") != std::string::npos;
    std::optional<double> dsize, sep;
    if (dash) {
      SourceSpan sp = sc.here();
      dsize = positive(sc, sc.brace_number(), sp, "dsize");
    }
    if (dbl) {
      SourceSpan sp = sc.here();
      sep = positive(sc, sc.brace_number(), sp, "sep");
    }
    model::LineStyle style = style_for(PrimitiveKind::Line);
    if (dash) style.dash_size = dsize;
    if (dbl) style.double_sep = sep;
    if (arrow_at_end) {
      model::ArrowSpec a;
      a.pos = 1.0;
      style.arrows.push_back(a);
    }
    return finish(prim(model::LinePrim{p1, p2}, std::move(style)));
  }

  // ---- arcs ----
  if (name == "Arc" || name == "CArc" || name == "DashArc") {
    geom::Point c = sc.point();
    SourceSpan spr = sc.here();
    auto [r, t1, t2] = sc.triple();
    positive(sc, r, spr, "radius");
    std::optional<double> dsize;
    if (name == "DashArc") {
      SourceSpan sp = sc.here();
      dsize = positive(sc, sc.brace_number(), sp, "dsize");
    }
    model::LineStyle style = style_for(PrimitiveKind::Arc);
    if (dsize) style.dash_size = dsize;
    return finish(prim(model::ArcPrim{c, r, t1, t2}, std::move(style)));
  }

  // ---- Bezier ----
  if (name == "Bezier" || name == "DashBezier") {
    geom::Point p0 = sc.point();
    geom::Point p1 = sc.point();
    geom::Point p2 = sc.point();
    geom::Point p3 = sc.point();
    std::optional<double> dsize;
    if (name == "DashBezier") {
      SourceSpan sp = sc.here();
      dsize = positive(sc, sc.brace_number(), sp, "dsize");
    }
    model::LineStyle style = style_for(PrimitiveKind::Bezier);
    if (dsize) style.dash_size = dsize;
    return finish(prim(model::BezierPrim{p0, p1, p2, p3}, std::move(style)));
  }

  // ---- wiggly lines ----
  if (name == "Gluon")
    return finish(prim(wiggly_segment(sc, WigglyKind::Gluon), style_for(PrimitiveKind::Wiggly)));
  if (name == "GluonArc" || name == "GlueArc")
    return finish(prim(wiggly_arc(sc, WigglyKind::Gluon), style_for(PrimitiveKind::Wiggly)));
  if (name == "GluonCircle") {
    geom::Point c = sc.point();
    SourceSpan spr = sc.here();
    double r = positive(sc, sc.paren_single(), spr, "radius");
    SourceSpan spa = sc.here();
    double amp = positive(sc, sc.brace_number(), spa, "amplitude");
    int count = sc.brace_int(1, "windings");
    return finish(prim(model::WigglyPrim{geom::CircleCarrier{c, r},
                                         {WigglyKind::Gluon, amp, count}},
                       style_for(PrimitiveKind::Wiggly)));
  }
  if (name == "Photon")
    return finish(prim(wiggly_segment(sc, WigglyKind::Photon), style_for(PrimitiveKind::Wiggly)));
  if (name == "PhotonArc")
    return finish(prim(wiggly_arc(sc, WigglyKind::Photon), style_for(PrimitiveKind::Wiggly)));
  if (name == "ZigZag")
    return finish(prim(wiggly_segment(sc, WigglyKind::Zigzag), style_for(PrimitiveKind::Wiggly)));

  // ---- dots, circles, boxes ----
  if (name == "Vertex") {
    geom::Point c = sc.point();
    SourceSpan sp = sc.here();
    double r = positive(sc, sc.brace_number(), sp, "radius");
    return finish(prim(model::VertexPrim{c, r}, style_for(PrimitiveKind::Vertex)));
  }
  if (name == "ECirc") {
    geom::Point c = sc.point();
    SourceSpan sp = sc.here();
    double r = positive(sc, sc.brace_number(), sp, "radius");
    return finish(prim(model::CircleOutlinePrim{c, r}, style_for(PrimitiveKind::Circle)));
  }
  if (name == "GCirc") {
    geom::Point c = sc.point();
    SourceSpan sp = sc.here();
    double r = positive(sc, sc.brace_number(), sp, "radius");
    SourceSpan spg = sc.here();
    double g = gray_level(sc, spg, sc.brace_number());
    return finish(prim(model::FilledCirclePrim{c, r, model::Color::gray(g)},
                       style_for(PrimitiveKind::Circle)));
  }
  if (name == "EBoxc" || name == "Boxc" || name == "GBoxc") {
    geom::Point c = sc.point();
    SourceSpan sp = sc.here();
    auto read_wh = [&]() {
      sc.expect('(');
      double w = sc.number();
      sc.expect(',');
      double h = sc.number();
      sc.expect(')');
      positive(sc, w, sp, "box width");
      positive(sc, h, sp, "box height");
      return std::pair{w, h};
    };
    auto [w, h] = read_wh();
    std::optional<model::Color> fill;
    if (name == "Boxc") fill = model::kWhite;
    if (name == "GBoxc") {
      SourceSpan spg = sc.here();
      fill = model::Color::gray(gray_level(sc, spg, sc.brace_number()));
    }
    return finish(prim(model::BoxPrim{c, w, h, 0, fill}, style_for(PrimitiveKind::Box)));
  }
  if (name == "RBox") {
    geom::Point c = sc.point();
    SourceSpan sp = sc.here();
    sc.expect('(');
    double w = sc.number();
    sc.expect(',');
    double h = sc.number();
    sc.expect(')');
    positive(sc, w, sp, "box width");
    positive(sc, h, sp, "box height");
    double rot = norm_rotation(sc.brace_number());
    return finish(prim(model::BoxPrim{c, w, h, rot, {}}, style_for(PrimitiveKind::Box)));
  }

  // ---- polygons ----
  if (name == "Polygon" || name == "FPolygon") {
    std::vector<geom::Point> pts;
    SourceSpan sp = sc.here();
    while (sc.peek_is('(')) pts.push_back(sc.point());
    if (pts.size() < 3) throw ParseError(sp, "polygon needs at least 3 points");
    model::LineStyle style = style_for(PrimitiveKind::Polygon);
    std::optional<model::Color> fill;
    if (name == "FPolygon") fill = style.color;
    return finish(prim(model::PolygonPrim{std::move(pts), fill}, std::move(style)));
  }

  // ---- ovals ----
  if (name == "Oval" || name == "GOval") {
    geom::Point c = sc.point();
    SourceSpan sp = sc.here();
    sc.expect('(');
    double rx = sc.number();
    sc.expect(',');
    double ry = sc.number();
    sc.expect(')');
    positive(sc, rx, sp, "oval rx");
    positive(sc, ry, sp, "oval ry");
    double rot = norm_rotation(sc.brace_number());
    std::optional<model::Color> fill;
    if (name == "GOval") {
      SourceSpan spg = sc.here();
      fill = model::Color::gray(gray_level(sc, spg, sc.brace_number()));
    }
    return finish(prim(model::OvalPrim{c, rx, ry, rot, fill}, style_for(PrimitiveKind::Oval)));
  }

  // ---- grid ----
  if (name == "AxoGrid") {
    geom::Point o = sc.point();
    SourceSpan sp = sc.here();
    sc.expect('(');
    double cw = sc.number();
    sc.expect(',');
    double ch = sc.number();
    sc.expect(')');
    positive(sc, cw, sp, "cell width");
    positive(sc, ch, sp, "cell height");
    int cols = sc.brace_int(1, "columns");
    int rows = sc.brace_int(1, "rows");
    return finish(
        prim(model::GridPrim{o, cw, ch, cols, rows}, style_for(PrimitiveKind::Grid)));
  }

  // ---- text ----
  if (name == "Text") {
    ctx.take_text_size();
    geom::Point p = sc.point();
    std::string content = sc.brace_text();
    return finish(prim(model::TextPrim{p, std::move(content), ctx.text_size},
                       style_for(PrimitiveKind::Text)));
  }
  if (name == "BText" || name == "CText") {
    ctx.take_text_size();
    geom::Point c = sc.point();
    std::string content = sc.brace_text();
    model::LineStyle style = style_for(PrimitiveKind::Text);
    if (name == "BText")
      return finish(
          prim(boxed_text(c, {std::move(content)}, model::kWhite, ctx.text_size), std::move(style)));
    return finish(
        prim(oval_text(c, {std::move(content)}, model::kWhite, ctx.text_size), std::move(style)));
  }
  if (name == "GText") {
    ctx.take_text_size();
    geom::Point c = sc.point();
    SourceSpan spg = sc.here();
    double g = gray_level(sc, spg, sc.brace_number());
    std::string content = sc.brace_text();
    return finish(prim(boxed_text(c, {std::move(content)}, model::Color::gray(g), ctx.text_size),
                       style_for(PrimitiveKind::Text)));
  }
  if (name == "BTwoText" || name == "CTwoText") {
    ctx.take_text_size();
    geom::Point c = sc.point();
    std::string l1 = sc.brace_text();
    std::string l2 = sc.brace_text();
    model::LineStyle style = style_for(PrimitiveKind::Text);
    if (name == "BTwoText")
      return finish(prim(boxed_text(c, {std::move(l1), std::move(l2)}, model::kWhite,
                                    ctx.text_size),
                         std::move(style)));
    return finish(prim(oval_text(c, {std::move(l1), std::move(l2)}, model::kWhite, ctx.text_size),
                       std::move(style)));
  }
  if (name == "GTwoText") {
    ctx.take_text_size();
    geom::Point c = sc.point();
    SourceSpan spg = sc.here();
    double g = gray_level(sc, spg, sc.brace_number());
    std::string l1 = sc.brace_text();
    std::string l2 = sc.brace_text();
    return finish(prim(boxed_text(c, {std::move(l1), std::move(l2)}, model::Color::gray(g),
                                  ctx.text_size),
                       style_for(PrimitiveKind::Text)));
  }

  // ---- state changes ----
  if (name == "SetColor") {
    no_options();
    SourceSpan sp = sc.here();
    std::string cname = sc.brace_text();
    try {
      model::Color rgb = model::color_lookup(cname);
      return finish(Item(model::SetColor{std::move(cname), rgb}));
    } catch (const model::UnknownColor& e) {
      throw ParseError(sp, e.what());
    }
  }
  if (name == "SetWidth") {
    no_options();
    SourceSpan sp = sc.here();
    double w = positive(sc, sc.brace_number(), sp, "width");
    return finish(Item(model::SetWidth{w}));
  }
  if (name == "SetScale") {
    no_options();
    SourceSpan sp = sc.here();
    double s = positive(sc, sc.brace_number(), sp, "scale");
    return finish(Item(model::SetScale{s}));
  }

  throw ParseError(name_span, "unknown command '\\" + name + "'");
}

} // namespace detail

/// Parses one command line against the given drawing state. The state
/// is not modified; callers apply returned state changes themselves.
inline Item parse_command(std::string_view line, const DrawState& state, int line_no = 1) {
  return detail::parse_command_line(line, line_no, state);
}

// --------------------------------------------------------------------
// Documents
// --------------------------------------------------------------------

namespace detail {

inline bool blank_or_comment(std::string_view line) {
  for (char c : line) {
    if (c == '%') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

} // namespace detail

/// Parses a full `.axo` document: an axopicture header, one command per
/// line, and the matching end marker. `%` comments and blank lines are
/// ignored.
inline Diagram parse_document(std::string_view src) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= src.size()) {
    std::size_t nl = src.find('\n', start);
    std::string_view line =
        src.substr(start, nl == std::string_view::npos ? src.size() - start : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }

  Diagram d;
  DrawState state;
  bool saw_header = false, saw_end = false;
  int last_line = static_cast<int>(lines.size());

  for (std::size_t i = 0; i < lines.size(); ++i) {
    int line_no = static_cast<int>(i) + 1;
    std::string_view line = lines[i];
    if (detail::blank_or_comment(line)) continue;

    detail::LineScanner sc(line, line_no);
    if (!saw_header) {
      if (!sc.consume_literal("\\begin{axopicture}"))
        sc.fail("expected \\begin{axopicture}");
      SourceSpan sp = sc.here();
      geom::Point wh = sc.point();
      if (!(wh.x > 0) || !(wh.y > 0)) throw ParseError(sp, "canvas size must be positive");
      d.canvas.width = wh.x;
      d.canvas.height = wh.y;
      if (sc.peek_is('(')) d.canvas.origin = sc.point();
      saw_header = true;
      if (sc.consume_literal("\\end{axopicture}")) {
        saw_end = true;
      }
      sc.expect_end();
      continue;
    }
    if (saw_end) sc.fail("content after \\end{axopicture}");
    if (sc.consume_literal("\\end{axopicture}")) {
      saw_end = true;
      sc.expect_end();
      continue;
    }
    Item item = detail::parse_command_line(line, line_no, state);
    model::apply_state_change(state, item);
    d.items.push_back(std::move(item));
  }

  if (!saw_header)
    throw ParseError({std::max(last_line, 1), 1, 0}, "expected \\begin{axopicture}");
  if (!saw_end)
    throw ParseError({std::max(last_line, 1), 1, 0}, "missing \\end{axopicture}");
  return d;
}

// --------------------------------------------------------------------
// Serialization (canonical source form)
// --------------------------------------------------------------------

namespace detail {

using axoforge::detail::fmt_sig;

inline std::string fmt_point(geom::Point p) {
  return "(" + fmt_sig(p.x) + "," + fmt_sig(p.y) + ")";
}

inline std::string fmt_brace(double v) { return "{" + fmt_sig(v) + "}"; }

inline double fill_gray(model::Color c) {
  if (c.r == c.g && c.g == c.b) return c.r;
  return 0.2126 * c.r + 0.7152 * c.g + 0.0722 * c.b; // API-only colors degrade to luma
}

/// Minimal option list reproducing `style` when re-resolved against
/// `state`; keys come out sorted because OptionMap is ordered.
inline std::string style_options(const model::LineStyle& style, const DrawState& state,
                                 double text_size = model::kDefaultTextSize) {
  OptionMap opts;
  if (style.width != state.width) opts["width"] = fmt_sig(style.width);
  if (style.explicit_color || !(style.color == state.color)) {
    if (const char* nm = model::color_name(style.color)) opts["color"] = nm;
  }
  if (style.double_sep) {
    opts["double"] = std::nullopt;
    if (*style.double_sep != model::kDefaultDoubleSep) opts["sep"] = fmt_sig(*style.double_sep);
  }
  if (style.dash_size) {
    opts["dash"] = std::nullopt;
    if (*style.dash_size != model::kDefaultDashSize) opts["dsize"] = fmt_sig(*style.dash_size);
  }
  if (!style.arrows.empty()) {
    // Only one arrow is expressible in an option list (last-wins map).
    const model::ArrowSpec& a = style.arrows.front();
    opts["arrow"] = std::nullopt;
    if (a.pos != model::kDefaultArrowPos) opts["arrowpos"] = fmt_sig(a.pos);
    if (a.length != model::kDefaultArrowLength) opts["arrowlength"] = fmt_sig(a.length);
    if (a.width != model::kDefaultArrowWidth) opts["arrowwidth"] = fmt_sig(a.width);
    if (a.inset != model::kDefaultArrowInset) opts["arrowinset"] = fmt_sig(a.inset);
    if (a.scale != 1.0) opts["arrowscale"] = fmt_sig(a.scale);
    if (a.flipped) opts["flip"] = std::nullopt;
  }
  if (text_size != model::kDefaultTextSize) opts["size"] = fmt_sig(text_size);

  if (opts.empty()) return "";
  std::string out = "[";
  bool first = true;
  for (const auto& [k, v] : opts) {
    if (!first) out += ",";
    first = false;
    out += k;
    if (v) out += "=" + *v;
  }
  out += "]";
  return out;
}

struct PrimitiveSerializer {
  const model::LineStyle& style;
  const DrawState& state;

  std::string opts(double text_size = model::kDefaultTextSize) const {
    return style_options(style, state, text_size);
  }

  std::string operator()(const model::LinePrim& p) const {
    return "\\Line" + opts() + fmt_point(p.p1) + fmt_point(p.p2);
  }
  std::string operator()(const model::ArcPrim& p) const {
    return "\\Arc" + opts() + fmt_point(p.center) + "(" + fmt_sig(p.radius) + "," +
           fmt_sig(p.theta1) + "," + fmt_sig(p.theta2) + ")";
  }
  std::string operator()(const model::BezierPrim& p) const {
    return "\\Bezier" + opts() + fmt_point(p.p0) + fmt_point(p.p1) + fmt_point(p.p2) +
           fmt_point(p.p3);
  }
  std::string operator()(const model::WigglyPrim& p) const {
    std::string tail = fmt_brace(p.spec.amplitude) + "{" + fmt_sig(p.spec.count) + "}";
    const char* base = p.spec.kind == geom::WigglyKind::Gluon    ? "Gluon"
                       : p.spec.kind == geom::WigglyKind::Photon ? "Photon"
                                                                 : "ZigZag";
    if (const auto* seg = std::get_if<geom::SegmentCarrier>(&p.carrier))
      return std::string("\\") + base + opts() + fmt_point(seg->p1) + fmt_point(seg->p2) + tail;
    if (const auto* arc = std::get_if<geom::ArcCarrier>(&p.carrier)) {
      std::string arcspec = fmt_point(arc->center) + "(" + fmt_sig(arc->radius) + "," +
                            fmt_sig(arc->theta1) + "," + fmt_sig(arc->theta2) + ")";
      if (p.spec.kind == geom::WigglyKind::Gluon) return "\\GluonArc" + opts() + arcspec + tail;
      if (p.spec.kind == geom::WigglyKind::Photon) return "\\PhotonArc" + opts() + arcspec + tail;
      // No zigzag-arc command exists; keep the wiggle, degrade the carrier.
      return "\\ZigZag" + opts() +
             fmt_point(geom::point_on_circle(arc->center, arc->radius, arc->theta1)) +
             fmt_point(geom::point_on_circle(arc->center, arc->radius, arc->theta2)) + tail;
    }
    const auto& cc = std::get<geom::CircleCarrier>(p.carrier);
    if (p.spec.kind == geom::WigglyKind::Gluon)
      return "\\GluonCircle" + opts() + fmt_point(cc.center) + "(" + fmt_sig(cc.radius) + ")" +
             tail;
    const char* arcname = p.spec.kind == geom::WigglyKind::Photon ? "\\PhotonArc" : "\\ZigZag";
    return std::string(arcname) + opts() + fmt_point(cc.center) + "(" + fmt_sig(cc.radius) +
           ",0,360)" + tail;
  }
  std::string operator()(const model::VertexPrim& p) const {
    return "\\Vertex" + opts() + fmt_point(p.center) + fmt_brace(p.radius);
  }
  std::string operator()(const model::CircleOutlinePrim& p) const {
    return "\\ECirc" + opts() + fmt_point(p.center) + fmt_brace(p.radius);
  }
  std::string operator()(const model::FilledCirclePrim& p) const {
    return "\\GCirc" + opts() + fmt_point(p.center) + fmt_brace(p.radius) +
           fmt_brace(fill_gray(p.fill));
  }
  std::string operator()(const model::BoxPrim& p) const {
    std::string wh = "(" + fmt_sig(p.w) + "," + fmt_sig(p.h) + ")";
    if (p.fill)
      return "\\GBoxc" + opts() + fmt_point(p.center) + wh + fmt_brace(fill_gray(*p.fill));
    if (p.rotation != 0)
      return "\\RBox" + opts() + fmt_point(p.center) + wh + fmt_brace(p.rotation);
    return "\\EBoxc" + opts() + fmt_point(p.center) + wh;
  }
  std::string operator()(const model::PolygonPrim& p) const {
    std::string out = p.fill ? "\\FPolygon" : "\\Polygon";
    out += opts();
    for (geom::Point q : p.points) out += fmt_point(q);
    return out;
  }
  std::string operator()(const model::OvalPrim& p) const {
    std::string core = fmt_point(p.center) + "(" + fmt_sig(p.rx) + "," + fmt_sig(p.ry) + ")" +
                       fmt_brace(p.rotation);
    if (p.fill) return "\\GOval" + opts() + core + fmt_brace(fill_gray(*p.fill));
    return "\\Oval" + opts() + core;
  }
  std::string operator()(const model::GridPrim& p) const {
    return "\\AxoGrid" + opts() + fmt_point(p.origin) + "(" + fmt_sig(p.cell_w) + "," +
           fmt_sig(p.cell_h) + ")" + "{" + fmt_sig(p.cols) + "}{" + fmt_sig(p.rows) + "}";
  }
  std::string operator()(const model::TextPrim& p) const {
    return "\\Text" + opts(p.size) + fmt_point(p.anchor) + "{" + p.content + "}";
  }
  std::string operator()(const model::BoxedTextPrim& p) const {
    bool white = p.fill && *p.fill == model::kWhite;
    std::string body = fmt_point(p.center);
    if (!white && p.fill) body += fmt_brace(fill_gray(*p.fill));
    for (const auto& ln : p.lines) body += "{" + ln + "}";
    bool two = p.lines.size() == 2;
    const char* nm = white ? (two ? "\\BTwoText" : "\\BText") : (two ? "\\GTwoText" : "\\GText");
    if (!p.fill) nm = two ? "\\BTwoText" : "\\BText"; // API-only; degrade to white
    return nm + opts(p.size) + body;
  }
  std::string operator()(const model::OvalTextPrim& p) const {
    std::string body = fmt_point(p.center);
    for (const auto& ln : p.lines) body += "{" + ln + "}";
    const char* nm = p.lines.size() == 2 ? "\\CTwoText" : "\\CText";
    return nm + opts(p.size) + body;
  }
};

} // namespace detail

/// Canonical source form: one item per line, options sorted by key,
/// numbers with up to 6 significant digits. Parsing the result yields
/// an equal Diagram for every grammar-expressible input.
inline std::string serialize(const Diagram& d) {
  using axoforge::detail::fmt_sig;
  std::string out = "\\begin{axopicture}(" + fmt_sig(d.canvas.width) + "," +
                    fmt_sig(d.canvas.height) + ")";
  if (!(d.canvas.origin == geom::Point{0, 0}))
    out += "(" + fmt_sig(d.canvas.origin.x) + "," + fmt_sig(d.canvas.origin.y) + ")";
  out += "\n";

  DrawState state;
  for (const Item& item : d.items) {
    if (const auto* sc = std::get_if<model::SetColor>(&item)) {
      std::string nm = sc->name;
      if (nm.empty()) {
        const char* found = model::color_name(sc->rgb);
        nm = found ? found : "Black";
      }
      out += "\\SetColor{" + nm + "}\n";
    } else if (const auto* sw = std::get_if<model::SetWidth>(&item)) {
      out += "\\SetWidth{" + fmt_sig(sw->width) + "}\n";
    } else if (const auto* ss = std::get_if<model::SetScale>(&item)) {
      out += "\\SetScale{" + fmt_sig(ss->scale) + "}\n";
    } else {
      const auto& prim = std::get<model::Primitive>(item);
      out += std::visit(detail::PrimitiveSerializer{prim.style, state}, prim.shape);
      out += "\n";
    }
    model::apply_state_change(state, item);
  }
  out += "\\end{axopicture}\n";
  return out;
}

} // namespace axoforge::parser
