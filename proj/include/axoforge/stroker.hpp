#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include <axoforge/model.hpp>

namespace axoforge::stroker {

using geom::Frame;
using geom::Point;
using geom::Polyline;
using model::Color;

// --------------------------------------------------------------------
// Backend-neutral drawables
// --------------------------------------------------------------------

struct StrokeDrawable {
  Polyline path;
  double width = model::kDefaultLineWidth;
  Color color;
};
struct FillDrawable {
  Polyline boundary; // closed: first point == last point
  Color color;
};
struct TextDrawable {
  Point anchor; // horizontal center, baseline
  std::string content;
  double size = model::kDefaultTextSize;
  Color color;
};

using Drawable = std::variant<StrokeDrawable, FillDrawable, TextDrawable>;

// Vertices render as fixed 64-gon discs for deterministic output.
inline constexpr int kVertexSegments = 64;

// Baseline sits this fraction of the font size below the optical
// center of a label.
inline constexpr double kBaselineDrop = 0.35;

inline constexpr double kTextLineHeight = 1.2; // in font sizes

// --------------------------------------------------------------------
// Arrowheads
// --------------------------------------------------------------------

/// Quadrilateral arrowhead centered on the frame point: tip at
/// +L/2 along the tangent, two rear corners at -L/2 offset +-W/2, and a
/// rear notch inset toward the tip.
inline FillDrawable arrowhead(const Frame& f, const model::ArrowSpec& spec, Color color) {
  double L = spec.length * spec.scale;
  double W = spec.width * spec.scale;
  Point t = spec.flipped ? Point{-f.tangent.x, -f.tangent.y} : f.tangent;
  Point n = geom::rot90(t);
  Point tip = f.at + t * (L / 2);
  Point rear1 = tip - t * L + n * (W / 2);
  Point rear2 = tip - t * L - n * (W / 2);
  Point notch = tip - t * (L * (1.0 - spec.inset));
  FillDrawable fill;
  fill.boundary.points = {tip, rear1, notch, rear2, tip};
  fill.boundary.recompute_cumlen();
  fill.color = color;
  return fill;
}

// --------------------------------------------------------------------
// Helpers
// --------------------------------------------------------------------

namespace detail {

inline Polyline circle_polyline(Point center, double r, double tol) {
  return geom::flatten_arc(center, r, 0, 360, tol);
}

inline Polyline ngon(Point center, double r, int segments) {
  Polyline pl;
  pl.points.reserve(segments + 1);
  for (int i = 0; i < segments; ++i) {
    double th = 2.0 * geom::kPi * i / segments;
    pl.points.push_back({center.x + r * std::cos(th), center.y + r * std::sin(th)});
  }
  pl.points.push_back(pl.points.front());
  pl.recompute_cumlen();
  return pl;
}

inline Polyline ellipse_polyline(Point center, double rx, double ry, double rotation_deg,
                                 double tol) {
  double M = std::max(rx, ry); // |p''| bound for the parametric ellipse
  double h = tol > 0 ? std::sqrt(8.0 * tol / M) : geom::kPi / 32;
  int n = std::max(16, static_cast<int>(std::ceil(2.0 * geom::kPi / h)));
  double rot = geom::deg2rad(rotation_deg);
  double cr = std::cos(rot), sr = std::sin(rot);
  Polyline pl;
  pl.points.reserve(n + 1);
  for (int i = 0; i < n; ++i) {
    double t = 2.0 * geom::kPi * i / n;
    double ex = rx * std::cos(t), ey = ry * std::sin(t);
    pl.points.push_back({center.x + cr * ex - sr * ey, center.y + sr * ex + cr * ey});
  }
  pl.points.push_back(pl.points.front());
  pl.recompute_cumlen();
  return pl;
}

inline Polyline box_polyline(const model::BoxPrim& b) {
  double rot = geom::deg2rad(b.rotation);
  double cr = std::cos(rot), sr = std::sin(rot);
  auto corner = [&](double dx, double dy) -> Point {
    return {b.center.x + cr * dx - sr * dy, b.center.y + sr * dx + cr * dy};
  };
  Polyline pl;
  pl.points = {corner(-b.w / 2, -b.h / 2), corner(b.w / 2, -b.h / 2), corner(b.w / 2, b.h / 2),
               corner(-b.w / 2, b.h / 2), corner(-b.w / 2, -b.h / 2)};
  pl.recompute_cumlen();
  return pl;
}

inline Polyline closed(std::vector<Point> pts) {
  if (!pts.empty() && !(pts.front() == pts.back())) pts.push_back(pts.front());
  Polyline pl;
  pl.points = std::move(pts);
  pl.recompute_cumlen();
  return pl;
}

/// Doubling, dashing and arrows for a flattened base curve.
inline void emit_curve(const Polyline& base, const model::LineStyle& style,
                       std::vector<Drawable>& out) {
  std::vector<Polyline> strokes;
  if (style.double_sep) {
    double half = *style.double_sep / 2;
    strokes.push_back(geom::offset(base, +half));
    strokes.push_back(geom::offset(base, -half));
  } else {
    strokes.push_back(base);
  }
  // k comes from the base curve so both strokes of a double dash in step
  long long k = style.dash_size && base.length() > 0
                    ? geom::dash_piece_count(base.length(), *style.dash_size)
                    : 1;
  for (auto& s : strokes) {
    if (style.dash_size && k > 1) {
      for (auto& piece : geom::dash_split_into(s, k))
        out.push_back(StrokeDrawable{std::move(piece), style.width, style.color});
    } else {
      out.push_back(StrokeDrawable{std::move(s), style.width, style.color});
    }
  }
  if (base.length() > 0) { // arrows anchor on the undashed, undoubled base
    for (const auto& a : style.arrows)
      out.push_back(arrowhead(geom::frame_at(base, a.pos), a, style.color));
  }
}

inline void emit_text_lines(Point center, const std::vector<std::string>& lines, double size,
                            Color color, std::vector<Drawable>& out) {
  double n = static_cast<double>(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    double line_center =
        center.y + (n - 1) * kTextLineHeight * size / 2 -
        static_cast<double>(i) * kTextLineHeight * size;
    out.push_back(TextDrawable{{center.x, line_center - kBaselineDrop * size}, lines[i], size,
                               color});
  }
}

struct Realizer {
  const model::LineStyle& style;
  double tol;
  std::vector<Drawable>& out;

  void operator()(const model::LinePrim& p) const {
    Polyline pl;
    pl.points = {p.p1, p.p2};
    pl.recompute_cumlen();
    emit_curve(pl, style, out);
  }
  void operator()(const model::ArcPrim& p) const {
    emit_curve(geom::flatten_arc(p.center, p.radius, p.theta1, p.theta2, tol), style, out);
  }
  void operator()(const model::BezierPrim& p) const {
    emit_curve(geom::flatten_bezier(p.p0, p.p1, p.p2, p.p3, tol), style, out);
  }
  void operator()(const model::WigglyPrim& p) const {
    emit_curve(geom::wiggly_path(p.carrier, p.spec, tol), style, out);
  }
  void operator()(const model::VertexPrim& p) const {
    out.push_back(FillDrawable{ngon(p.center, p.radius, kVertexSegments), style.color});
  }
  void operator()(const model::CircleOutlinePrim& p) const {
    out.push_back(
        StrokeDrawable{circle_polyline(p.center, p.radius, tol), style.width, style.color});
  }
  void operator()(const model::FilledCirclePrim& p) const {
    out.push_back(FillDrawable{circle_polyline(p.center, p.radius, tol), p.fill});
    out.push_back(
        StrokeDrawable{circle_polyline(p.center, p.radius, tol), style.width, style.color});
  }
  void operator()(const model::BoxPrim& p) const {
    Polyline outline = box_polyline(p);
    if (p.fill) out.push_back(FillDrawable{outline, *p.fill});
    out.push_back(StrokeDrawable{std::move(outline), style.width, style.color});
  }
  void operator()(const model::PolygonPrim& p) const {
    Polyline boundary = closed(p.points);
    if (p.fill) {
      out.push_back(FillDrawable{std::move(boundary), *p.fill});
    } else {
      out.push_back(StrokeDrawable{std::move(boundary), style.width, style.color});
    }
  }
  void operator()(const model::OvalPrim& p) const {
    // Flattened outline stroked at uniform width (ovals are not scaled pens).
    Polyline outline = ellipse_polyline(p.center, p.rx, p.ry, p.rotation, tol);
    if (p.fill) out.push_back(FillDrawable{outline, *p.fill});
    out.push_back(StrokeDrawable{std::move(outline), style.width, style.color});
  }
  void operator()(const model::GridPrim& p) const {
    Color c = style.explicit_color ? style.color : model::color_lookup("LightGray");
    double w = p.cell_w * p.cols, h = p.cell_h * p.rows;
    for (int i = 0; i <= p.cols; ++i) {
      double x = p.origin.x + p.cell_w * i;
      Polyline pl;
      pl.points = {{x, p.origin.y}, {x, p.origin.y + h}};
      pl.recompute_cumlen();
      out.push_back(StrokeDrawable{std::move(pl), style.width, c});
    }
    for (int j = 0; j <= p.rows; ++j) {
      double y = p.origin.y + p.cell_h * j;
      Polyline pl;
      pl.points = {{p.origin.x, y}, {p.origin.x + w, y}};
      pl.recompute_cumlen();
      out.push_back(StrokeDrawable{std::move(pl), style.width, c});
    }
  }
  void operator()(const model::TextPrim& p) const {
    out.push_back(TextDrawable{p.anchor, p.content, p.size, style.color});
  }
  void operator()(const model::BoxedTextPrim& p) const {
    model::BoxPrim box{p.center, p.w, p.h, 0, p.fill};
    (*this)(box);
    emit_text_lines(p.center, p.lines, p.size, style.color, out);
  }
  void operator()(const model::OvalTextPrim& p) const {
    // Circumscribing ellipse of the fitted text box.
    constexpr double kSqrt2 = 1.41421356237309504880;
    Polyline outline = ellipse_polyline(p.center, p.w / 2 * kSqrt2, p.h / 2 * kSqrt2, 0, tol);
    if (p.fill) out.push_back(FillDrawable{outline, *p.fill});
    out.push_back(StrokeDrawable{std::move(outline), style.width, style.color});
    emit_text_lines(p.center, p.lines, p.size, style.color, out);
  }
};

} // namespace detail

// --------------------------------------------------------------------
// Realization
// --------------------------------------------------------------------

/// Lowers one styled primitive into drawables; geometry errors are
/// re-thrown with the primitive named.
inline std::vector<Drawable> realize(const model::PrimitiveShape& shape,
                                     const model::LineStyle& style,
                                     double tol = geom::kDefaultTol) {
  std::vector<Drawable> out;
  try {
    std::visit(detail::Realizer{style, tol, out}, shape);
  } catch (const geom::GeomError& e) {
    static constexpr const char* names[] = {"Line",    "Arc",  "Bezier",  "Wiggly", "Vertex",
                                            "Circle",  "Disc", "Box",     "Polygon", "Oval",
                                            "Grid",    "Text", "BoxedText", "OvalText"};
    throw geom::GeomError(e.kind(),
                          std::string(names[shape.index()]) + ": " + e.what());
  }
  return out;
}

/// Scales geometry-defining lengths (coordinates, radii, dimensions,
/// amplitudes); style lengths are left alone.
inline model::PrimitiveShape scale_shape(const model::PrimitiveShape& shape, double s) {
  using namespace model;
  if (s == 1) return shape;
  PrimitiveShape copy = shape;
  std::visit(
      [&](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LinePrim>) {
          p.p1 = p.p1 * s;
          p.p2 = p.p2 * s;
        } else if constexpr (std::is_same_v<T, ArcPrim>) {
          p.center = p.center * s;
          p.radius *= s;
        } else if constexpr (std::is_same_v<T, BezierPrim>) {
          p.p0 = p.p0 * s;
          p.p1 = p.p1 * s;
          p.p2 = p.p2 * s;
          p.p3 = p.p3 * s;
        } else if constexpr (std::is_same_v<T, WigglyPrim>) {
          p.spec.amplitude *= s;
          if (auto* seg = std::get_if<geom::SegmentCarrier>(&p.carrier)) {
            seg->p1 = seg->p1 * s;
            seg->p2 = seg->p2 * s;
          } else if (auto* arc = std::get_if<geom::ArcCarrier>(&p.carrier)) {
            arc->center = arc->center * s;
            arc->radius *= s;
          } else if (auto* cc = std::get_if<geom::CircleCarrier>(&p.carrier)) {
            cc->center = cc->center * s;
            cc->radius *= s;
          }
        } else if constexpr (std::is_same_v<T, VertexPrim> ||
                             std::is_same_v<T, CircleOutlinePrim> ||
                             std::is_same_v<T, FilledCirclePrim>) {
          p.center = p.center * s;
          p.radius *= s;
        } else if constexpr (std::is_same_v<T, BoxPrim>) {
          p.center = p.center * s;
          p.w *= s;
          p.h *= s;
        } else if constexpr (std::is_same_v<T, PolygonPrim>) {
          for (auto& q : p.points) q = q * s;
        } else if constexpr (std::is_same_v<T, OvalPrim>) {
          p.center = p.center * s;
          p.rx *= s;
          p.ry *= s;
        } else if constexpr (std::is_same_v<T, GridPrim>) {
          p.origin = p.origin * s;
          p.cell_w *= s;
          p.cell_h *= s;
        } else if constexpr (std::is_same_v<T, TextPrim>) {
          p.anchor = p.anchor * s;
        } else if constexpr (std::is_same_v<T, BoxedTextPrim> ||
                             std::is_same_v<T, OvalTextPrim>) {
          p.center = p.center * s;
        }
      },
      copy);
  return copy;
}

/// Lowers a whole diagram in item order, applying SetScale to the
/// geometry of subsequent primitives.
inline std::vector<Drawable> realize_diagram(const model::Diagram& d,
                                             double tol = geom::kDefaultTol) {
  std::vector<Drawable> out;
  double scale = d.canvas.scale;
  for (const auto& item : d.items) {
    if (const auto* ss = std::get_if<model::SetScale>(&item)) {
      scale = d.canvas.scale * ss->scale;
    } else if (const auto* prim = std::get_if<model::Primitive>(&item)) {
      auto drawables = realize(scale_shape(prim->shape, scale), prim->style, tol);
      for (auto& dr : drawables) out.push_back(std::move(dr));
    }
  }
  return out;
}

} // namespace axoforge::stroker
