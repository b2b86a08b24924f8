#pragma once

#include <cmath>
#include <string>

#include <axoforge/detail/format.hpp>
#include <axoforge/stroker.hpp>

namespace axoforge::backends {

namespace detail {

using axoforge::detail::fmt_fixed;

inline std::string hex_color(model::Color c) {
  auto channel = [](double v) { return static_cast<int>(std::lround(v * 255.0)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(c.r), channel(c.g), channel(c.b));
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

} // namespace detail

/// SVG 1.1 text, pt as the document unit, y axis flipped so diagram y
/// grows upward. Byte-deterministic for equal inputs.
inline std::string emit_svg(const model::Diagram& d, double tol = geom::kDefaultTol) {
  using detail::fmt_fixed;
  model::Rect box = model::bounding_box(d);
  double w = box.urx - box.llx, h = box.ury - box.lly;

  // Diagram y grows upward; SVG y grows downward.
  auto flip_y = [&](double y) { return box.lly + box.ury - y; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_fixed(w) + "pt\" height=\"" +
         fmt_fixed(h) + "pt\" viewBox=\"" + fmt_fixed(box.llx) + " " + fmt_fixed(box.lly) + " " +
         fmt_fixed(w) + " " + fmt_fixed(h) + "\">\n";

  auto path_data = [&](const geom::Polyline& pl, bool close) {
    std::string data;
    std::size_t n = pl.points.size();
    if (close && n > 1 && pl.points.front() == pl.points.back()) --n;
    for (std::size_t i = 0; i < n; ++i) {
      data += i == 0 ? "M " : " L ";
      data += fmt_fixed(pl.points[i].x) + " " + fmt_fixed(flip_y(pl.points[i].y));
    }
    if (close) data += " Z";
    return data;
  };

  for (const auto& drawable : stroker::realize_diagram(d, tol)) {
    if (const auto* s = std::get_if<stroker::StrokeDrawable>(&drawable)) {
      out += "  <path d=\"" + path_data(s->path, false) + "\" fill=\"none\" stroke=\"" +
             detail::hex_color(s->color) + "\" stroke-width=\"" + fmt_fixed(s->width) +
             "\" stroke-linecap=\"round\"/>\n";
    } else if (const auto* f = std::get_if<stroker::FillDrawable>(&drawable)) {
      out += "  <path d=\"" + path_data(f->boundary, true) + "\" fill=\"" +
             detail::hex_color(f->color) + "\" stroke=\"none\"/>\n";
    } else {
      const auto& t = std::get<stroker::TextDrawable>(drawable);
      out += "  <text x=\"" + fmt_fixed(t.anchor.x) + "\" y=\"" + fmt_fixed(flip_y(t.anchor.y)) +
             "\" font-family=\"Helvetica\" font-size=\"" + fmt_fixed(t.size) +
             "\" text-anchor=\"middle\" fill=\"" + detail::hex_color(t.color) + "\">" +
             detail::xml_escape(t.content) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

} // namespace axoforge::backends
