#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <axoforge/parser.hpp>
#include <axoforge/pdf.hpp>

namespace axoforge::compat {

/// One deferred drawing command: `id ; xscale ; yscale ; command`.
struct Ax1Entry {
  long long id = 0;
  double xscale = 1;
  double yscale = 1;
  std::string command;
  friend bool operator==(const Ax1Entry&, const Ax1Entry&) = default;
};

enum class Ax1ErrorKind { Format, DuplicateId, Entry };

class Ax1Error : public Error {
public:
  Ax1Error(Ax1ErrorKind kind, int line, const std::string& msg)
      : Error(msg), kind_(kind), line_(line) {}
  Ax1ErrorKind kind() const { return kind_; }
  int line() const { return line_; }

private:
  Ax1ErrorKind kind_;
  int line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline double parse_positive(std::string_view field, int line_no, const char* what) {
  std::string token(trim(field));
  char* end = nullptr;
  double v = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size() || !(v > 0))
    throw Ax1Error(Ax1ErrorKind::Format, line_no,
                   ".ax1 line " + std::to_string(line_no) + ": bad " + what + " '" + token + "'");
  return v;
}

} // namespace detail

/// Reads an .ax1 file; `%` comment lines and blank lines are skipped.
inline std::vector<Ax1Entry> read_ax1(std::string_view src) {
  std::vector<Ax1Entry> entries;
  std::set<long long> seen;
  std::size_t start = 0;
  int line_no = 0;
  while (start <= src.size()) {
    std::size_t nl = src.find('\n', start);
    std::string_view line =
        src.substr(start, nl == std::string_view::npos ? src.size() - start : nl - start);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string_view t = detail::trim(line);
    if (!t.empty() && t.front() != '%') {
      Ax1Entry entry;
      std::size_t s1 = line.find(';');
      std::size_t s2 = s1 == std::string_view::npos ? s1 : line.find(';', s1 + 1);
      std::size_t s3 = s2 == std::string_view::npos ? s2 : line.find(';', s2 + 1);
      if (s3 == std::string_view::npos)
        throw Ax1Error(Ax1ErrorKind::Format, line_no,
                       ".ax1 line " + std::to_string(line_no) +
                           ": expected 'id ; xscale ; yscale ; command'");
      std::string id_token(detail::trim(line.substr(0, s1)));
      char* end = nullptr;
      long long id = std::strtoll(id_token.c_str(), &end, 10);
      if (id_token.empty() || end != id_token.c_str() + id_token.size() || id <= 0)
        throw Ax1Error(Ax1ErrorKind::Format, line_no,
                       ".ax1 line " + std::to_string(line_no) + ": bad id '" + id_token + "'");
      if (!seen.insert(id).second)
        throw Ax1Error(Ax1ErrorKind::DuplicateId, line_no,
                       ".ax1 line " + std::to_string(line_no) + ": duplicate id " +
                           std::to_string(id));
      entry.id = id;
      entry.xscale = detail::parse_positive(line.substr(s1 + 1, s2 - s1 - 1), line_no, "xscale");
      entry.yscale = detail::parse_positive(line.substr(s2 + 1, s3 - s2 - 1), line_no, "yscale");
      entry.command = std::string(detail::trim(line.substr(s3 + 1)));
      entries.push_back(std::move(entry));
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return entries;
}

namespace detail {

inline void scale_polyline(geom::Polyline& pl, double sx, double sy) {
  for (auto& p : pl.points) {
    p.x *= sx;
    p.y *= sy;
  }
  pl.recompute_cumlen();
}

struct BBox {
  double llx = 0, lly = 0, urx = 0, ury = 0;
  bool any = false;

  void grow(geom::Point p) {
    if (!any) {
      llx = urx = p.x;
      lly = ury = p.y;
      any = true;
    } else {
      llx = std::min(llx, p.x);
      lly = std::min(lly, p.y);
      urx = std::max(urx, p.x);
      ury = std::max(ury, p.y);
    }
  }
};

} // namespace detail

/// Processes one .ax1 text into the matching .ax2 text: per entry, the
/// command is parsed against a default drawing state, realized, scaled
/// by (xscale, yscale), and emitted as PDF content-stream operators in
/// bp with a bp bounding box: `id ; llx lly urx ury ; payload`.
inline std::string process_ax1(std::string_view src) {
  using axoforge::detail::fmt_fixed;
  std::string out;
  for (const Ax1Entry& entry : read_ax1(src)) {
    std::vector<stroker::Drawable> drawables;
    try {
      model::DrawState state;
      model::Item item = parser::parse_command(entry.command, state);
      if (const auto* prim = std::get_if<model::Primitive>(&item))
        drawables = stroker::realize(prim->shape, prim->style);
    } catch (const Error& e) {
      throw Ax1Error(Ax1ErrorKind::Entry, 0,
                     "entry " + std::to_string(entry.id) + ": " + e.what());
    }

    detail::BBox bbox;
    for (auto& drawable : drawables) {
      if (auto* s = std::get_if<stroker::StrokeDrawable>(&drawable)) {
        detail::scale_polyline(s->path, entry.xscale, entry.yscale);
        for (auto p : s->path.points) bbox.grow(p);
      } else if (auto* f = std::get_if<stroker::FillDrawable>(&drawable)) {
        detail::scale_polyline(f->boundary, entry.xscale, entry.yscale);
        for (auto p : f->boundary.points) bbox.grow(p);
      } else {
        auto& t = std::get<stroker::TextDrawable>(drawable);
        t.anchor.x *= entry.xscale;
        t.anchor.y *= entry.yscale;
        double half_w = model::estimate_text_width(t.content, t.size) / 2;
        bbox.grow({t.anchor.x - half_w, t.anchor.y - 0.25 * t.size});
        bbox.grow({t.anchor.x + half_w, t.anchor.y + 0.75 * t.size});
      }
    }

    auto ops = backends::detail::content_ops(drawables, {0, 0});
    out += std::to_string(entry.id) + " ; " + fmt_fixed(backends::pt_to_bp(bbox.llx)) + " " +
           fmt_fixed(backends::pt_to_bp(bbox.lly)) + " " + fmt_fixed(backends::pt_to_bp(bbox.urx)) + " " +
           fmt_fixed(backends::pt_to_bp(bbox.ury)) + " ; " + backends::detail::join_ops(ops, ' ') + "\n";
  }
  return out;
}

} // namespace axoforge::compat
