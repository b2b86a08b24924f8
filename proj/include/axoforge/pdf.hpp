#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <axoforge/detail/format.hpp>
#include <axoforge/stroker.hpp>

namespace axoforge::backends {

/// TeX pt (1/72.27 in) to PostScript/PDF bp (1/72 in).
inline double pt_to_bp(double x) { return x * 72.0 / 72.27; }

namespace detail {

using axoforge::detail::fmt_fixed;

inline std::string pdf_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '(' || c == ')' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

/// One content-stream operator: its operands followed by the operator
/// token. Kept as token groups so the .ax2 payload and the PDF stream
/// can be compared token-for-token.
using OpGroup = std::vector<std::string>;

/// Lowers drawables to PDF path/text operators. Coordinates shift by
/// -origin (pt) and convert to bp; widths and sizes convert too.
inline std::vector<OpGroup> content_ops(const std::vector<stroker::Drawable>& drawables,
                                        geom::Point origin) {
  std::vector<OpGroup> ops;
  auto bpx = [&](double x) { return fmt_fixed(pt_to_bp(x - origin.x)); };
  auto bpy = [&](double y) { return fmt_fixed(pt_to_bp(y - origin.y)); };
  auto bplen = [&](double v) { return fmt_fixed(pt_to_bp(v)); };
  auto color3 = [](model::Color c) {
    return std::array<std::string, 3>{fmt_fixed(c.r), fmt_fixed(c.g), fmt_fixed(c.b)};
  };

  for (const auto& drawable : drawables) {
    if (const auto* s = std::get_if<stroker::StrokeDrawable>(&drawable)) {
      auto [r, g, b] = color3(s->color);
      ops.push_back({bplen(s->width), "w"});
      ops.push_back({r, g, b, "RG"});
      for (std::size_t i = 0; i < s->path.points.size(); ++i) {
        geom::Point p = s->path.points[i];
        ops.push_back({bpx(p.x), bpy(p.y), i == 0 ? "m" : "l"});
      }
      ops.push_back({"S"});
    } else if (const auto* f = std::get_if<stroker::FillDrawable>(&drawable)) {
      auto [r, g, b] = color3(f->color);
      ops.push_back({r, g, b, "rg"});
      std::size_t n = f->boundary.points.size();
      if (n > 1 && f->boundary.points.front() == f->boundary.points.back()) --n;
      for (std::size_t i = 0; i < n; ++i) {
        geom::Point p = f->boundary.points[i];
        ops.push_back({bpx(p.x), bpy(p.y), i == 0 ? "m" : "l"});
      }
      ops.push_back({"f"});
    } else {
      const auto& t = std::get<stroker::TextDrawable>(drawable);
      auto [r, g, b] = color3(t.color);
      double left = t.anchor.x - model::estimate_text_width(t.content, t.size) / 2;
      ops.push_back({r, g, b, "rg"});
      ops.push_back({"BT"});
      ops.push_back({"/F1", bplen(t.size), "Tf"});
      ops.push_back({bpx(left), bpy(t.anchor.y), "Td"});
      ops.push_back({"(" + pdf_escape(t.content) + ")", "Tj"});
      ops.push_back({"ET"});
    }
  }
  return ops;
}

inline std::string join_ops(const std::vector<OpGroup>& ops, char group_sep) {
  std::string out;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (i) out += group_sep;
    for (std::size_t j = 0; j < ops[i].size(); ++j) {
      if (j) out += ' ';
      out += ops[i][j];
    }
  }
  return out;
}

} // namespace detail

/// Minimal single-page PDF 1.4: catalog, page tree, one uncompressed
/// content stream, the built-in Helvetica resource, a byte-exact xref
/// table and trailer.
inline std::string emit_pdf(const model::Diagram& d, double tol = geom::kDefaultTol) {
  using axoforge::detail::fmt_fixed;
  model::Rect box = model::bounding_box(d);
  std::string media_w = fmt_fixed(pt_to_bp(box.urx - box.llx));
  std::string media_h = fmt_fixed(pt_to_bp(box.ury - box.lly));

  auto ops = detail::content_ops(stroker::realize_diagram(d, tol), {box.llx, box.lly});
  std::string content = detail::join_ops(ops, '\n');
  if (!content.empty()) content += '\n';

  std::string pdf = "%PDF-1.4\n%\xE2\xE3\xCF\xD3\n";
  std::vector<std::size_t> offsets; // byte offset of each "N 0 obj", ids dense from 1

  auto begin_obj = [&]() {
    offsets.push_back(pdf.size());
    pdf += std::to_string(offsets.size()) + " 0 obj\n";
  };
  auto end_obj = [&]() { pdf += "endobj\n"; };

  begin_obj(); // 1: catalog
  pdf += "<< /Type /Catalog /Pages 2 0 R >>\n";
  end_obj();
  begin_obj(); // 2: page tree
  pdf += "<< /Type /Pages /Kids [3 0 R] /Count 1 >>\n";
  end_obj();
  begin_obj(); // 3: the page
  pdf += "<< /Type /Page /Parent 2 0 R /MediaBox [0 0 " + media_w + " " + media_h +
         "] /Resources << /Font << /F1 5 0 R >> >> /Contents 4 0 R >>\n";
  end_obj();
  begin_obj(); // 4: content stream
  pdf += "<< /Length " + std::to_string(content.size()) + " >>\nstream\n";
  pdf += content;
  pdf += "endstream\n";
  end_obj();
  begin_obj(); // 5: Helvetica
  pdf += "<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica >>\n";
  end_obj();

  std::size_t xref_pos = pdf.size();
  pdf += "xref\n0 " + std::to_string(offsets.size() + 1) + "\n";
  pdf += "0000000000 65535 f \n";
  for (std::size_t off : offsets) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%010zu 00000 n \n", off);
    pdf += buf;
  }
  pdf += "trailer\n<< /Size " + std::to_string(offsets.size() + 1) + " /Root 1 0 R >>\n";
  pdf += "startxref\n" + std::to_string(xref_pos) + "\n%%EOF\n";
  return pdf;
}

} // namespace axoforge::backends
