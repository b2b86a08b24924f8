#pragma once

// Structural re-parse of the PDF writer's output: xref offsets against
// actual object positions, MediaBox, and the content stream length.

#include <cstdlib>
#include <string>
#include <vector>

namespace pdfscan {

struct Scan {
  bool ok = false;
  std::string error;
  int object_count = 0;               // xref /Size (including the free object 0)
  std::vector<long> xref_offsets;     // for objects 1..n-1
  std::vector<long> actual_offsets;   // byte position of "N 0 obj"
  double media[4] = {0, 0, 0, 0};
  long declared_stream_length = -1;
  long actual_stream_length = -1;
  long startxref = -1;
  long actual_xref_pos = -1;
};

inline Scan scan(const std::string& bytes) {
  Scan r;
  auto fail = [&](const std::string& msg) {
    r.error = msg;
    return r;
  };

  if (bytes.rfind("%PDF-1.4", 0) != 0) return fail("missing %PDF-1.4 header");

  std::size_t sx = bytes.rfind("startxref");
  if (sx == std::string::npos) return fail("missing startxref");
  r.startxref = std::strtol(bytes.c_str() + sx + 9, nullptr, 10);

  std::size_t xref = bytes.rfind("\nxref\n");
  if (xref == std::string::npos) return fail("missing xref");
  r.actual_xref_pos = static_cast<long>(xref + 1);

  // xref subsection header: "0 N"
  const char* p = bytes.c_str() + xref + 6;
  char* end = nullptr;
  long first = std::strtol(p, &end, 10);
  long count = std::strtol(end, &end, 10);
  if (first != 0 || count < 1) return fail("bad xref subsection");
  r.object_count = static_cast<int>(count);
  while (*end == '\n' || *end == '\r' || *end == ' ') ++end;
  // 20-byte entries; skip the free entry for object 0
  for (long i = 1; i < count; ++i) {
    const char* entry = end + 20 * i;
    r.xref_offsets.push_back(std::strtol(std::string(entry, 10).c_str(), nullptr, 10));
  }

  for (long id = 1; id < count; ++id) {
    std::string marker = std::to_string(id) + " 0 obj";
    std::size_t pos = bytes.find("\n" + marker);
    if (pos == std::string::npos) return fail("object " + std::to_string(id) + " not found");
    r.actual_offsets.push_back(static_cast<long>(pos + 1));
  }

  std::size_t mb = bytes.find("/MediaBox [");
  if (mb == std::string::npos) return fail("missing MediaBox");
  char* cursor = const_cast<char*>(bytes.c_str() + mb + 11);
  for (double& v : r.media) v = std::strtod(cursor, &cursor);

  std::size_t len = bytes.find("/Length ");
  if (len == std::string::npos) return fail("missing /Length");
  r.declared_stream_length = std::strtol(bytes.c_str() + len + 8, nullptr, 10);
  std::size_t stream = bytes.find("stream\n", len);
  std::size_t endstream = bytes.find("endstream", stream);
  if (stream == std::string::npos || endstream == std::string::npos)
    return fail("missing stream markers");
  r.actual_stream_length = static_cast<long>(endstream - (stream + 7));

  r.ok = true;
  return r;
}

/// Stroke endpoints of every m ... l ... S group in a content stream,
/// for the cross-backend agreement check.
inline std::vector<std::pair<double, double>> stroke_endpoints(const std::string& stream) {
  std::vector<std::pair<double, double>> out;
  std::vector<std::pair<double, double>> current;
  double nums[2] = {0, 0};
  int have = 0;
  std::size_t i = 0;
  auto token = [&](std::string& tok) {
    while (i < stream.size() && std::isspace(static_cast<unsigned char>(stream[i]))) ++i;
    std::size_t start = i;
    while (i < stream.size() && !std::isspace(static_cast<unsigned char>(stream[i]))) ++i;
    tok.assign(stream, start, i - start);
    return !tok.empty();
  };
  std::string tok;
  while (token(tok)) {
    if (tok == "m" || tok == "l") {
      if (have == 2) current.emplace_back(nums[0], nums[1]);
      have = 0;
    } else if (tok == "S") {
      if (!current.empty()) {
        out.push_back(current.front());
        out.push_back(current.back());
      }
      current.clear();
      have = 0;
    } else if (tok == "f" || tok == "RG" || tok == "rg" || tok == "w" || tok == "BT" ||
               tok == "ET" || tok == "Tf" || tok == "Td" || tok == "Tj") {
      if (tok == "f") current.clear();
      have = 0;
    } else {
      char* endp = nullptr;
      double v = std::strtod(tok.c_str(), &endp);
      if (endp == tok.c_str() + tok.size()) {
        nums[have % 2] = v;
        ++have;
      } else {
        have = 0; // string literal or name
      }
    }
  }
  return out;
}

} // namespace pdfscan
