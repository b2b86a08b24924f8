#pragma once

// Test-only oracles. Each one recomputes a quantity through a route
// independent of the library code path it is used to check.

#include <cmath>
#include <cstddef>
#include <vector>

#include <axoforge/geom.hpp>

namespace oracle {

using axoforge::geom::Point;
using axoforge::geom::Polyline;

// ---- cubic Bezier via direct Bernstein evaluation ----

inline Point bezier_point(Point p0, Point p1, Point p2, Point p3, double t) {
  double mt = 1.0 - t;
  double b0 = mt * mt * mt, b1 = 3 * mt * mt * t, b2 = 3 * mt * t * t, b3 = t * t * t;
  return {b0 * p0.x + b1 * p1.x + b2 * p2.x + b3 * p3.x,
          b0 * p0.y + b1 * p1.y + b2 * p2.y + b3 * p3.y};
}

/// Arc length by uniform subdivision into n chords.
inline double bezier_length_uniform(Point p0, Point p1, Point p2, Point p3, int n = 1 << 16) {
  double len = 0;
  Point prev = p0;
  for (int i = 1; i <= n; ++i) {
    Point q = bezier_point(p0, p1, p2, p3, static_cast<double>(i) / n);
    len += std::hypot(q.x - prev.x, q.y - prev.y);
    prev = q;
  }
  return len;
}

// ---- dash rule ----

struct DashRule {
  long long k = 1;           // largest odd piece count
  std::size_t on_pieces = 0; // ceil(k/2)
  double piece_length = 0;   // L/k
};

inline DashRule dash_rule(double total, double dsize) {
  DashRule r;
  r.k = 1;
  while (static_cast<double>(r.k + 2) <= total / dsize) r.k += 2;
  r.on_pieces = static_cast<std::size_t>((r.k + 1) / 2);
  r.piece_length = total / static_cast<double>(r.k);
  return r;
}

// ---- shoelace area ----

inline double polygon_area(const std::vector<Point>& pts) {
  double acc = 0;
  std::size_t n = pts.size();
  for (std::size_t i = 0; i + 1 < n; ++i) acc += pts[i].x * pts[i + 1].y - pts[i + 1].x * pts[i].y;
  if (n > 1 && !(pts.front() == pts.back()))
    acc += pts[n - 1].x * pts[0].y - pts[0].x * pts[n - 1].y;
  return std::fabs(acc) / 2;
}

// ---- segment-pair crossings via the parametric line solve ----
// (the library uses orientation signs; this solves p + t r = q + u s)

inline int count_crossings(const std::vector<Point>& pts) {
  int count = 0;
  if (pts.size() < 2) return 0;
  std::size_t nseg = pts.size() - 1;
  for (std::size_t i = 0; i < nseg; ++i) {
    for (std::size_t j = i + 2; j < nseg; ++j) {
      Point p = pts[i], r{pts[i + 1].x - p.x, pts[i + 1].y - p.y};
      Point q = pts[j], s{pts[j + 1].x - q.x, pts[j + 1].y - q.y};
      double denom = r.x * s.y - r.y * s.x;
      if (denom == 0) continue;
      double t = ((q.x - p.x) * s.y - (q.y - p.y) * s.x) / denom;
      double u = ((q.x - p.x) * r.y - (q.y - p.y) * r.x) / denom;
      if (t > 0 && t < 1 && u > 0 && u < 1) ++count;
    }
  }
  return count;
}

// ---- arc-length point lookup (plain linear walk) ----

inline Point point_at_fraction(const Polyline& pl, double s) {
  double target = s * pl.cumlen.back();
  for (std::size_t i = 0; i + 1 < pl.points.size(); ++i) {
    if (pl.cumlen[i + 1] >= target) {
      double seg = pl.cumlen[i + 1] - pl.cumlen[i];
      double t = seg > 0 ? (target - pl.cumlen[i]) / seg : 0;
      return {pl.points[i].x + t * (pl.points[i + 1].x - pl.points[i].x),
              pl.points[i].y + t * (pl.points[i + 1].y - pl.points[i].y)};
    }
  }
  return pl.points.back();
}

/// Min distance between corresponding equal-arc-length-fraction points
/// of two strokes, sampled midway between vertices of a uniform grid.
inline double min_corresponding_distance(const Polyline& a, const Polyline& b,
                                         int samples = 200) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    double s = (i + 0.5) / samples;
    Point pa = point_at_fraction(a, s);
    Point pb = point_at_fraction(b, s);
    best = std::min(best, std::hypot(pa.x - pb.x, pa.y - pb.y));
  }
  return best;
}

/// Distance from a point to the nearest chord of a polyline.
inline double dist_to_polyline(Point p, const Polyline& pl) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pl.points.size(); ++i)
    best = std::min(best, axoforge::geom::dist_to_segment(p, pl.points[i], pl.points[i + 1]));
  return best;
}

} // namespace oracle
