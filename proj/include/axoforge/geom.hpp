#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <variant>
#include <vector>

#include <axoforge/error.hpp>

namespace axoforge::geom {

inline constexpr double kPi = 3.14159265358979323846;

/// Default flattening tolerance in pt; sub-visible at print resolution.
inline constexpr double kDefaultTol = 0.05;

// --------------------------------------------------------------------
// Points and polylines
// --------------------------------------------------------------------

struct Point {
  double x = 0;
  double y = 0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
  friend constexpr Point operator*(double s, Point a) { return a * s; }
  friend constexpr bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
constexpr Point rot90(Point a) { return {-a.y, a.x}; }

inline Point normalized(Point a) {
  double n = norm(a);
  return n > 0 ? Point{a.x / n, a.y / n} : Point{0, 0};
}

inline Point lerp(Point a, Point b, double t) { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }

inline double dist(Point a, Point b) { return norm(b - a); }

/// Distance from p to the segment [a, b].
inline double dist_to_segment(Point p, Point a, Point b) {
  Point ab = b - a;
  double len2 = dot(ab, ab);
  if (len2 == 0) return dist(p, a);
  double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return dist(p, lerp(a, b, t));
}

/// A flattened curve: ordered points plus cumulative arc length per point.
struct Polyline {
  std::vector<Point> points;
  std::vector<double> cumlen;

  Polyline() = default;
  explicit Polyline(std::vector<Point> pts) : points(std::move(pts)) { recompute_cumlen(); }

  void recompute_cumlen() {
    cumlen.resize(points.size());
    double acc = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i > 0) acc += dist(points[i - 1], points[i]);
      cumlen[i] = acc;
    }
  }

  double length() const { return cumlen.empty() ? 0.0 : cumlen.back(); }
  bool closed() const { return points.size() > 2 && points.front() == points.back(); }
};

/// Point, unit tangent and left normal at a position along a polyline.
struct Frame {
  Point at;
  Point tangent;
  Point normal; // tangent rotated +90 degrees
};

// --------------------------------------------------------------------
// Wiggly-line specification
// --------------------------------------------------------------------

enum class WigglyKind { Gluon, Photon, Zigzag };

/// amplitude: max perpendicular deviation in pt; count: windings for a
/// gluon, half-periods for photon/zigzag.
struct WigglySpec {
  WigglyKind kind = WigglyKind::Gluon;
  double amplitude = 0;
  int count = 0;
};

struct SegmentCarrier {
  Point p1, p2;
  friend constexpr bool operator==(SegmentCarrier, SegmentCarrier) = default;
};
struct ArcCarrier {
  Point center;
  double radius = 0;
  double theta1 = 0; // degrees
  double theta2 = 0; // degrees
  friend constexpr bool operator==(ArcCarrier, ArcCarrier) = default;
};
struct CircleCarrier {
  Point center;
  double radius = 0;
  friend constexpr bool operator==(CircleCarrier, CircleCarrier) = default;
};

using Carrier = std::variant<SegmentCarrier, ArcCarrier, CircleCarrier>;

// --------------------------------------------------------------------
// Errors
// --------------------------------------------------------------------

enum class GeomErrorKind {
  EmptyArc,
  InvalidRadius,
  DegenerateCarrier,
  TooShort,
  OutOfRange,
  BadSpec,
};

class GeomError : public Error {
public:
  GeomError(GeomErrorKind kind, const std::string& msg) : Error(msg), kind_(kind) {}
  GeomErrorKind kind() const { return kind_; }

private:
  GeomErrorKind kind_;
};

// --------------------------------------------------------------------
// Arc flattening
// --------------------------------------------------------------------

inline double deg2rad(double d) { return d * (kPi / 180.0); }

/// CCW opening angle in degrees: (theta2 - theta1) mod 360, where a
/// nonzero multiple of 360 means a full turn and exact equality is an
/// error (reported by the caller).
inline double arc_opening_deg(double theta1, double theta2) {
  double diff = theta2 - theta1;
  double m = std::fmod(diff, 360.0);
  if (m < 0) m += 360.0;
  if (m == 0) return 360.0; // caller has excluded theta1 == theta2
  return m;
}

inline Point point_on_circle(Point center, double radius, double theta_deg) {
  double th = deg2rad(theta_deg);
  return {center.x + radius * std::cos(th), center.y + radius * std::sin(th)};
}

/// Flattens the CCW arc from theta1 by the normalized opening. Every
/// emitted point lies on the circle, so the chord sagitta bounds the
/// deviation by tol.
inline Polyline flatten_arc(Point center, double radius, double theta1, double theta2,
                            double tol = kDefaultTol) {
  if (radius <= 0) throw GeomError(GeomErrorKind::InvalidRadius, "arc radius must be > 0");
  if (tol <= 0) throw GeomError(GeomErrorKind::BadSpec, "tolerance must be > 0");
  if (theta1 == theta2) throw GeomError(GeomErrorKind::EmptyArc, "arc opening is zero");

  double sweep = deg2rad(arc_opening_deg(theta1, theta2));
  double max_step = tol >= radius ? kPi / 4 : 2.0 * std::acos(1.0 - tol / radius);
  max_step = std::min(max_step, kPi / 4);
  int n = std::max(2, static_cast<int>(std::ceil(sweep / max_step)));

  Polyline pl;
  pl.points.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    double th = theta1 + (sweep * i / n) * (180.0 / kPi);
    pl.points.push_back(point_on_circle(center, radius, th));
  }
  if (arc_opening_deg(theta1, theta2) == 360.0) pl.points.back() = pl.points.front();
  pl.recompute_cumlen();
  return pl;
}

// --------------------------------------------------------------------
// Bezier flattening
// --------------------------------------------------------------------

namespace detail {

inline double bezier_flatness(Point p0, Point p1, Point p2, Point p3) {
  // Control-point distance to the chord bounds the curve's deviation
  // (convex hull property).
  return std::max(dist_to_segment(p1, p0, p3), dist_to_segment(p2, p0, p3));
}

inline void bezier_subdivide(Point p0, Point p1, Point p2, Point p3, double tol, int depth,
                             std::vector<Point>& out) {
  if (depth == 0 || bezier_flatness(p0, p1, p2, p3) <= tol) {
    out.push_back(p3);
    return;
  }
  Point p01 = lerp(p0, p1, 0.5), p12 = lerp(p1, p2, 0.5), p23 = lerp(p2, p3, 0.5);
  Point p012 = lerp(p01, p12, 0.5), p123 = lerp(p12, p23, 0.5);
  Point mid = lerp(p012, p123, 0.5);
  bezier_subdivide(p0, p01, p012, mid, tol, depth - 1, out);
  bezier_subdivide(mid, p123, p23, p3, tol, depth - 1, out);
}

} // namespace detail

/// Adaptive de Casteljau flattening; first point is exactly p0 and the
/// last exactly p3.
inline Polyline flatten_bezier(Point p0, Point p1, Point p2, Point p3, double tol = kDefaultTol) {
  if (tol <= 0) throw GeomError(GeomErrorKind::BadSpec, "tolerance must be > 0");
  Polyline pl;
  pl.points.push_back(p0);
  detail::bezier_subdivide(p0, p1, p2, p3, tol, 32, pl.points);
  pl.recompute_cumlen();
  return pl;
}

// --------------------------------------------------------------------
// Wiggly lines (gluon / photon / zigzag over segment, arc or circle)
// --------------------------------------------------------------------

namespace detail {

// Gluon tangential-backtrack factor; cos t > 1/kGluonLoopFactor opens a
// loop at each interior multiple of 2*pi, so n windings give n-1 loops.
inline constexpr double kGluonLoopFactor = 2.0;

struct WiggleProfile {
  double total = 0; // parameter range [0, total]

  // Tangential fraction along the carrier in [0,1] (non-monotonic for
  // gluons) and perpendicular/radial deviation at parameter t.
  double (*u)(double t, double total, double amp, int count);
  double (*d)(double t, double total, double amp, int count);
};

inline double gluon_u(double t, double total, double, int) {
  return (t - kGluonLoopFactor * std::sin(t)) / total;
}
inline double gluon_d(double t, double, double amp, int) { return 0.5 * amp * (1.0 - std::cos(t)); }

inline double linear_u(double t, double total, double, int) { return t / total; }
inline double photon_d(double t, double, double amp, int) { return amp * std::sin(t); }

inline double zigzag_d(double t, double, double amp, int) {
  double w = t / kPi; // half-period units
  double k = std::floor(w);
  double frac = w - k;
  double tri = 1.0 - std::fabs(2.0 * frac - 1.0);
  bool negative = (static_cast<long long>(k) % 2) != 0;
  return negative ? -amp * tri : amp * tri;
}

inline WiggleProfile wiggle_profile(const WigglySpec& spec) {
  WiggleProfile p;
  switch (spec.kind) {
    case WigglyKind::Gluon:
      p.total = 2.0 * kPi * spec.count;
      p.u = &gluon_u;
      p.d = &gluon_d;
      break;
    case WigglyKind::Photon:
      p.total = kPi * spec.count;
      p.u = &linear_u;
      p.d = &photon_d;
      break;
    case WigglyKind::Zigzag:
      p.total = kPi * spec.count;
      p.u = &linear_u;
      p.d = &zigzag_d;
      break;
  }
  return p;
}

// Conservative bound on |p''(t)| used to pick the sampling step
// (chord deviation <= M*h^2/8). Zero means piecewise straight.
inline double wiggle_accel_bound(const WigglySpec& spec, double tangential_extent, double radius) {
  double T = wiggle_profile(spec).total;
  double a = spec.amplitude;
  double u2max = 0, u1max = 1.0 / T; // |u''|, |u'| bounds
  double d1max = 0, d2max = 0;       // |d'|, |d''| bounds
  switch (spec.kind) {
    case WigglyKind::Gluon:
      u2max = kGluonLoopFactor / T;
      u1max = (1.0 + kGluonLoopFactor) / T;
      d1max = 0.5 * a;
      d2max = 0.5 * a;
      break;
    case WigglyKind::Photon:
      d1max = a;
      d2max = a;
      break;
    case WigglyKind::Zigzag:
      d1max = 2.0 * a / kPi;
      d2max = 0;
      break;
  }
  if (radius <= 0) { // straight carrier
    return std::hypot(tangential_extent * u2max, d2max);
  }
  double sweep = tangential_extent; // radians for arc carriers
  double th1 = sweep * u1max, th2 = sweep * u2max;
  double rho = radius + a;
  return d2max + rho * th1 * th1 + 2.0 * d1max * th1 + rho * th2;
}

inline std::vector<double> wiggle_parameter_grid(const WigglySpec& spec, double accel_bound,
                                                 double tol, bool grade_seam = false) {
  WiggleProfile prof = wiggle_profile(spec);
  std::vector<double> breaks{0.0};
  if (spec.kind == WigglyKind::Zigzag) {
    for (int k = 0; k < spec.count; ++k) breaks.push_back((k + 0.5) * kPi);
  }
  breaks.push_back(prof.total);

  double h = std::numeric_limits<double>::infinity();
  if (accel_bound > 0) h = std::sqrt(8.0 * tol / accel_bound);
  if (spec.kind != WigglyKind::Zigzag) h = std::min(h, kPi / 8.0);

  std::vector<double> ts;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double b0 = breaks[i], b1 = breaks[i + 1];
    int steps = std::isfinite(h) ? std::max(1, static_cast<int>(std::ceil((b1 - b0) / h))) : 1;
    for (int j = 0; j < steps; ++j) ts.push_back(b0 + (b1 - b0) * j / steps);
  }
  ts.push_back(prof.total);

  if (grade_seam && ts.size() >= 3) {
    // Geometric refinement toward both ends so the first and last chords
    // of a closed curve align with the analytic seam tangent (< 1e-6).
    double first_step = ts[1] - ts[0];
    double last_step = ts[ts.size() - 1] - ts[ts.size() - 2];
    std::vector<double> graded;
    for (double s = first_step / 2; s > 3e-9 * prof.total; s /= 2) graded.push_back(s);
    std::sort(graded.begin(), graded.end());
    std::vector<double> out;
    out.push_back(0.0);
    for (double s : graded) out.push_back(s);
    out.insert(out.end(), ts.begin() + 1, ts.end() - 1);
    for (auto it = graded.rbegin(); it != graded.rend(); ++it) {
      double s = *it * (last_step / first_step);
      out.push_back(prof.total - s);
    }
    out.push_back(prof.total);
    return out;
  }
  return ts;
}

} // namespace detail

/// Applies the wiggle profile to a straight, arc or circle carrier.
/// Segment and arc carriers interpolate the carrier endpoints exactly;
/// circle carriers close exactly (first point == last point).
inline Polyline wiggly_path(const Carrier& carrier, const WigglySpec& spec,
                            double tol = kDefaultTol) {
  if (tol <= 0) throw GeomError(GeomErrorKind::BadSpec, "tolerance must be > 0");
  if (spec.amplitude <= 0) throw GeomError(GeomErrorKind::BadSpec, "amplitude must be > 0");
  if (spec.count < 1) throw GeomError(GeomErrorKind::BadSpec, "count must be >= 1");

  detail::WiggleProfile prof = detail::wiggle_profile(spec);
  Polyline pl;

  if (const auto* seg = std::get_if<SegmentCarrier>(&carrier)) {
    Point delta = seg->p2 - seg->p1;
    double len = norm(delta);
    if (len == 0) throw GeomError(GeomErrorKind::DegenerateCarrier, "segment carrier has zero length");
    Point dir = {delta.x / len, delta.y / len};
    Point nrm = rot90(dir);
    double M = detail::wiggle_accel_bound(spec, len, 0.0);
    for (double t : detail::wiggle_parameter_grid(spec, M, tol)) {
      double u = prof.u(t, prof.total, spec.amplitude, spec.count);
      double d = prof.d(t, prof.total, spec.amplitude, spec.count);
      pl.points.push_back(seg->p1 + delta * u + nrm * d);
    }
    pl.points.front() = seg->p1;
    pl.points.back() = seg->p2;
  } else if (const auto* arc = std::get_if<ArcCarrier>(&carrier)) {
    if (arc->radius <= 0) throw GeomError(GeomErrorKind::InvalidRadius, "arc radius must be > 0");
    if (arc->theta1 == arc->theta2)
      throw GeomError(GeomErrorKind::DegenerateCarrier, "arc carrier has zero sweep");
    double sweep = deg2rad(arc_opening_deg(arc->theta1, arc->theta2));
    double M = detail::wiggle_accel_bound(spec, sweep, arc->radius);
    for (double t : detail::wiggle_parameter_grid(spec, M, tol)) {
      double u = prof.u(t, prof.total, spec.amplitude, spec.count);
      double d = prof.d(t, prof.total, spec.amplitude, spec.count);
      double th = deg2rad(arc->theta1) + sweep * u;
      double rho = arc->radius + d; // positive deviation points outward
      pl.points.push_back({arc->center.x + rho * std::cos(th), arc->center.y + rho * std::sin(th)});
    }
    pl.points.front() = point_on_circle(arc->center, arc->radius, arc->theta1);
    pl.points.back() =
        point_on_circle(arc->center, arc->radius, arc->theta1 + sweep * (180.0 / kPi));
  } else {
    const auto& cc = std::get<CircleCarrier>(carrier);
    if (cc.radius <= 0) throw GeomError(GeomErrorKind::InvalidRadius, "circle radius must be > 0");
    double sweep = 2.0 * kPi;
    double M = detail::wiggle_accel_bound(spec, sweep, cc.radius);
    for (double t : detail::wiggle_parameter_grid(spec, M, tol, /*grade_seam=*/true)) {
      double u = prof.u(t, prof.total, spec.amplitude, spec.count);
      double d = prof.d(t, prof.total, spec.amplitude, spec.count);
      double th = sweep * u;
      double rho = cc.radius + d;
      pl.points.push_back({cc.center.x + rho * std::cos(th), cc.center.y + rho * std::sin(th)});
    }
    pl.points.back() = pl.points.front(); // exact seam
  }

  pl.recompute_cumlen();
  return pl;
}

// --------------------------------------------------------------------
// Measures along polylines
// --------------------------------------------------------------------

inline double arc_length(const Polyline& pl) {
  if (pl.points.size() < 2)
    throw GeomError(GeomErrorKind::TooShort, "arc_length needs at least 2 points");
  return pl.cumlen.back();
}

namespace detail {

inline Point segment_tangent_from(const Polyline& pl, std::size_t idx, bool forward) {
  std::size_t n = pl.points.size();
  if (forward) {
    for (std::size_t i = idx; i + 1 < n; ++i) {
      Point d = pl.points[i + 1] - pl.points[i];
      if (d.x != 0 || d.y != 0) return normalized(d);
    }
  } else {
    for (std::size_t i = idx; i > 0; --i) {
      Point d = pl.points[i] - pl.points[i - 1];
      if (d.x != 0 || d.y != 0) return normalized(d);
    }
  }
  return {1, 0};
}

} // namespace detail

/// Frame at arc-length fraction s; at a shared vertex the following
/// segment supplies the tangent, and s=1 uses the final segment.
inline Frame frame_at(const Polyline& pl, double s) {
  if (pl.points.size() < 2)
    throw GeomError(GeomErrorKind::TooShort, "frame_at needs at least 2 points");
  if (s < 0 || s > 1) throw GeomError(GeomErrorKind::OutOfRange, "position fraction outside [0,1]");
  double total = pl.length();
  if (total <= 0)
    throw GeomError(GeomErrorKind::DegenerateCarrier, "frame_at on zero-length polyline");

  Frame f;
  if (s == 0) {
    f.at = pl.points.front();
    f.tangent = detail::segment_tangent_from(pl, 0, true);
  } else if (s == 1) {
    f.at = pl.points.back();
    f.tangent = detail::segment_tangent_from(pl, pl.points.size() - 1, false);
  } else {
    double target = s * total;
    auto it = std::upper_bound(pl.cumlen.begin(), pl.cumlen.end(), target);
    std::size_t idx = static_cast<std::size_t>(it - pl.cumlen.begin());
    idx = std::min(std::max<std::size_t>(idx, 1), pl.points.size() - 1) - 1;
    double seg = pl.cumlen[idx + 1] - pl.cumlen[idx];
    double t = seg > 0 ? (target - pl.cumlen[idx]) / seg : 0.0;
    f.at = lerp(pl.points[idx], pl.points[idx + 1], t);
    f.tangent = seg > 0 ? normalized(pl.points[idx + 1] - pl.points[idx])
                        : detail::segment_tangent_from(pl, idx, true);
  }
  f.normal = rot90(f.tangent);
  return f;
}

// --------------------------------------------------------------------
// Offset curves
// --------------------------------------------------------------------

/// Moves every vertex distance d along the local (miter-averaged)
/// normal; the miter displacement is clamped at 4*|d|. Closed inputs
/// stay closed. d = 0 returns the input unchanged.
inline Polyline offset(const Polyline& pl, double d) {
  std::size_t n = pl.points.size();
  if (n < 2) throw GeomError(GeomErrorKind::TooShort, "offset needs at least 2 points");
  if (d == 0) return pl;

  bool closed = pl.closed();
  std::size_t nseg = n - 1;

  auto seg_normal = [&](std::size_t i) -> Point { // unit normal of segment i, or (0,0)
    Point delta = pl.points[i + 1] - pl.points[i];
    return normalized(rot90(delta));
  };

  // Nearest nonzero segment normal before/after vertex j (wrapping when closed).
  auto normal_before = [&](std::size_t j) -> Point {
    for (std::size_t back = 0; back < nseg; ++back) {
      std::size_t i;
      if (j >= back + 1) {
        i = j - back - 1;
      } else if (closed) {
        i = nseg - (back + 1 - j);
      } else {
        break;
      }
      Point nn = seg_normal(i);
      if (nn.x != 0 || nn.y != 0) return nn;
    }
    return {0, 0};
  };
  auto normal_after = [&](std::size_t j) -> Point {
    for (std::size_t fwd = 0; fwd < nseg; ++fwd) {
      std::size_t i = j + fwd;
      if (i >= nseg) {
        if (!closed) break;
        i -= nseg;
      }
      Point nn = seg_normal(i);
      if (nn.x != 0 || nn.y != 0) return nn;
    }
    return {0, 0};
  };

  Polyline out;
  out.points.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    Point nb, na;
    if (closed && (j == 0 || j == n - 1)) {
      nb = normal_before(n - 1);
      na = normal_after(0);
    } else {
      nb = j > 0 ? normal_before(j) : normal_after(j);
      na = j < n - 1 ? normal_after(j) : normal_before(j);
    }
    if (nb.x == 0 && nb.y == 0) nb = na;
    if (na.x == 0 && na.y == 0) na = nb;

    Point m = normalized(nb + na);
    double scale;
    if (m.x == 0 && m.y == 0) { // 180-degree reversal; cap at the clamp
      m = na;
      scale = 4.0;
    } else {
      double cos_half = dot(m, na);
      scale = cos_half > 0.25 ? 1.0 / cos_half : 4.0; // miter length clamp 4|d|
    }
    out.points[j] = pl.points[j] + m * (d * scale);
  }
  if (closed) out.points.back() = out.points.front();
  out.recompute_cumlen();
  return out;
}

// --------------------------------------------------------------------
// Dash splitting
// --------------------------------------------------------------------

namespace detail {

inline Point point_at_length(const Polyline& pl, double target, std::size_t& hint) {
  if (target <= 0) return pl.points.front();
  if (target >= pl.length()) return pl.points.back();
  while (hint + 2 < pl.cumlen.size() && pl.cumlen[hint + 1] <= target) ++hint;
  double seg = pl.cumlen[hint + 1] - pl.cumlen[hint];
  double t = seg > 0 ? (target - pl.cumlen[hint]) / seg : 0.0;
  return lerp(pl.points[hint], pl.points[hint + 1], t);
}

} // namespace detail

/// The dash rule: the largest odd number of equal-arc-length pieces
/// whose length is at least dsize, never less than 1. Odd k means the
/// alternation starts and ends "on", so a dash covers both path ends.
inline long long dash_piece_count(double total, double dsize) {
  if (dsize <= 0) throw GeomError(GeomErrorKind::BadSpec, "dash size must be > 0");
  long long k = static_cast<long long>(std::floor(total / dsize));
  if (k < 1) k = 1;
  if (k % 2 == 0) --k;
  return k;
}

/// Cuts the path into k equal-arc-length pieces (k odd) and returns the
/// alternating "on" pieces. Doubled strokes share one k so their dashes
/// stay aligned.
inline std::vector<Polyline> dash_split_into(const Polyline& pl, long long k) {
  if (k < 1 || k % 2 == 0) throw GeomError(GeomErrorKind::BadSpec, "piece count must be odd");
  if (pl.points.size() < 2)
    throw GeomError(GeomErrorKind::TooShort, "dash_split needs at least 2 points");

  double total = pl.length();
  std::vector<Polyline> dashes;
  dashes.reserve(static_cast<std::size_t>((k + 1) / 2));
  std::size_t hint = 0;
  for (long long piece = 0; piece < k; piece += 2) {
    double a = total * piece / k;
    double b = total * (piece + 1) / k;
    Polyline dash;
    std::size_t h = hint;
    dash.points.push_back(detail::point_at_length(pl, a, h));
    hint = h;
    for (std::size_t i = h + 1; i < pl.points.size(); ++i) {
      if (pl.cumlen[i] >= b) break;
      if (pl.cumlen[i] > a) dash.points.push_back(pl.points[i]);
    }
    dash.points.push_back(detail::point_at_length(pl, b, h));
    dash.recompute_cumlen();
    dashes.push_back(std::move(dash));
  }
  return dashes;
}

inline std::vector<Polyline> dash_split(const Polyline& pl, double dsize) {
  if (pl.points.size() < 2)
    throw GeomError(GeomErrorKind::TooShort, "dash_split needs at least 2 points");
  return dash_split_into(pl, dash_piece_count(pl.length(), dsize));
}

// --------------------------------------------------------------------
// Self-intersection counting
// --------------------------------------------------------------------

/// Number of transversal crossings between non-adjacent segments
/// (O(n^2) pairwise check); endpoint touches do not count.
inline int self_intersections(const Polyline& pl) {
  if (pl.points.size() < 2)
    throw GeomError(GeomErrorKind::TooShort, "self_intersections needs at least 2 points");
  const auto& p = pl.points;
  std::size_t nseg = p.size() - 1;
  int count = 0;
  for (std::size_t i = 0; i < nseg; ++i) {
    for (std::size_t j = i + 2; j < nseg; ++j) {
      double d1 = cross(p[j + 1] - p[j], p[i] - p[j]);
      double d2 = cross(p[j + 1] - p[j], p[i + 1] - p[j]);
      double d3 = cross(p[i + 1] - p[i], p[j] - p[i]);
      double d4 = cross(p[i + 1] - p[i], p[j + 1] - p[i]);
      if (d1 * d2 < 0 && d3 * d4 < 0) ++count;
    }
  }
  return count;
}

} // namespace axoforge::geom
