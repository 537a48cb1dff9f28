// Copyright 2026 The Roadacoustics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "roadacoustics/geometry.hpp"

#include <algorithm>
#include <limits>

#include "roadacoustics/errors.hpp"

namespace roadac {
namespace {

constexpr double kArcTol = 1e-9;      // quadrature tolerance, meters
constexpr int kArcTableSize = 65;     // cumulative-length knots per segment

// 7-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNode[7] = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
    0.0,
    0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
constexpr double kGlWeight[7] = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
    0.4179591836734694,
    0.3818300505051189, 0.2797053914892766, 0.1294849661688697};

double gl7_speed(const BezierSegment& seg, double a, double b) {
  const double h = 0.5 * (b - a);
  const double m = 0.5 * (a + b);
  double acc = 0.0;
  for (int i = 0; i < 7; ++i) {
    acc += kGlWeight[i] * seg.derivative(m + h * kGlNode[i]).norm();
  }
  return acc * h;
}

double adaptive_arc(const BezierSegment& seg, double a, double b, double whole,
                    double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = gl7_speed(seg, a, m);
  const double right = gl7_speed(seg, m, b);
  if (depth >= 24 || std::abs(left + right - whole) <= tol) {
    return left + right;
  }
  return adaptive_arc(seg, a, m, left, 0.5 * tol, depth + 1) +
         adaptive_arc(seg, m, b, right, 0.5 * tol, depth + 1);
}

}  // namespace

Vec3 Vec3::normalized() const {
  const double n = norm();
  if (n == 0.0) raise(ErrorCode::kInvalidArgument, "cannot normalize zero vector");
  return {x / n, y / n, z / n};
}

Point3 image_source(const Point3& p) {
  if (!p.finite() || p.z <= 0.0) {
    raise(ErrorCode::kInvalidGeometry,
          "image source requires a point above the road plane (z > 0)");
  }
  return {p.x, p.y, -p.z};
}

PathGeometry path_geometry(const Point3& src, const Point3& mic) {
  if (!src.finite() || src.z <= 0.0 || !mic.finite() || mic.z <= 0.0) {
    raise(ErrorCode::kInvalidGeometry,
          "path geometry requires source and microphone above z = 0");
  }
  if (src == mic) {
    raise(ErrorCode::kInvalidGeometry,
          "source and microphone positions coincide");
  }
  PathGeometry g;
  g.d1 = (src - mic).norm();
  const Point3 img = image_source(src);
  // Segment img -> mic crosses z = 0 at lambda = z_src / (z_src + z_mic).
  const double lambda = src.z / (src.z + mic.z);
  g.reflection_point = {img.x + lambda * (mic.x - img.x),
                        img.y + lambda * (mic.y - img.y), 0.0};
  g.d2 = (src - g.reflection_point).norm();
  g.d3 = (mic - g.reflection_point).norm();
  return g;
}

Point3 BezierSegment::eval(double u) const {
  const double v = 1.0 - u;
  const double b0 = v * v * v;
  const double b1 = 3.0 * v * v * u;
  const double b2 = 3.0 * v * u * u;
  const double b3 = u * u * u;
  return p[0] * b0 + p[1] * b1 + p[2] * b2 + p[3] * b3;
}

Point3 BezierSegment::derivative(double u) const {
  const double v = 1.0 - u;
  return (p[1] - p[0]) * (3.0 * v * v) + (p[2] - p[1]) * (6.0 * v * u) +
         (p[3] - p[2]) * (3.0 * u * u);
}

double BezierSegment::arc_length(double u) const {
  if (u <= 0.0) return 0.0;
  u = std::min(u, 1.0);
  return adaptive_arc(*this, 0.0, u, gl7_speed(*this, 0.0, u), kArcTol, 0);
}

Trajectory Trajectory::fixed(const Point3& p) {
  if (!p.finite() || p.z <= 0.0) {
    raise(ErrorCode::kInvalidGeometry, "trajectory waypoint must have z > 0");
  }
  Trajectory t;
  t.kind_ = Kind::kStatic;
  t.waypoints_ = {p};
  return t;
}

Trajectory Trajectory::polyline(std::vector<Point3> waypoints,
                                std::vector<double> speeds,
                                double start_offset) {
  if (waypoints.size() < 2) {
    raise(ErrorCode::kInvalidArgument, "polyline needs at least 2 waypoints");
  }
  const std::size_t n_seg = waypoints.size() - 1;
  if (speeds.size() == 1) speeds.assign(n_seg, speeds[0]);
  if (speeds.size() != n_seg) {
    raise(ErrorCode::kInvalidArgument,
          "speed profile must have one entry per segment");
  }
  Trajectory t;
  t.kind_ = Kind::kPolyline;
  t.waypoints_ = std::move(waypoints);
  t.speeds_ = std::move(speeds);
  t.start_offset_ = start_offset;
  for (std::size_t i = 0; i < n_seg; ++i) {
    Segment s;
    s.is_bezier = false;
    s.a = t.waypoints_[i];
    s.b = t.waypoints_[i + 1];
    s.speed = t.speeds_[i];
    s.length = (s.b - s.a).norm();
    t.segments_.push_back(std::move(s));
  }
  t.finalize();
  return t;
}

Trajectory Trajectory::bezier(std::vector<Point3> control,
                              std::vector<double> speeds,
                              double start_offset) {
  if (control.size() < 4 || (control.size() - 1) % 3 != 0) {
    raise(ErrorCode::kInvalidArgument,
          "bezier chain needs 3k + 1 control points, k >= 1");
  }
  const std::size_t n_seg = (control.size() - 1) / 3;
  if (speeds.size() == 1) speeds.assign(n_seg, speeds[0]);
  if (speeds.size() != n_seg) {
    raise(ErrorCode::kInvalidArgument,
          "speed profile must have one entry per segment");
  }
  Trajectory t;
  t.kind_ = Kind::kBezier;
  t.waypoints_ = std::move(control);
  t.speeds_ = std::move(speeds);
  t.start_offset_ = start_offset;
  for (std::size_t i = 0; i < n_seg; ++i) {
    Segment s;
    s.is_bezier = true;
    s.bezier.p = {t.waypoints_[3 * i], t.waypoints_[3 * i + 1],
                  t.waypoints_[3 * i + 2], t.waypoints_[3 * i + 3]};
    s.speed = t.speeds_[i];
    s.length = s.bezier.arc_length(1.0);
    t.segments_.push_back(std::move(s));
  }
  t.finalize();
  return t;
}

Trajectory Trajectory::bezier_from_control_points(std::span<const Point3> pts,
                                                  double speed,
                                                  double start_offset) {
  if (pts.empty()) {
    raise(ErrorCode::kInvalidArgument, "need at least one control point");
  }
  const bool all_equal =
      std::all_of(pts.begin(), pts.end(), [&](const Point3& p) { return p == pts[0]; });
  if (pts.size() == 1 || all_equal) return fixed(pts[0]);

  // Build quadratic spans: a single quadratic for <= 3 points, otherwise a
  // clamped uniform quadratic B-spline with knots at edge midpoints. Every
  // quadratic is then degree-elevated to a cubic, so all chain control
  // points are convex combinations of the inputs and the curve stays in
  // their convex hull.
  std::vector<std::array<Point3, 3>> quads;
  if (pts.size() == 2) {
    const Point3 mid = (pts[0] + pts[1]) * 0.5;
    quads.push_back({pts[0], mid, pts[1]});
  } else if (pts.size() == 3) {
    quads.push_back({pts[0], pts[1], pts[2]});
  } else {
    const std::size_t n = pts.size();
    std::vector<Point3> knots;  // span boundaries
    knots.push_back(pts[0]);
    for (std::size_t i = 1; i + 2 < n; ++i) {
      knots.push_back((pts[i] + pts[i + 1]) * 0.5);
    }
    knots.push_back(pts[n - 1]);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      quads.push_back({knots[i], pts[i + 1], knots[i + 1]});
    }
  }

  std::vector<Point3> control;
  control.push_back(quads[0][0]);
  for (const auto& q : quads) {
    control.push_back((q[0] + q[1] * 2.0) * (1.0 / 3.0));
    control.push_back((q[1] * 2.0 + q[2]) * (1.0 / 3.0));
    control.push_back(q[2]);
  }
  return bezier(std::move(control), {speed}, start_offset);
}

void Trajectory::finalize() {
  for (const Point3& p : waypoints_) {
    if (!p.finite() || p.z <= 0.0) {
      raise(ErrorCode::kInvalidGeometry, "trajectory waypoint must have z > 0");
    }
  }
  for (double v : speeds_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      raise(ErrorCode::kInvalidArgument, "segment speeds must be positive");
    }
  }
  if (!(start_offset_ >= 0.0) || !std::isfinite(start_offset_)) {
    raise(ErrorCode::kInvalidArgument, "start offset must be >= 0");
  }
  double t = 0.0;
  for (Segment& s : segments_) {
    s.t_begin = t;
    t += s.length / s.speed;
    total_length_ += s.length;
    if (s.is_bezier) {
      s.arc_table.resize(kArcTableSize);
      s.arc_table[0] = 0.0;
      for (int i = 1; i < kArcTableSize; ++i) {
        const double a = static_cast<double>(i - 1) / (kArcTableSize - 1);
        const double b = static_cast<double>(i) / (kArcTableSize - 1);
        const double piece =
            adaptive_arc(s.bezier, a, b, gl7_speed(s.bezier, a, b), kArcTol, 0);
        s.arc_table[i] = s.arc_table[i - 1] + piece;
      }
      s.length = s.arc_table.back();  // refine with the table total
    }
  }
  motion_time_ = 0.0;
  for (const Segment& s : segments_) motion_time_ += s.length / s.speed;
}

double Trajectory::duration() const {
  if (kind_ == Kind::kStatic) return std::numeric_limits<double>::infinity();
  return start_offset_ + motion_time_ + end_hold_;
}

double Trajectory::path_length() const { return total_length_; }

Trajectory Trajectory::with_end_hold(double total_duration) const {
  Trajectory t = *this;
  if (kind_ == Kind::kStatic) return t;
  const double base = start_offset_ + motion_time_;
  t.end_hold_ = std::max(end_hold_, total_duration - base);
  return t;
}

Point3 Trajectory::segment_point(const Segment& s, double arc_pos) const {
  if (!s.is_bezier) {
    if (s.length == 0.0) return s.a;
    const double u = std::clamp(arc_pos / s.length, 0.0, 1.0);
    return s.a + (s.b - s.a) * u;
  }
  arc_pos = std::clamp(arc_pos, 0.0, s.length);
  // Bracket in the cumulative table, then safeguarded Newton on
  // L(u) - arc_pos = 0 with local quadrature increments.
  const auto& tab = s.arc_table;
  auto it = std::upper_bound(tab.begin(), tab.end(), arc_pos);
  int j = static_cast<int>(std::distance(tab.begin(), it));
  j = std::clamp(j - 1, 0, kArcTableSize - 2);
  double lo = static_cast<double>(j) / (kArcTableSize - 1);
  double hi = static_cast<double>(j + 1) / (kArcTableSize - 1);
  double u = lo;
  double len_at_u = tab[j];
  const double target = arc_pos;
  for (int iter = 0; iter < 40; ++iter) {
    const double speed = std::max(s.bezier.derivative(u).norm(), 1e-12);
    double next = u + (target - len_at_u) / speed;
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);  // bisect fallback
    const double delta = gl7_speed(s.bezier, u, next);
    len_at_u += delta;
    u = next;
    if (std::abs(len_at_u - target) < 1e-10 * std::max(1.0, s.length)) break;
    if (len_at_u < target) {
      lo = u;
    } else {
      hi = u;
    }
  }
  return s.bezier.eval(u);
}

Point3 Trajectory::position_at(double t) const {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    raise(ErrorCode::kOutOfRange, "trajectory time must be finite and >= 0");
  }
  if (kind_ == Kind::kStatic) return waypoints_[0];
  if (t > duration() * (1.0 + 1e-12)) {
    raise(ErrorCode::kOutOfRange, "time beyond trajectory duration");
  }
  double tm = t - start_offset_;
  if (tm <= 0.0) {
    return segments_.empty() ? waypoints_[0] : segment_point(segments_[0], 0.0);
  }
  if (tm >= motion_time_) {
    const Segment& last = segments_.back();
    return segment_point(last, last.length);
  }
  // Find the active segment by time.
  for (const Segment& s : segments_) {
    const double seg_time = s.length / s.speed;
    if (tm <= seg_time || &s == &segments_.back()) {
      return segment_point(s, std::min(tm, seg_time) * s.speed);
    }
    tm -= seg_time;
  }
  return segment_point(segments_.back(), segments_.back().length);
}

}  // namespace roadac
