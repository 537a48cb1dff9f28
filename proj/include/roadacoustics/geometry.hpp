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

#ifndef ROADACOUSTICS_GEOMETRY_HPP_
#define ROADACOUSTICS_GEOMETRY_HPP_

#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace roadac {

// Cartesian point/vector, meters. The road surface is the plane z = 0;
// sources and microphones live in the half space z > 0.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  bool operator==(const Vec3& o) const = default;

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const;
  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

using Point3 = Vec3;

// Direct and ground-reflected path of a source/microphone pair:
// d1 is the line-of-sight distance, d2 + d3 the reflected path running
// from the source to the reflection point on z = 0 and up to the mic.
struct PathGeometry {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  Point3 reflection_point;
};

// Mirror a point across the road plane. Throws kInvalidGeometry for z <= 0.
Point3 image_source(const Point3& p);

// Direct + reflected path for a source above the road and a microphone
// above the road. The reflection point is where the segment from the
// image source to the microphone crosses z = 0, which realizes the
// equal-angle specular reflection. Throws kInvalidGeometry when either
// point is on/below the plane or the points coincide.
PathGeometry path_geometry(const Point3& src, const Point3& mic);

// One cubic Bezier segment (4 control points).
struct BezierSegment {
  std::array<Point3, 4> p;

  Point3 eval(double u) const;
  Point3 derivative(double u) const;
  // Arc length of [0, u], adaptive Gauss-Legendre quadrature.
  double arc_length(double u = 1.0) const;
};

// Time-parameterized source path. Arc-length parameterized: each segment
// (line or cubic Bezier) is traversed at its constant speed, so the
// position at time t is the point at curve distance  sum(v_i * dt_i).
// Before start_offset the source holds at the first point; an optional
// end hold keeps it at the final point afterwards.
class Trajectory {
 public:
  enum class Kind { kStatic, kPolyline, kBezier };

  // Fixed source position, valid for any t >= 0.
  static Trajectory fixed(const Point3& p);

  // Piecewise-linear path. speeds has one entry per segment, or a single
  // entry broadcast to all segments. All speeds in (0, c).
  static Trajectory polyline(std::vector<Point3> waypoints,
                             std::vector<double> speeds,
                             double start_offset = 0.0);

  // Chain of cubic Beziers. control.size() == 3*k + 1; consecutive
  // segments share their boundary control point.
  static Trajectory bezier(std::vector<Point3> control,
                           std::vector<double> speeds,
                           double start_offset = 0.0);

  // Smooth cubic chain through/inside the convex hull of the given
  // points at one constant speed. Two points give a straight line, up to
  // four are used as Bezier control points directly (degree-elevated),
  // more become a clamped uniform cubic B-spline converted to Bezier
  // spans. The curve never leaves the convex hull of `points`.
  static Trajectory bezier_from_control_points(std::span<const Point3> points,
                                               double speed,
                                               double start_offset = 0.0);

  Kind kind() const { return kind_; }
  bool is_static() const { return kind_ == Kind::kStatic; }

  // Total time the trajectory is defined for; +inf for static.
  double duration() const;
  double start_offset() const { return start_offset_; }
  double path_length() const;

  // Position at time t in [0, duration]. Out-of-range t throws
  // kOutOfRange; there is no extrapolation.
  Point3 position_at(double t) const;

  // Copy with the source held at its final position until at least
  // total_duration. No-op if the trajectory already lasts that long.
  Trajectory with_end_hold(double total_duration) const;
  double end_hold() const { return end_hold_; }

  // Control/way points (used for conservative distance bounds: the curve
  // never leaves their convex hull).
  const std::vector<Point3>& waypoints() const { return waypoints_; }
  const std::vector<double>& speeds() const { return speeds_; }

 private:
  struct Segment {
    bool is_bezier = false;
    Point3 a, b;            // line endpoints when !is_bezier
    BezierSegment bezier;   // when is_bezier
    double speed = 1.0;
    double length = 0.0;
    double t_begin = 0.0;   // time the segment starts (after start offset)
    std::vector<double> arc_table;  // cumulative length at uniform u
  };

  Trajectory() = default;
  void finalize();
  Point3 segment_point(const Segment& s, double arc_pos) const;

  Kind kind_ = Kind::kStatic;
  std::vector<Point3> waypoints_;
  std::vector<double> speeds_;
  std::vector<Segment> segments_;
  double start_offset_ = 0.0;
  double end_hold_ = 0.0;
  double total_length_ = 0.0;
  double motion_time_ = 0.0;
};

}  // namespace roadac

#endif  // ROADACOUSTICS_GEOMETRY_HPP_
