#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tnav {

inline constexpr double kPi = std::numbers::pi;

/// Absolute tolerance for geometric predicates. Coordinates are meters-scale,
/// so conditioning stays benign at this resolution.
inline constexpr double kGeomTol = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline Point2 operator-(Point2 p) { return {-p.x, -p.y}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }

/// Counterclockwise perpendicular (rotate +90 degrees).
inline Point2 perp_ccw(Point2 p) { return {-p.y, p.x}; }

inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Heading of the vector from -> to, in radians in (-pi, pi].
inline double bearing(Point2 from, Point2 to) {
  const Point2 d = to - from;
  const double a = std::atan2(d.y, d.x);
  return a <= -kPi ? kPi : a;
}

/// Normalize an angle into (-pi, pi].
inline double wrap_to_pi(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? kPi : a;
}

inline Point2 unit_from_heading(double heading) {
  return {std::cos(heading), std::sin(heading)};
}

struct Segment2 {
  Segment2(Point2 a_, Point2 b_) : a(a_), b(b_) {
    if (!is_finite(a) || !is_finite(b) || !(distance(a, b) > 0.0)) {
      throw std::invalid_argument("Segment2: degenerate segment");
    }
  }
  Point2 a;
  Point2 b;
};

struct Circle2 {
  Circle2(Point2 center_, double radius_) : center(center_), radius(radius_) {
    if (!is_finite(center) || !(radius > 0.0)) {
      throw std::invalid_argument("Circle2: radius must be positive");
    }
  }
  Point2 center;
  double radius;
};

struct PointInsideCircle : std::runtime_error {
  PointInsideCircle() : std::runtime_error("point lies inside the circle") {}
};

struct DegenerateTangent : std::runtime_error {
  DegenerateTangent() : std::runtime_error("point lies on the circle, tangent is degenerate") {}
};

struct ClosestPoint {
  double dist = 0.0;
  Point2 point;
};

/// Shortest distance from p to the segment, plus the closest segment point.
ClosestPoint distance_point_segment(Point2 p, const Segment2& s);

/// Tangent touch points on c drawn from the external point p. Index 0 is the
/// touch point on the left (counterclockwise) side of the ray p -> center,
/// index 1 on the right, i.e. ordered counterclockwise as seen from p.
/// Throws DegenerateTangent when p is on the circle (|d - r| <= kGeomTol)
/// and PointInsideCircle when p is strictly inside.
std::array<Point2, 2> tangent_points(Point2 p, const Circle2& c);

enum class PathSide { kLeft, kRight };

struct AvoidancePath {
  Point2 corner;            // intermediate corner of the two-leg detour
  double length = 0.0;      // |robot->corner| + |corner->target|
  PathSide side = PathSide::kLeft;  // side of the directed robot->target line
  Point2 touch_from_start;  // tangent touch point of the start-side line
  Point2 touch_from_goal;   // tangent touch point of the goal-side line
  bool degraded = false;    // parallel/far-corner fallback used
};

/// The two tangent-line detours around c between robot and target. Four
/// tangent lines (two per endpoint) pair into two corners, one per side of
/// the circle: the robot's left tangent meets the target's right tangent and
/// vice versa. Index 0 uses the robot's left tangent.
/// When paired tangents are (near-)parallel, or the corner lands farther than
/// 1e3 m from the robot, the corner degrades to the midpoint of the two touch
/// points and the path is flagged.
std::array<AvoidancePath, 2> avoidance_corners(Point2 robot, Point2 target, const Circle2& c);

/// True iff the circle's disc touches the segment.
bool segment_circle_intersects(const Segment2& s, const Circle2& c);

}  // namespace tnav
