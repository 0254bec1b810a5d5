#include "tangentnav/geometry.hpp"

#include <algorithm>

namespace tnav {

namespace {

// Corners farther than this from the robot degrade to the touch-point
// midpoint; intermediate targets stay bounded.
constexpr double kMaxCornerDistance = 1e3;

AvoidancePath make_corner_path(Point2 robot, Point2 target, Point2 touch_r, Point2 touch_t) {
  AvoidancePath path;
  path.touch_from_start = touch_r;
  path.touch_from_goal = touch_t;

  const Point2 u = touch_r - robot;
  const Point2 q = touch_t - target;
  const double det = cross(u, q);
  const double scale = norm(u) * norm(q);
  if (std::abs(det) <= kGeomTol * std::max(scale, 1.0)) {
    path.corner = 0.5 * (touch_r + touch_t);
    path.degraded = true;
  } else {
    // robot + s*u == target + w*q
    const double s = cross(target - robot, q) / det;
    path.corner = robot + s * u;
    if (distance(robot, path.corner) > kMaxCornerDistance) {
      path.corner = 0.5 * (touch_r + touch_t);
      path.degraded = true;
    }
  }
  path.length = distance(robot, path.corner) + distance(path.corner, target);
  path.side = cross(target - robot, path.corner - robot) >= 0.0 ? PathSide::kLeft
                                                                : PathSide::kRight;
  return path;
}

}  // namespace

ClosestPoint distance_point_segment(Point2 p, const Segment2& s) {
  const Point2 d = s.b - s.a;
  const double t = std::clamp(dot(p - s.a, d) / dot(d, d), 0.0, 1.0);
  const Point2 closest = s.a + t * d;
  return {distance(p, closest), closest};
}

std::array<Point2, 2> tangent_points(Point2 p, const Circle2& c) {
  const double d = distance(p, c.center);
  if (std::abs(d - c.radius) <= kGeomTol) throw DegenerateTangent();
  if (d < c.radius) throw PointInsideCircle();

  const double tangent_len = std::sqrt(d * d - c.radius * c.radius);
  const Point2 w = (1.0 / d) * (c.center - p);
  const double cos_b = tangent_len / d;
  const double sin_b = c.radius / d;
  const Point2 left = p + tangent_len * (cos_b * w + sin_b * perp_ccw(w));
  const Point2 right = p + tangent_len * (cos_b * w - sin_b * perp_ccw(w));
  return {left, right};
}

std::array<AvoidancePath, 2> avoidance_corners(Point2 robot, Point2 target, const Circle2& c) {
  const auto from_robot = tangent_points(robot, c);
  const auto from_target = tangent_points(target, c);
  // Same-side pairing: the detour past one side of the circle uses the
  // robot's left tangent together with the target's right tangent.
  return {make_corner_path(robot, target, from_robot[0], from_target[1]),
          make_corner_path(robot, target, from_robot[1], from_target[0])};
}

bool segment_circle_intersects(const Segment2& s, const Circle2& c) {
  return distance_point_segment(c.center, s).dist <= c.radius;
}

}  // namespace tnav
