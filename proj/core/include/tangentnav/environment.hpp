#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tangentnav/geometry.hpp"
#include "tangentnav/obstacle.hpp"
#include "tangentnav/rng.hpp"

namespace tnav {

struct ZeroArea : std::runtime_error {
  ZeroArea() : std::runtime_error("map area is zero") {}
};

struct Rect {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  bool valid() const { return xmax > xmin && ymax > ymin; }
  bool contains(Point2 p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
};

struct EnvConfig {
  Rect bounds{0.0, 0.0, 10.0, 10.0};
  int n = 0;                 // randomly spawned dynamic obstacles
  double V = 2.0;            // speed cap shared by robot and obstacles
  double A = 2.0;            // obstacle acceleration cap
  double r_obstacle = 0.3;
  std::uint64_t seed = 0;
  std::vector<Point2> static_obstacles;  // pinned, never move

  void validate() const;
};

enum class SegmentEnd {
  kDuration,  // re-draw cadence reached
  kSpeedCap,  // speed would exceed V past t_end
  kBoundary,  // position exits the bounds at t_end
};

/// One piece of an obstacle's motion: position is a degree-2 polynomial of
/// local time tau = t - t_start. Within [t_start, t_end] the speed stays
/// <= V and the position stays inside the bounds by construction.
struct QuadraticTrajectory {
  double a0x = 0.0, a1x = 0.0, a2x = 0.0;
  double a0y = 0.0, a1y = 0.0, a2y = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
  SegmentEnd end_reason = SegmentEnd::kDuration;
  bool exit_x = false;  // axis crossed when end_reason == kBoundary
  bool exit_y = false;

  Point2 position(double t) const {
    const double tau = t - t_start;
    return {a0x + tau * (a1x + tau * a2x), a0y + tau * (a1y + tau * a2y)};
  }
  Point2 velocity(double t) const {
    const double tau = t - t_start;
    return {a1x + 2.0 * a2x * tau, a1y + 2.0 * a2y * tau};
  }
  Point2 acceleration() const { return {2.0 * a2x, 2.0 * a2y}; }
};

struct ObstacleState {
  ObstacleId id = 0;
  QuadraticTrajectory trajectory;
  double r_obstacle = 0.0;
};

/// |x_target - x_initial| * |y_target - y_initial|.
double map_area(Point2 initial, Point2 target);

/// Obstacle count over drivable area. Throws ZeroArea.
double obstacle_density(int n, double area);

/// A trajectory never moving away from pos; t_end at +infinity unless capped.
QuadraticTrajectory stationary_trajectory(Point2 pos, double t_start, double t_end);

/// Random motion segment from start: speed uniform in [0, V] with uniform
/// direction, acceleration magnitude uniform in [0, A] with uniform
/// direction. t_end is the earliest of the re-draw cadence (duration_hint),
/// the boundary exit, and the time the speed cap would be violated; draws
/// whose horizon falls below min_duration are rejected (bounded at 100, then
/// a stationary fallback). V = 0 yields the stationary trajectory directly.
QuadraticTrajectory sample_trajectory(Rng& rng, const Rect& bounds, Point2 start, double V,
                                      double A, double duration_hint, double min_duration,
                                      double t_start = 0.0);

/// Advances the obstacle so its trajectory covers time t. Boundary exits
/// re-enter mirror-style (exited components reflected across the bound,
/// their velocity negated); speed-cap and cadence ends keep the current
/// velocity. Either way a fresh acceleration is drawn for the new segment.
ObstacleState step_obstacle(ObstacleState state, double t, Rng& rng, const Rect& bounds, double V,
                            double A, double duration_hint = 2.0, double min_duration = 0.1);

/// The set of obstacles of one episode, stepped in lockstep. Dynamic
/// obstacles get independent per-obstacle streams derived from the config
/// seed; identical configs replay identical motion.
class Environment {
 public:
  explicit Environment(const EnvConfig& cfg, std::optional<Point2> spawn_exclusion_center = {},
                       double spawn_exclusion_radius = 0.0);

  /// Advance all obstacles to time t (monotone per instance).
  void advance_to(double t);

  /// Positions at the last advanced time.
  std::vector<ObstacleSnapshot> snapshot() const;

  const std::vector<ObstacleState>& states() const { return states_; }
  const EnvConfig& config() const { return cfg_; }
  double time() const { return t_; }

  static constexpr double kDurationHint = 2.0;
  static constexpr double kMinSegmentDuration = 0.1;

 private:
  EnvConfig cfg_;
  std::vector<ObstacleState> states_;
  std::vector<Rng> streams_;  // one per dynamic obstacle
  double t_ = 0.0;
};

}  // namespace tnav
