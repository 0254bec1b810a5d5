#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "tangentnav/extrapolation.hpp"
#include "tangentnav/geometry.hpp"
#include "tangentnav/obstacle.hpp"

namespace tnav {

/// Horizon for obstacle-state extrapolation. Cubic extrapolation diverges
/// quickly; five seconds covers any crossing that matters inside a 6 m
/// critical area at 2 m/s.
inline constexpr double kExtrapolationHorizon = 5.0;

struct PlannerConfig {
  double r_robot = 0.5;
  double r_ca = 3.0;
  double r_sensing_max = 6.0;
  double d_sz = 0.25;          // safe zone margin on top of the obstacle radius
  double delta_t = 0.1;
  double epsilon_static = 0.02;    // max history displacement still counted as static
  double epsilon_waypoint = 0.1;   // arrival radius for intermediate targets

  void validate() const;
};

struct Observation {
  ObstacleId obstacle_id = 0;
  double t = 0.0;
  double range = 0.0;    // distance to the obstacle center
  double bearing = 0.0;  // angle in the robot-translated, unrotated frame, (-pi, pi]
  Point2 world_pos;
  double r_obstacle = 0.0;
};

/// Rolling window of the most recent consecutive detections of one obstacle,
/// oldest first. Dropped the first frame the obstacle goes unseen, so a
/// re-entering obstacle starts a fresh history.
struct ObstacleTrack {
  static constexpr std::size_t kMaxHistory = 4;

  ObstacleId obstacle_id = 0;
  std::vector<Observation> history;

  const Observation& latest() const { return history.back(); }
  const Observation& previous() const { return history[history.size() - 2]; }
};

using TrackMap = std::map<ObstacleId, ObstacleTrack>;

struct RobotPose {
  Point2 position;
  double heading = 0.0;
  double speed = 0.0;
};

enum class Region { kI = 1, kII = 2 };

enum class DecisionCase : int {
  kNoCritical = 1,         // nothing qualifies as most critical
  kPerpendicularEvade = 2, // critical obstacle sits in region II
  kStaticBlock = 3,        // static obstacle's safe zone on the path
  kDynamicBlock = 4,       // moving obstacle's safe zone on the path
  kHoldCourse = 5,         // robot reaches the crossing point first
  kYieldDetour = 6,        // obstacle gets there first, detour around it
};

struct SteeringDecision {
  DecisionCase decision_case = DecisionCase::kNoCritical;
  double heading_command = 0.0;
  std::optional<Point2> intermediate_target;  // newly issued this frame (cases 3/4/6)
  std::optional<ObstacleId> critical_obstacle;
  std::optional<Point2> came_from_side_corner;  // case 6: the corner the case-4 rule would pick
  bool emergency = false;  // tangents unavailable, fleeing straight away
};

struct InsufficientHistory : std::runtime_error {
  InsufficientHistory() : std::runtime_error("critical track has fewer than two observations") {}
};

struct CollisionEstimate {
  double t_cross = 0.0;  // absolute time the safe zone is predicted to touch the path
  Point2 point;          // predicted touch point on the path segment
};

/// Detections inside the critical area: obstacles with center distance
/// r <= r_ca - r_obstacle. Polar coordinates are measured in the world-axis-
/// aligned frame translated to the robot.
std::vector<Observation> sense(const RobotPose& robot, std::span<const ObstacleSnapshot> world,
                               const PlannerConfig& cfg, double t);

/// Appends this frame's observations, evicting beyond four; tracks of
/// obstacles unseen this frame are dropped.
TrackMap update_tracks(TrackMap tracks, std::span<const Observation> observations);

/// Region II is the closed axis-aligned quadrant pair (target quadrant plus
/// its point reflection) in the robot-translated frame; axis-lying points
/// count as region II.
Region classify_region(Point2 robot, Point2 target, Point2 obstacle);

/// The qualifying obstacle currently nearest the robot: at least two
/// observations, range decreasing over the last two frames, and approaching
/// the path (distance-to-path decreasing, or safe zone already touching it).
/// Ties on range resolve to the smallest id.
std::optional<ObstacleId> select_most_critical(const TrackMap& tracks, const RobotPose& robot,
                                               const Segment2& path, const PlannerConfig& cfg);

/// Predicted first touch of the track's safe zone with the path: crossing
/// time of the distance-to-path series against r_osz, then the closest path
/// point to the position extrapolated at that time. Requires >= 2
/// observations; nullopt when no crossing inside the horizon.
std::optional<CollisionEstimate> estimate_collision_point(const ObstacleTrack& track,
                                                          const Segment2& path, double r_osz,
                                                          double scan_step);

/// One of the six decision cases for the current critical track (nullptr for
/// none). Path-blocking obstacles are classified before the region-II test:
/// an on-path obstacle always lies in closed region II, so testing region II
/// first would leave the on-path cases unreachable.
/// Throws InsufficientHistory when the track holds fewer than two
/// observations (callers treat that as case 1).
DecisionCase classify_case(const ObstacleTrack* critical, const RobotPose& robot, Point2 target,
                           const PlannerConfig& cfg);

/// Steering for the given case. Cases 1/5 head for the active intermediate
/// target when one exists, else the target; case 2 turns perpendicular to the
/// obstacle->robot vector, preferring the goal-aligned side; cases 3/4/6
/// issue a tangent-corner intermediate target; when the robot or target lies
/// inside the safe zone the decision flees the obstacle and is flagged.
SteeringDecision react(DecisionCase decision_case, const ObstacleTrack* critical,
                       const RobotPose& robot, Point2 target, const PlannerConfig& cfg,
                       const std::optional<Point2>& active_intermediate);

/// Distance of each stored observation to the path segment, as a time series.
SampleSeries distance_to_path_series(const ObstacleTrack& track, const Segment2& path);

/// Per-episode decision state: observation tracks plus the active
/// intermediate target. One instance per episode; not for concurrent use.
class Planner {
 public:
  explicit Planner(PlannerConfig cfg);

  /// Full per-frame pipeline: sense, update tracks, select, classify, react,
  /// and manage the intermediate-target lifecycle.
  SteeringDecision decide_frame(const RobotPose& robot, Point2 target,
                                std::span<const ObstacleSnapshot> world, double t);

  /// Clears tracks and the intermediate target (used at waypoint switches).
  void reset();

  const TrackMap& tracks() const { return tracks_; }
  const std::optional<Point2>& intermediate_target() const { return intermediate_target_; }
  const PlannerConfig& config() const { return cfg_; }

 private:
  PlannerConfig cfg_;
  TrackMap tracks_;
  std::optional<Point2> intermediate_target_;
};

}  // namespace tnav
