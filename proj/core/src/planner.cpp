#include "tangentnav/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tnav {

namespace {

// Robot sitting on top of the goal; no meaningful path segment exists.
constexpr double kDegeneratePath = 1e-9;

bool is_static_track(const ObstacleTrack& track, double epsilon_static) {
  const auto& h = track.history;
  double max_disp = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = i + 1; j < h.size(); ++j) {
      max_disp = std::max(max_disp, distance(h[i].world_pos, h[j].world_pos));
    }
  }
  return max_disp < epsilon_static;
}

double safe_zone_radius(const Observation& obs, const PlannerConfig& cfg) {
  return obs.r_obstacle + cfg.d_sz;
}

// Corner on the side the obstacle came from, read off the bearing trend of
// the last two observations. A shrinking bearing means the obstacle drifted
// clockwise around the robot, i.e. it came from the greater-bearing side, so
// the greater-bearing corner is picked (and vice versa). Comparisons are
// wrapped relative to the goal bearing so the +-pi seam cannot flip them.
Point2 came_from_side_corner(const std::array<AvoidancePath, 2>& paths,
                             const ObstacleTrack& track, const RobotPose& robot, Point2 target) {
  const double dphi = wrap_to_pi(track.latest().bearing - track.previous().bearing);
  if (dphi == 0.0) {
    return paths[0].length <= paths[1].length ? paths[0].corner : paths[1].corner;
  }
  const double ref = bearing(robot.position, target);
  const double key0 = wrap_to_pi(bearing(robot.position, paths[0].corner) - ref);
  const double key1 = wrap_to_pi(bearing(robot.position, paths[1].corner) - ref);
  const bool pick_greater = dphi < 0.0;
  return ((key0 > key1) == pick_greater) ? paths[0].corner : paths[1].corner;
}

SteeringDecision emergency_flee(const ObstacleTrack& track, const RobotPose& robot,
                                DecisionCase decision_case) {
  SteeringDecision d;
  d.decision_case = decision_case;
  d.critical_obstacle = track.obstacle_id;
  d.emergency = true;
  const Point2 away = robot.position - track.latest().world_pos;
  d.heading_command = norm(away) > kDegeneratePath ? std::atan2(away.y, away.x) : robot.heading;
  return d;
}

}  // namespace

void PlannerConfig::validate() const {
  if (!(r_robot > 0.0) || !(r_robot <= r_ca) || !(r_ca <= r_sensing_max)) {
    throw std::invalid_argument("PlannerConfig: need 0 < r_robot <= r_ca <= r_sensing_max");
  }
  if (!(d_sz >= r_robot / 2.0)) {
    throw std::invalid_argument("PlannerConfig: d_sz must be at least r_robot/2");
  }
  if (!(delta_t > 0.0)) throw std::invalid_argument("PlannerConfig: delta_t must be positive");
  if (!(epsilon_static > 0.0) || !(epsilon_waypoint > 0.0)) {
    throw std::invalid_argument("PlannerConfig: epsilons must be positive");
  }
}

std::vector<Observation> sense(const RobotPose& robot, std::span<const ObstacleSnapshot> world,
                               const PlannerConfig& cfg, double t) {
  std::vector<Observation> out;
  for (const auto& obs : world) {
    const Point2 rel = obs.position - robot.position;
    const double range = norm(rel);
    if (range > cfg.r_ca - obs.radius) continue;
    double phi = std::atan2(rel.y, rel.x);
    if (phi <= -kPi) phi = kPi;
    out.push_back({obs.id, t, range, phi, obs.position, obs.radius});
  }
  return out;
}

TrackMap update_tracks(TrackMap tracks, std::span<const Observation> observations) {
  TrackMap next;
  for (const auto& obs : observations) {
    ObstacleTrack track{obs.obstacle_id, {}};
    if (auto it = tracks.find(obs.obstacle_id); it != tracks.end()) {
      track = std::move(it->second);
    }
    track.history.push_back(obs);
    if (track.history.size() > ObstacleTrack::kMaxHistory) {
      track.history.erase(track.history.begin());
    }
    next.emplace(obs.obstacle_id, std::move(track));
  }
  return next;
}

Region classify_region(Point2 robot, Point2 target, Point2 obstacle) {
  const Point2 d = obstacle - robot;
  const Point2 tv = target - robot;
  // Same-sign (or axis-lying) coordinates relative to the target quadrant.
  return (d.x * tv.x) * (d.y * tv.y) >= 0.0 ? Region::kII : Region::kI;
}

SampleSeries distance_to_path_series(const ObstacleTrack& track, const Segment2& path) {
  std::vector<Sample> samples;
  samples.reserve(track.history.size());
  for (const auto& obs : track.history) {
    samples.push_back({obs.t, distance_point_segment(obs.world_pos, path).dist});
  }
  return SampleSeries(std::move(samples));
}

std::optional<ObstacleId> select_most_critical(const TrackMap& tracks, const RobotPose& robot,
                                               const Segment2& path, const PlannerConfig& cfg) {
  (void)robot;
  std::optional<ObstacleId> best;
  double best_range = std::numeric_limits<double>::infinity();
  for (const auto& [id, track] : tracks) {
    if (track.history.size() < 2) continue;
    const Observation& cur = track.latest();
    const Observation& prev = track.previous();
    if (!(cur.range - prev.range < 0.0)) continue;  // must be approaching the robot
    const double d_cur = distance_point_segment(cur.world_pos, path).dist;
    const double d_prev = distance_point_segment(prev.world_pos, path).dist;
    const bool approaching_path = d_cur < d_prev || d_cur <= safe_zone_radius(cur, cfg);
    if (!approaching_path) continue;
    if (cur.range < best_range) {  // map order makes ties resolve to the smallest id
      best_range = cur.range;
      best = id;
    }
  }
  return best;
}

std::optional<CollisionEstimate> estimate_collision_point(const ObstacleTrack& track,
                                                          const Segment2& path, double r_osz,
                                                          double scan_step) {
  const auto series = distance_to_path_series(track, path);
  const auto t_cross = first_crossing_time(series, r_osz, kExtrapolationHorizon, scan_step);
  if (!t_cross) return std::nullopt;

  std::vector<Sample> xs;
  std::vector<Sample> ys;
  xs.reserve(track.history.size());
  ys.reserve(track.history.size());
  for (const auto& obs : track.history) {
    xs.push_back({obs.t, obs.world_pos.x});
    ys.push_back({obs.t, obs.world_pos.y});
  }
  const Point2 predicted{extrapolate(SampleSeries(std::move(xs)), *t_cross),
                         extrapolate(SampleSeries(std::move(ys)), *t_cross)};
  return CollisionEstimate{*t_cross, distance_point_segment(predicted, path).point};
}

DecisionCase classify_case(const ObstacleTrack* critical, const RobotPose& robot, Point2 target,
                           const PlannerConfig& cfg) {
  if (critical == nullptr) return DecisionCase::kNoCritical;
  if (critical->history.size() < 2) throw InsufficientHistory();

  const Observation& cur = critical->latest();
  const double r_osz = safe_zone_radius(cur, cfg);
  const Segment2 path(robot.position, target);

  if (segment_circle_intersects(path, Circle2(cur.world_pos, r_osz))) {
    return is_static_track(*critical, cfg.epsilon_static) ? DecisionCase::kStaticBlock
                                                          : DecisionCase::kDynamicBlock;
  }
  if (classify_region(robot.position, target, cur.world_pos) == Region::kII) {
    return DecisionCase::kPerpendicularEvade;
  }

  const auto estimate = estimate_collision_point(*critical, path, r_osz, cfg.delta_t / 10.0);
  if (!estimate) return DecisionCase::kHoldCourse;
  const double obstacle_eta = estimate->t_cross - cur.t;
  const double robot_eta =
      robot.speed > 0.0 ? distance(robot.position, estimate->point) / robot.speed
                        : std::numeric_limits<double>::infinity();
  return robot_eta < obstacle_eta ? DecisionCase::kHoldCourse : DecisionCase::kYieldDetour;
}

SteeringDecision react(DecisionCase decision_case, const ObstacleTrack* critical,
                       const RobotPose& robot, Point2 target, const PlannerConfig& cfg,
                       const std::optional<Point2>& active_intermediate) {
  SteeringDecision d;
  d.decision_case = decision_case;
  if (critical != nullptr) d.critical_obstacle = critical->obstacle_id;

  switch (decision_case) {
    case DecisionCase::kNoCritical:
    case DecisionCase::kHoldCourse: {
      const Point2 aim = active_intermediate.value_or(target);
      d.heading_command =
          distance(robot.position, aim) > kDegeneratePath ? bearing(robot.position, aim) : robot.heading;
      return d;
    }

    case DecisionCase::kPerpendicularEvade: {
      const Point2 v = robot.position - critical->latest().world_pos;
      if (norm(v) <= kDegeneratePath) return emergency_flee(*critical, robot, decision_case);
      const Point2 ccw = perp_ccw(v);
      const Point2 cw = -ccw;
      const Point2 goal_dir = target - robot.position;
      // Goal-aligned perpendicular; ties fall to the counterclockwise one.
      const Point2 pick = dot(cw, goal_dir) > dot(ccw, goal_dir) ? cw : ccw;
      d.heading_command = std::atan2(pick.y, pick.x);
      return d;
    }

    case DecisionCase::kStaticBlock:
    case DecisionCase::kDynamicBlock:
    case DecisionCase::kYieldDetour: {
      const Observation& cur = critical->latest();
      const Circle2 safe_zone(cur.world_pos, safe_zone_radius(cur, cfg));
      const double margin = safe_zone.radius + kGeomTol;
      if (distance(robot.position, safe_zone.center) <= margin ||
          distance(target, safe_zone.center) <= margin) {
        return emergency_flee(*critical, robot, decision_case);
      }
      const auto paths = avoidance_corners(robot.position, target, safe_zone);
      Point2 corner;
      if (decision_case == DecisionCase::kStaticBlock) {
        corner = paths[0].length <= paths[1].length ? paths[0].corner : paths[1].corner;
      } else if (decision_case == DecisionCase::kDynamicBlock) {
        corner = came_from_side_corner(paths, *critical, robot, target);
      } else {
        corner = paths[0].length >= paths[1].length ? paths[0].corner : paths[1].corner;
        d.came_from_side_corner = came_from_side_corner(paths, *critical, robot, target);
      }
      d.intermediate_target = corner;
      d.heading_command = bearing(robot.position, corner);
      return d;
    }
  }
  return d;  // unreachable; keeps -Wreturn-type quiet
}

Planner::Planner(PlannerConfig cfg) : cfg_(cfg) { cfg_.validate(); }

void Planner::reset() {
  tracks_.clear();
  intermediate_target_.reset();
}

SteeringDecision Planner::decide_frame(const RobotPose& robot, Point2 target,
                                       std::span<const ObstacleSnapshot> world, double t) {
  tracks_ = update_tracks(std::move(tracks_), sense(robot, world, cfg_, t));

  if (intermediate_target_ &&
      distance(robot.position, *intermediate_target_) <= cfg_.epsilon_waypoint) {
    intermediate_target_.reset();
  }

  if (distance(robot.position, target) <= kDegeneratePath) {
    SteeringDecision d;
    d.heading_command = robot.heading;
    return d;
  }

  const Segment2 path(robot.position, target);
  const auto critical_id = select_most_critical(tracks_, robot, path, cfg_);
  const ObstacleTrack* critical = critical_id ? &tracks_.at(*critical_id) : nullptr;
  const DecisionCase decision_case = classify_case(critical, robot, target, cfg_);
  const SteeringDecision decision =
      react(decision_case, critical, robot, target, cfg_, intermediate_target_);

  switch (decision_case) {
    case DecisionCase::kPerpendicularEvade:
      intermediate_target_.reset();  // superseded by the evade heading
      break;
    case DecisionCase::kStaticBlock:
    case DecisionCase::kDynamicBlock:
    case DecisionCase::kYieldDetour:
      intermediate_target_ = decision.intermediate_target;
      break;
    case DecisionCase::kNoCritical:
    case DecisionCase::kHoldCourse:
      break;  // active target persists until reached
  }
  return decision;
}

}  // namespace tnav
