#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tangentnav/environment.hpp"
#include "tangentnav/geometry.hpp"
#include "tangentnav/planner.hpp"

namespace tnav {

struct EpisodeConfig {
  EnvConfig env;
  PlannerConfig planner;
  Point2 start{0.0, 0.0};
  std::vector<Point2> waypoints;
  double v = 2.0;               // constant robot speed
  double goal_tolerance = 0.1;
  double timeout = 0.0;         // <= 0 resolves to max(30 s, 5x route length / v)

  /// Fills the auto timeout and checks invariants.
  void finalize();
  void validate() const;
};

/// Default single-leg run across the 10 x 10 m map diagonal.
EpisodeConfig default_episode_config();

enum class Outcome { kSuccess, kCollision, kTimeout };

const char* to_string(Outcome outcome);

struct FrameRecord {
  double t = 0.0;
  RobotPose robot;
  DecisionCase decision_case = DecisionCase::kNoCritical;
  std::optional<ObstacleId> critical_obstacle;
  std::optional<Point2> intermediate_target;  // active sub-goal this frame
  bool emergency = false;
  std::vector<std::pair<ObstacleId, Point2>> obstacles;
};

struct EpisodeResult {
  Outcome outcome = Outcome::kTimeout;
  std::vector<FrameRecord> frames;
  double travel_time = 0.0;
  double path_length = 0.0;
};

/// Steering source for the episode loop. The default implementation wraps a
/// Planner; tests substitute scripted policies.
class SteeringPolicy {
 public:
  virtual ~SteeringPolicy() = default;
  virtual SteeringDecision decide(const RobotPose& robot, Point2 target,
                                  std::span<const ObstacleSnapshot> world, double t) = 0;
  virtual void reset() {}
  virtual std::optional<Point2> active_intermediate_target() const { return std::nullopt; }
};

class PlannerPolicy final : public SteeringPolicy {
 public:
  explicit PlannerPolicy(PlannerConfig cfg) : planner_(cfg) {}
  SteeringDecision decide(const RobotPose& robot, Point2 target,
                          std::span<const ObstacleSnapshot> world, double t) override {
    return planner_.decide_frame(robot, target, world, t);
  }
  void reset() override { planner_.reset(); }
  std::optional<Point2> active_intermediate_target() const override {
    return planner_.intermediate_target();
  }
  const Planner& planner() const { return planner_; }

 private:
  Planner planner_;
};

/// Discrete-time episode: every delta_t the policy decides a heading, the
/// robot moves v * delta_t along it, and obstacles advance. Collision is
/// checked before waypoint arrival at each new frame; the planner resets at
/// every waypoint switch. Fully deterministic in the config.
EpisodeResult run_episode(const EpisodeConfig& cfg);
EpisodeResult run_episode(const EpisodeConfig& cfg, SteeringPolicy& policy);

/// Line-delimited JSON log: a config record, one record per frame, and a
/// summary record last. Identical configs produce byte-identical files.
void write_trajectory_log(const EpisodeResult& result, const EpisodeConfig& cfg,
                          const std::filesystem::path& path);

std::string trajectory_log_string(const EpisodeResult& result, const EpisodeConfig& cfg);

}  // namespace tnav
