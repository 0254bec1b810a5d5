#include "tangentnav/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scenario_detail.hpp"

namespace tnav {

namespace {

double route_length(Point2 start, std::span<const Point2> waypoints) {
  double len = 0.0;
  Point2 prev = start;
  for (const auto& wp : waypoints) {
    len += distance(prev, wp);
    prev = wp;
  }
  return len;
}

}  // namespace

void EpisodeConfig::finalize() {
  if (timeout <= 0.0) {
    timeout = std::max(30.0, 5.0 * route_length(start, waypoints) / std::max(v, 1e-9));
  }
}

void EpisodeConfig::validate() const {
  env.validate();
  planner.validate();
  if (waypoints.empty()) throw std::invalid_argument("EpisodeConfig: waypoints must be non-empty");
  if (!(v > 0.0) || v > env.V + 1e-12) {
    throw std::invalid_argument("EpisodeConfig: robot speed must be in (0, V]");
  }
  if (!(goal_tolerance > 0.0)) {
    throw std::invalid_argument("EpisodeConfig: goal_tolerance must be positive");
  }
  if (!(timeout > 0.0)) throw std::invalid_argument("EpisodeConfig: timeout must be positive");
  if (!is_finite(start)) throw std::invalid_argument("EpisodeConfig: start must be finite");
  for (const auto& wp : waypoints) {
    if (!is_finite(wp)) throw std::invalid_argument("EpisodeConfig: waypoints must be finite");
  }
}

EpisodeConfig default_episode_config() {
  EpisodeConfig cfg;
  cfg.env = EnvConfig{};
  cfg.env.n = 5;
  cfg.env.seed = 1;
  cfg.planner = PlannerConfig{};
  cfg.start = {0.0, 0.0};
  cfg.waypoints = {{10.0, 10.0}};
  cfg.v = 2.0;
  cfg.goal_tolerance = 0.1;
  cfg.timeout = 0.0;
  cfg.finalize();
  return cfg;
}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kSuccess: return "success";
    case Outcome::kCollision: return "collision";
    case Outcome::kTimeout: return "timeout";
  }
  return "unknown";
}

EpisodeResult run_episode(const EpisodeConfig& cfg) {
  PlannerPolicy policy(cfg.planner);
  return run_episode(cfg, policy);
}

EpisodeResult run_episode(const EpisodeConfig& raw_cfg, SteeringPolicy& policy) {
  EpisodeConfig cfg = raw_cfg;
  cfg.finalize();
  cfg.validate();

  const double spawn_exclusion = cfg.planner.r_robot + cfg.env.r_obstacle + cfg.planner.d_sz;
  Environment env(cfg.env, cfg.start, spawn_exclusion);

  RobotPose robot{cfg.start, bearing(cfg.start, cfg.waypoints.front()), cfg.v};
  std::size_t wp = 0;
  const double dt = cfg.planner.delta_t;

  EpisodeResult result;
  for (long frame = 0;; ++frame) {
    const double t = static_cast<double>(frame) * dt;
    env.advance_to(t);
    const auto world = env.snapshot();

    bool collided = false;
    for (const auto& obs : world) {
      if (distance(robot.position, obs.position) <= cfg.planner.r_robot + obs.radius) {
        collided = true;
        break;
      }
    }
    bool reached_goal = false;
    if (!collided) {  // collision outranks arrival within the same frame
      while (wp < cfg.waypoints.size() &&
             distance(robot.position, cfg.waypoints[wp]) <= cfg.goal_tolerance) {
        ++wp;
        policy.reset();
      }
      reached_goal = wp == cfg.waypoints.size();
    }

    const Point2 target = cfg.waypoints[std::min(wp, cfg.waypoints.size() - 1)];
    const SteeringDecision decision = policy.decide(robot, target, world, t);
    robot.heading = decision.heading_command;

    FrameRecord record;
    record.t = t;
    record.robot = robot;
    record.decision_case = decision.decision_case;
    record.critical_obstacle = decision.critical_obstacle;
    record.intermediate_target = policy.active_intermediate_target();
    record.emergency = decision.emergency;
    record.obstacles.reserve(world.size());
    for (const auto& obs : world) record.obstacles.emplace_back(obs.id, obs.position);
    result.frames.push_back(std::move(record));

    if (collided) {
      result.outcome = Outcome::kCollision;
      result.travel_time = t;
      break;
    }
    if (reached_goal) {
      result.outcome = Outcome::kSuccess;
      result.travel_time = t;
      break;
    }
    if (t > cfg.timeout) {
      result.outcome = Outcome::kTimeout;
      result.travel_time = t;
      break;
    }

    robot.position = robot.position + (cfg.v * dt) * unit_from_heading(robot.heading);
    result.path_length += cfg.v * dt;
  }
  return result;
}

std::string trajectory_log_string(const EpisodeResult& result, const EpisodeConfig& cfg) {
  using nlohmann::json;
  std::ostringstream out;

  json header = detail::scenario_to_json(cfg);
  header["type"] = "config";
  out << header.dump() << '\n';

  for (const auto& f : result.frames) {
    json rec;
    rec["type"] = "frame";
    rec["t"] = f.t;
    rec["robot"] = {{"x", f.robot.position.x}, {"y", f.robot.position.y},
                    {"heading", f.robot.heading}, {"speed", f.robot.speed}};
    rec["case"] = static_cast<int>(f.decision_case);
    rec["critical"] = f.critical_obstacle ? json(*f.critical_obstacle) : json(nullptr);
    rec["intermediate_target"] =
        f.intermediate_target ? json{{"x", f.intermediate_target->x}, {"y", f.intermediate_target->y}}
                              : json(nullptr);
    rec["emergency"] = f.emergency;
    json obs = json::array();
    for (const auto& [id, pos] : f.obstacles) obs.push_back({id, pos.x, pos.y});
    rec["obstacles"] = std::move(obs);
    out << rec.dump() << '\n';
  }

  json summary;
  summary["type"] = "summary";
  summary["outcome"] = to_string(result.outcome);
  summary["travel_time"] = result.travel_time;
  summary["path_length"] = result.path_length;
  summary["frames"] = result.frames.size();
  out << summary.dump() << '\n';
  return out.str();
}

void write_trajectory_log(const EpisodeResult& result, const EpisodeConfig& cfg,
                          const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open trajectory log for writing: " + path.string());
  file << trajectory_log_string(result, cfg);
  if (!file) throw std::runtime_error("failed writing trajectory log: " + path.string());
}

}  // namespace tnav
