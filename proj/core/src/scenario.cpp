#include "tangentnav/scenario.hpp"

#include <fstream>
#include <sstream>

#include "scenario_detail.hpp"

namespace tnav {

namespace detail {

using nlohmann::json;

namespace {

json point_to_json(Point2 p) { return json::array({p.x, p.y}); }

Point2 point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("scenario: expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json scenario_to_json(const EpisodeConfig& cfg) {
  json j;
  j["env"] = {{"bounds", {cfg.env.bounds.xmin, cfg.env.bounds.ymin, cfg.env.bounds.xmax,
                          cfg.env.bounds.ymax}},
              {"n", cfg.env.n},
              {"V", cfg.env.V},
              {"A", cfg.env.A},
              {"r_obstacle", cfg.env.r_obstacle},
              {"seed", cfg.env.seed}};
  if (!cfg.env.static_obstacles.empty()) {
    json statics = json::array();
    for (const auto& p : cfg.env.static_obstacles) statics.push_back(point_to_json(p));
    j["env"]["static_obstacles"] = std::move(statics);
  }
  j["planner"] = {{"r_robot", cfg.planner.r_robot},
                  {"r_ca", cfg.planner.r_ca},
                  {"r_sensing_max", cfg.planner.r_sensing_max},
                  {"d_sz", cfg.planner.d_sz},
                  {"delta_t", cfg.planner.delta_t},
                  {"epsilon_static", cfg.planner.epsilon_static},
                  {"epsilon_waypoint", cfg.planner.epsilon_waypoint}};
  j["start"] = point_to_json(cfg.start);
  json wps = json::array();
  for (const auto& wp : cfg.waypoints) wps.push_back(point_to_json(wp));
  j["waypoints"] = std::move(wps);
  j["v"] = cfg.v;
  j["goal_tolerance"] = cfg.goal_tolerance;
  j["timeout"] = cfg.timeout;
  return j;
}

EpisodeConfig scenario_from_json(const json& j) {
  EpisodeConfig cfg = default_episode_config();
  cfg.timeout = 0.0;

  if (j.contains("env")) {
    const auto& e = j.at("env");
    if (e.contains("bounds")) {
      const auto& b = e.at("bounds");
      if (!b.is_array() || b.size() != 4) {
        throw std::invalid_argument("scenario: env.bounds must be [xmin, ymin, xmax, ymax]");
      }
      cfg.env.bounds = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>(),
                        b[3].get<double>()};
    }
    cfg.env.n = e.value("n", cfg.env.n);
    cfg.env.V = e.value("V", cfg.env.V);
    cfg.env.A = e.value("A", cfg.env.A);
    cfg.env.r_obstacle = e.value("r_obstacle", cfg.env.r_obstacle);
    cfg.env.seed = e.value("seed", cfg.env.seed);
    cfg.env.static_obstacles.clear();
    if (e.contains("static_obstacles")) {
      for (const auto& p : e.at("static_obstacles")) {
        cfg.env.static_obstacles.push_back(point_from_json(p));
      }
    }
  }
  if (j.contains("planner")) {
    const auto& p = j.at("planner");
    cfg.planner.r_robot = p.value("r_robot", cfg.planner.r_robot);
    cfg.planner.r_ca = p.value("r_ca", cfg.planner.r_ca);
    cfg.planner.r_sensing_max = p.value("r_sensing_max", cfg.planner.r_sensing_max);
    cfg.planner.d_sz = p.value("d_sz", cfg.planner.d_sz);
    cfg.planner.delta_t = p.value("delta_t", cfg.planner.delta_t);
    cfg.planner.epsilon_static = p.value("epsilon_static", cfg.planner.epsilon_static);
    cfg.planner.epsilon_waypoint = p.value("epsilon_waypoint", cfg.planner.epsilon_waypoint);
  }
  if (j.contains("start")) cfg.start = point_from_json(j.at("start"));
  if (j.contains("waypoints")) {
    cfg.waypoints.clear();
    for (const auto& wp : j.at("waypoints")) cfg.waypoints.push_back(point_from_json(wp));
  }
  cfg.v = j.value("v", cfg.v);
  cfg.goal_tolerance = j.value("goal_tolerance", cfg.goal_tolerance);
  cfg.timeout = j.value("timeout", cfg.timeout);

  cfg.finalize();
  cfg.validate();
  return cfg;
}

}  // namespace detail

EpisodeConfig parse_scenario(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario: invalid JSON: ") + e.what());
  }
  return detail::scenario_from_json(j);
}

std::string serialize_scenario(const EpisodeConfig& cfg) {
  return detail::scenario_to_json(cfg).dump(2) + "\n";
}

EpisodeConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open scenario file: " + path.string());
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_scenario(buf.str());
}

void save_scenario(const EpisodeConfig& cfg, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open scenario file for writing: " + path.string());
  file << serialize_scenario(cfg);
  if (!file) throw std::runtime_error("failed writing scenario file: " + path.string());
}

}  // namespace tnav
