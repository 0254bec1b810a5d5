#include "tangentnav/environment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace tnav {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxObstacles = 100;
constexpr int kMaxDraws = 100;

struct ExitInfo {
  double tau = kInf;
  bool x_axis = false;
  bool y_axis = false;
};

// Real roots of a*t^2 + b*t + c = 0, degenerating to linear when a ~ 0.
int quadratic_roots(double a, double b, double c, double out[2]) {
  if (std::abs(a) < 1e-300) {
    if (std::abs(b) < 1e-300) return 0;
    out[0] = -c / b;
    return 1;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return 0;
  const double sq = std::sqrt(disc);
  const double q = b >= 0.0 ? -0.5 * (b + sq) : -0.5 * (b - sq);
  out[0] = q / a;
  int n = 1;
  if (q != 0.0) out[n++] = c / q;
  return n;
}

// Earliest outward crossing of either bound on one axis; kInf when the
// coordinate never leaves [lo, hi].
double axis_exit_time(double p0, double v, double a2, double lo, double hi) {
  double best = kInf;
  double roots[2];
  const double bounds_arr[2] = {hi, lo};
  for (int side = 0; side < 2; ++side) {
    const double bound = bounds_arr[side];
    const int n = quadratic_roots(a2, v, p0 - bound, roots);
    for (int i = 0; i < n; ++i) {
      double tau = roots[i];
      if (tau < -1e-12 || tau >= best) continue;
      tau = std::max(tau, 0.0);
      const double deriv = v + 2.0 * a2 * tau;
      const bool outward = side == 0 ? (deriv > 0.0 || (deriv == 0.0 && a2 > 0.0))
                                     : (deriv < 0.0 || (deriv == 0.0 && a2 < 0.0));
      if (outward) best = tau;
    }
  }
  return best;
}

ExitInfo boundary_exit_time(const Rect& bounds, Point2 pos, Point2 vel, Point2 accel_half) {
  const double tx = axis_exit_time(pos.x, vel.x, accel_half.x, bounds.xmin, bounds.xmax);
  const double ty = axis_exit_time(pos.y, vel.y, accel_half.y, bounds.ymin, bounds.ymax);
  ExitInfo info;
  info.tau = std::min(tx, ty);
  if (info.tau == kInf) return info;
  info.x_axis = tx <= info.tau + 1e-12;
  info.y_axis = ty <= info.tau + 1e-12;
  return info;
}

// Time until |vel + accel*tau| first exceeds V; kInf when it never does.
double speed_cap_time(Point2 vel, Point2 accel, double V) {
  const double a2 = dot(accel, accel);
  if (a2 <= 0.0) return kInf;
  const double va = dot(vel, accel);
  const double slack = V * V - dot(vel, vel);
  const double disc = va * va + a2 * std::max(slack, 0.0);
  return (-va + std::sqrt(disc)) / a2;
}

std::optional<QuadraticTrajectory> try_build_segment(const Rect& bounds, Point2 pos, Point2 vel,
                                                     Point2 accel, double V, double t_start,
                                                     double duration_hint, double min_duration) {
  const ExitInfo exit = boundary_exit_time(bounds, pos, vel, {0.5 * accel.x, 0.5 * accel.y});
  const double cap = speed_cap_time(vel, accel, V);
  const double horizon = std::min(exit.tau, cap);
  if (horizon < min_duration) return std::nullopt;

  QuadraticTrajectory tr;
  tr.a0x = pos.x;
  tr.a1x = vel.x;
  tr.a2x = 0.5 * accel.x;
  tr.a0y = pos.y;
  tr.a1y = vel.y;
  tr.a2y = 0.5 * accel.y;
  tr.t_start = t_start;
  const double duration = std::min(duration_hint, horizon);
  tr.t_end = t_start + duration;
  if (duration < horizon) {
    tr.end_reason = SegmentEnd::kDuration;
  } else if (exit.tau <= cap) {
    tr.end_reason = SegmentEnd::kBoundary;
    tr.exit_x = exit.x_axis;
    tr.exit_y = exit.y_axis;
  } else {
    tr.end_reason = SegmentEnd::kSpeedCap;
  }
  return tr;
}

// Fresh acceleration for an inherited velocity; rejects draws whose segment
// would not survive min_duration. When every draw fails because a wall sits
// closer than the velocity can clear, the velocity bounces off that wall
// (mirror reflection brought slightly forward) and the draw repeats.
QuadraticTrajectory make_segment(Rng& rng, const Rect& bounds, Point2 pos, Point2 vel, double V,
                                 double A, double t_start, double duration_hint,
                                 double min_duration) {
  Point2 v = vel;
  for (int attempt = 0; attempt < 2; ++attempt) {
    for (int tries = 0; tries < kMaxDraws; ++tries) {
      const double mag = rng.uniform(0.0, A);
      const double ang = rng.uniform(0.0, 2.0 * kPi);
      const Point2 accel{mag * std::cos(ang), mag * std::sin(ang)};
      if (auto seg = try_build_segment(bounds, pos, v, accel, V, t_start, duration_hint,
                                       min_duration)) {
        return *seg;
      }
    }
    if (auto seg = try_build_segment(bounds, pos, v, {0.0, 0.0}, V, t_start, duration_hint,
                                     min_duration)) {
      return *seg;
    }
    Point2 bounced = v;
    if (v.x > 0.0 && bounds.xmax - pos.x < v.x * min_duration) bounced.x = -v.x;
    if (v.x < 0.0 && pos.x - bounds.xmin < -v.x * min_duration) bounced.x = -v.x;
    if (v.y > 0.0 && bounds.ymax - pos.y < v.y * min_duration) bounced.y = -v.y;
    if (v.y < 0.0 && pos.y - bounds.ymin < -v.y * min_duration) bounced.y = -v.y;
    if (bounced.x == v.x && bounced.y == v.y) break;
    v = bounced;
  }
  std::fprintf(stderr, "tangentnav: no admissible obstacle segment after %d draws, parking\n",
               kMaxDraws);
  return stationary_trajectory(pos, t_start, t_start + std::max(duration_hint, min_duration));
}

double reflect_into(double x, double lo, double hi) {
  if (x > hi) return 2.0 * hi - x;
  if (x < lo) return 2.0 * lo - x;
  return x;
}

}  // namespace

void EnvConfig::validate() const {
  if (!bounds.valid()) throw std::invalid_argument("EnvConfig: degenerate bounds");
  if (n < 0 || n > kMaxObstacles) throw std::invalid_argument("EnvConfig: obstacle count out of range");
  if (!(V > 0.0)) throw std::invalid_argument("EnvConfig: V must be positive");
  if (!(A > 0.0)) throw std::invalid_argument("EnvConfig: A must be positive");
  if (!(r_obstacle > 0.0)) throw std::invalid_argument("EnvConfig: r_obstacle must be positive");
  for (const auto& p : static_obstacles) {
    if (!bounds.contains(p)) throw std::invalid_argument("EnvConfig: static obstacle out of bounds");
  }
}

double map_area(Point2 initial, Point2 target) {
  return std::abs(target.x - initial.x) * std::abs(target.y - initial.y);
}

double obstacle_density(int n, double area) {
  if (!(area > 0.0)) throw ZeroArea();
  return static_cast<double>(n) / area;
}

QuadraticTrajectory stationary_trajectory(Point2 pos, double t_start, double t_end) {
  QuadraticTrajectory tr;
  tr.a0x = pos.x;
  tr.a0y = pos.y;
  tr.t_start = t_start;
  tr.t_end = t_end;
  tr.end_reason = SegmentEnd::kDuration;
  return tr;
}

QuadraticTrajectory sample_trajectory(Rng& rng, const Rect& bounds, Point2 start, double V,
                                      double A, double duration_hint, double min_duration,
                                      double t_start) {
  if (!(V > 0.0)) return stationary_trajectory(start, t_start, kInf);

  for (int tries = 0; tries < kMaxDraws; ++tries) {
    const double speed = rng.uniform(0.0, V);
    const double dir = rng.uniform(0.0, 2.0 * kPi);
    const Point2 vel{speed * std::cos(dir), speed * std::sin(dir)};
    const double mag = rng.uniform(0.0, A);
    const double ang = rng.uniform(0.0, 2.0 * kPi);
    const Point2 accel{mag * std::cos(ang), mag * std::sin(ang)};
    if (auto seg = try_build_segment(bounds, start, vel, accel, V, t_start, duration_hint,
                                     min_duration)) {
      return *seg;
    }
  }
  std::fprintf(stderr, "tangentnav: no admissible obstacle trajectory after %d draws, parking\n",
               kMaxDraws);
  return stationary_trajectory(start, t_start, t_start + std::max(duration_hint, min_duration));
}

ObstacleState step_obstacle(ObstacleState state, double t, Rng& rng, const Rect& bounds, double V,
                            double A, double duration_hint, double min_duration) {
  while (t >= state.trajectory.t_end) {
    const QuadraticTrajectory tr = state.trajectory;
    Point2 pos = tr.position(tr.t_end);
    Point2 vel = tr.velocity(tr.t_end);
    if (tr.end_reason == SegmentEnd::kBoundary) {
      if (tr.exit_x) {
        pos.x = reflect_into(pos.x, bounds.xmin, bounds.xmax);
        vel.x = -vel.x;
      }
      if (tr.exit_y) {
        pos.y = reflect_into(pos.y, bounds.ymin, bounds.ymax);
        vel.y = -vel.y;
      }
    }
    pos.x = std::clamp(pos.x, bounds.xmin, bounds.xmax);
    pos.y = std::clamp(pos.y, bounds.ymin, bounds.ymax);
    const double speed = norm(vel);
    if (speed > V) vel = (V / speed) * vel;
    state.trajectory =
        make_segment(rng, bounds, pos, vel, V, A, tr.t_end, duration_hint, min_duration);
  }
  return state;
}

Environment::Environment(const EnvConfig& cfg, std::optional<Point2> spawn_exclusion_center,
                         double spawn_exclusion_radius)
    : cfg_(cfg) {
  cfg_.validate();
  Rng spawn_rng(cfg_.seed);
  states_.reserve(static_cast<std::size_t>(cfg_.n) + cfg_.static_obstacles.size());
  streams_.reserve(static_cast<std::size_t>(cfg_.n));
  for (int i = 0; i < cfg_.n; ++i) {
    Point2 pos{};
    for (int tries = 0; tries < kMaxDraws; ++tries) {
      pos = {spawn_rng.uniform(cfg_.bounds.xmin, cfg_.bounds.xmax),
             spawn_rng.uniform(cfg_.bounds.ymin, cfg_.bounds.ymax)};
      if (!spawn_exclusion_center ||
          distance(pos, *spawn_exclusion_center) > spawn_exclusion_radius) {
        break;
      }
    }
    streams_.emplace_back(mix_seed(cfg_.seed, static_cast<std::uint64_t>(i) + 1));
    states_.push_back({i,
                       sample_trajectory(streams_.back(), cfg_.bounds, pos, cfg_.V, cfg_.A,
                                         kDurationHint, kMinSegmentDuration, 0.0),
                       cfg_.r_obstacle});
  }
  for (std::size_t j = 0; j < cfg_.static_obstacles.size(); ++j) {
    states_.push_back({cfg_.n + static_cast<int>(j),
                       stationary_trajectory(cfg_.static_obstacles[j], 0.0, kInf),
                       cfg_.r_obstacle});
  }
}

void Environment::advance_to(double t) {
  if (t < t_) throw std::logic_error("Environment: time must advance monotonically");
  for (int i = 0; i < cfg_.n; ++i) {
    states_[static_cast<std::size_t>(i)] =
        step_obstacle(std::move(states_[static_cast<std::size_t>(i)]), t, streams_[static_cast<std::size_t>(i)],
                      cfg_.bounds, cfg_.V, cfg_.A, kDurationHint, kMinSegmentDuration);
  }
  t_ = t;
}

std::vector<ObstacleSnapshot> Environment::snapshot() const {
  std::vector<ObstacleSnapshot> out;
  out.reserve(states_.size());
  for (const auto& s : states_) {
    out.push_back({s.id, s.trajectory.position(t_), s.r_obstacle});
  }
  return out;
}

}  // namespace tnav
