#include "tangentnav/extrapolation.hpp"

#include <array>
#include <cmath>

namespace tnav {

SampleSeries::SampleSeries(std::vector<Sample> samples) : samples_(std::move(samples)) {
  if (samples_.size() > kMaxSamples) {
    throw std::invalid_argument("SampleSeries: more than four samples");
  }
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    if (!(samples_[i].t > samples_[i - 1].t)) {
      throw std::invalid_argument("SampleSeries: timestamps must strictly increase");
    }
  }
}

double extrapolate(const SampleSeries& series, double t_query) {
  const auto& s = series.samples();
  if (s.empty()) throw EmptySeries();

  // Newton divided differences, evaluated with Horner's scheme.
  const std::size_t n = s.size();
  std::array<double, SampleSeries::kMaxSamples> coef{};
  std::array<double, SampleSeries::kMaxSamples> ts{};
  for (std::size_t i = 0; i < n; ++i) {
    coef[i] = s[i].value;
    ts[i] = s[i].t;
  }
  for (std::size_t order = 1; order < n; ++order) {
    for (std::size_t i = n - 1; i >= order; --i) {
      coef[i] = (coef[i] - coef[i - 1]) / (ts[i] - ts[i - order]);
    }
  }
  double result = coef[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    result = result * (t_query - ts[i]) + coef[i];
  }
  return result;
}

std::optional<double> first_crossing_time(const SampleSeries& series, double threshold,
                                          double horizon, double scan_step) {
  if (series.empty()) throw EmptySeries();
  if (!(horizon > 0.0)) throw std::invalid_argument("first_crossing_time: horizon must be positive");
  if (!(scan_step > 0.0)) throw std::invalid_argument("first_crossing_time: scan_step must be positive");

  const double t_last = series.back().t;
  if (series.back().value <= threshold) return t_last;

  constexpr double kTimeTol = 1e-6;
  double lo = t_last;
  const long steps = static_cast<long>(std::ceil(horizon / scan_step));
  for (long k = 1; k <= steps; ++k) {
    const double hi = std::min(t_last + static_cast<double>(k) * scan_step, t_last + horizon);
    if (extrapolate(series, hi) <= threshold) {
      double a = lo;
      double b = hi;
      while (b - a > kTimeTol) {
        const double mid = 0.5 * (a + b);
        if (extrapolate(series, mid) <= threshold) {
          b = mid;
        } else {
          a = mid;
        }
      }
      return b;
    }
    lo = hi;
  }
  return std::nullopt;
}

}  // namespace tnav
