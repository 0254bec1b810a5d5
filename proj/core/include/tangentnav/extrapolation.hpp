#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace tnav {

struct EmptySeries : std::runtime_error {
  EmptySeries() : std::runtime_error("sample series is empty") {}
};

struct Sample {
  double t = 0.0;
  double value = 0.0;
};

/// Up to four timestamped samples with strictly increasing timestamps; the
/// window matches the observation history kept per obstacle.
class SampleSeries {
 public:
  static constexpr std::size_t kMaxSamples = 4;

  SampleSeries() = default;
  explicit SampleSeries(std::vector<Sample> samples);

  const std::vector<Sample>& samples() const { return samples_; }
  bool empty() const { return samples_.empty(); }
  std::size_t size() const { return samples_.size(); }
  const Sample& back() const { return samples_.back(); }

 private:
  std::vector<Sample> samples_;
};

/// Value at t_query of the unique interpolating polynomial through all
/// samples (cubic for four samples, lower degree for fewer). Intended for
/// t_query at or past the last sample. Throws EmptySeries.
double extrapolate(const SampleSeries& series, double t_query);

/// Earliest time in (t_last, t_last + horizon] where the extrapolated value
/// drops to or below threshold: grid scan at scan_step, then bisection to
/// 1e-6 s. Returns t_last immediately when the last sample is already at or
/// below threshold; nullopt when no scanned point crosses.
std::optional<double> first_crossing_time(const SampleSeries& series, double threshold,
                                          double horizon, double scan_step);

}  // namespace tnav
