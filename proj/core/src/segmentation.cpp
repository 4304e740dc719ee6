#include "affect/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "affect/errors.hpp"
#include "affect/statistics.hpp"

namespace affect {
namespace {

Trajectory with_values(const Trajectory& series, std::vector<double> values) {
  return Trajectory::scalar(series.times(), std::move(values), series.names().empty()
                                                                   ? "value"
                                                                   : series.names()[0]);
}

std::pair<std::size_t, std::size_t> window(std::size_t i, std::size_t n, std::size_t h) {
  return {i >= h ? i - h : 0, std::min(n - 1, i + h) + 1};
}

}  // namespace

Trajectory sliding_mean(const Trajectory& series, std::size_t half_width) {
  const auto& v = series.values();
  const std::size_t n = v.size();
  if (n == 0) throw InsufficientData("sliding mean of an empty series");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [a, b] = window(i, n, half_width);
    double s = 0;
    for (std::size_t k = a; k < b; ++k) s += v[k];
    out[i] = s / double(b - a);
  }
  return with_values(series, std::move(out));
}

Trajectory centered_series(const Trajectory& series, std::size_t half_width) {
  const auto m = sliding_mean(series, half_width);
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = series.values()[i] - m.values()[i];
  return with_values(series, std::move(out));
}

Trajectory sliding_std(const Trajectory& series, std::size_t half_width) {
  if (series.size() < 2) throw InsufficientData("sliding std needs at least 2 samples");
  const auto c = centered_series(series, half_width);
  const auto& v = c.values();
  const std::size_t n = v.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [a, b] = window(i, n, half_width);
    if (b - a >= 2) {
      out[i] = std::sqrt(sample_variance(std::span<const double>(v.data() + a, b - a)));
    }
  }
  return with_values(series, std::move(out));
}

Segmentation segment_variance(const Trajectory& series, std::size_t min_phase, double threshold,
                              std::size_t half_width) {
  const std::size_t n = series.size();
  if (min_phase < 2) throw ValidationError("min_phase must be >= 2");
  if (n < 2 * min_phase) throw InsufficientData("series too short for two phases");
  const auto c = centered_series(series, half_width);
  const std::span<const double> v = c.values();

  Segmentation best;
  best.degenerate = true;
  for (std::size_t t = min_phase; t + min_phase <= n; ++t) {
    TestResult r;
    try {
      r = brown_forsythe(v.first(t), v.subspan(t));
    } catch (const DegenerateGroup&) {
      continue;
    }
    if (best.degenerate || r.p_value < best.p_value) {
      best.split_index = t;
      best.statistic = r.statistic;
      best.p_value = r.p_value;
      best.degenerate = false;
    }
  }
  if (best.degenerate) {
    best.split_index = min_phase;
    best.p_value = 1.0;
  }
  best.significant = !best.degenerate && best.p_value < threshold;
  return best;
}

}  // namespace affect
