#include "affect/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "affect/errors.hpp"

namespace affect {

InterventionSchedule::InterventionSchedule(std::vector<ScheduleSegment> segments)
    : segments_(std::move(segments)) {
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    const std::string where = "schedule segment " + std::to_string(i) + ": ";
    if (!std::isfinite(s.t_start) || !std::isfinite(s.t_end) || !(s.t_end > s.t_start)) {
      throw ValidationError(where + "t_end must exceed t_start");
    }
    if (!(s.a >= 0) || !std::isfinite(s.a)) throw ValidationError(where + "a must be >= 0");
    if (s.t_d && (!(*s.t_d >= 0) || !std::isfinite(*s.t_d))) {
      throw ValidationError(where + "t_d must be >= 0");
    }
    if (!(s.neg_rate_multiplier >= 0) || !std::isfinite(s.neg_rate_multiplier)) {
      throw ValidationError(where + "neg_rate_multiplier must be >= 0");
    }
    if (i > 0 && s.t_start < segments_[i - 1].t_end) {
      throw ValidationError(where + "segments must be sorted and non-overlapping");
    }
  }
}

ScheduleValue InterventionSchedule::at(double t, double baseline_t_d) const {
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double x, const ScheduleSegment& s) { return x < s.t_start; });
  if (it != segments_.begin()) {
    const auto& s = *std::prev(it);
    if (t < s.t_end) return {s.a, s.t_d.value_or(baseline_t_d), s.neg_rate_multiplier};
  }
  return {0.0, baseline_t_d, 1.0};
}

double InterventionSchedule::max_delay(double baseline_t_d) const {
  double m = baseline_t_d;
  for (const auto& s : segments_) m = std::max(m, s.t_d.value_or(baseline_t_d));
  return m;
}

std::vector<double> InterventionSchedule::breakpoints() const {
  std::vector<double> out;
  for (const auto& s : segments_) {
    out.push_back(s.t_start);
    out.push_back(s.t_end);
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

InterventionSchedule StressScenario::schedule() const {
  const double stress_end = stress_start + stress_duration;
  if (!(therapy_start < therapy_end && therapy_end <= stress_start && stress_end <= horizon)) {
    throw ValidationError("scenario times must satisfy therapy < stress <= horizon");
  }
  std::vector<ScheduleSegment> segs;
  segs.push_back({therapy_start, therapy_end, therapy_shift, std::nullopt, 1.0});
  if (stress_start > therapy_end) {
    segs.push_back({therapy_end, stress_start, 0.0, t_d_after_therapy, 1.0});
  }
  segs.push_back({stress_start, stress_end, 0.0, t_d_after_therapy, stress_multiplier});
  if (horizon > stress_end) segs.push_back({stress_end, horizon, 0.0, t_d_after_therapy, 1.0});
  return InterventionSchedule(std::move(segs));
}

}  // namespace affect
