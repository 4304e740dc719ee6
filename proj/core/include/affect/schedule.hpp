#pragma once

#include <optional>
#include <vector>

namespace affect {

/// One intervention interval [t_start, t_end).
struct ScheduleSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  double a = 0.0;                    ///< therapy shift inside the response arguments
  std::optional<double> t_d;         ///< delay override; absent keeps the baseline
  double neg_rate_multiplier = 1.0;  ///< scales the negative-event rate (stress)
};

/// Values in force at a given time.
struct ScheduleValue {
  double a = 0.0;
  double t_d = 0.0;
  double neg_rate_multiplier = 1.0;
};

/// Piecewise-constant therapy/stress schedule with hard switches.
///
/// Time not covered by any segment uses a = 0, the baseline delay, and
/// multiplier 1.
class InterventionSchedule {
 public:
  InterventionSchedule() = default;
  /// Throws ValidationError unless segments are sorted, non-overlapping, and
  /// carry valid values.
  explicit InterventionSchedule(std::vector<ScheduleSegment> segments);

  ScheduleValue at(double t, double baseline_t_d) const;
  /// Largest delay that can be in force at any time.
  double max_delay(double baseline_t_d) const;
  /// Segment boundaries, sorted and deduplicated.
  std::vector<double> breakpoints() const;

  const std::vector<ScheduleSegment>& segments() const noexcept { return segments_; }
  bool empty() const noexcept { return segments_.empty(); }

 private:
  std::vector<ScheduleSegment> segments_;
};

/// Timings of the therapy-then-stress scenario, in days.
struct StressScenario {
  double therapy_start = 182.0;   // month 6
  double therapy_end = 365.0;     // month 12
  double therapy_shift = 0.2;
  double t_d_after_therapy = 21.0;
  double stress_start = 1825.0;   // year 5
  double stress_duration = 21.0;
  double stress_multiplier = 3.0;
  double horizon = 3650.0;        // 10 years
  double final_window = 182.0;    // 26 weeks

  /// Therapy shift, then the post-therapy delay, then a stress burst.
  InterventionSchedule schedule() const;
};

}  // namespace affect
