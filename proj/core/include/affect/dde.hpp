#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "affect/model.hpp"
#include "affect/schedule.hpp"
#include "affect/trajectory.hpp"

namespace affect {

struct DdeRun {
  Trajectory trajectory;
  std::size_t clamp_count = 0;  ///< steps whose result was clamped into [0, 1]
  std::size_t steps = 0;
  double dt = 0.0;
};

/// History of p on [-t0, 0].
using ScalarHistory = std::function<double(double)>;

/// Right-hand side of the reduced delay equation.
double reduced_rhs(double p, double p_delayed, const ReducedParams& params) noexcept;

/// RK4 integration of the reduced equation by the method of steps.
///
/// Delayed values come from a Hermite-interpolated history (linear on the
/// first segment). Each step's result is clamped into [0, 1] and counted.
/// Samples are kept every `record_every` steps plus the final one, in a
/// single column "p".
///
/// Throws InvalidStep if dt <= 0 or (t0 > 0 and dt > t0/10), ValidationError
/// for bad params or history values outside [0, 1], NonFiniteState if the
/// state blows up.
DdeRun integrate_reduced(const ReducedParams& params, const ScalarHistory& history,
                         double t_end, double dt, std::size_t record_every = 1);
DdeRun integrate_reduced(const ReducedParams& params, double constant_history,
                         double t_end, double dt, std::size_t record_every = 1);

/// RK4 integration of the fluid-limit system with constant initial history.
///
///   dP/dt = -P/tau_P + g' (EB - EB_d) + lambda' q_P(EB_d + a)
///   dN/dt = -N/tau_N - g' (EB - EB_d) + m lambda' q_N(EB_d + a)
///
/// with EB_d = EB(t - t_d) and (a, t_d, m) read from the schedule at the start
/// of each step. Columns are "p", "n", "eb".
///
/// Throws InvalidStep if dt <= 0, dt > min(tau)/50, or any positive delay in
/// force is shorter than dt.
DdeRun integrate_full(const FullModelParams& params, AffectState initial, double t_end,
                      double dt, const InterventionSchedule& schedule = {},
                      std::size_t record_every = 1);

/// Mean period from upward zero crossings of the mean-removed tail
/// (the last `tail_fraction` of the samples). Empty with fewer than two crossings.
std::optional<double> estimate_period(std::span<const double> times,
                                      std::span<const double> values,
                                      double tail_fraction = 0.2);

/// Half the peak-to-peak range over samples with time in [t_from, t_to].
double amplitude_between(std::span<const double> times, std::span<const double> values,
                         double t_from, double t_to);

}  // namespace affect
