#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "affect/model.hpp"
#include "affect/schedule.hpp"
#include "affect/trajectory.hpp"

namespace affect {

/// Realized arrivals of the positive and negative life-event processes.
struct EventStream {
  std::vector<double> positive_times;
  std::vector<double> negative_times;

  friend bool operator==(const EventStream&, const EventStream&) = default;
};

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Deterministic seed for one run of a seeded experiment.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0) noexcept;

/// Homogeneous Poisson arrivals on [t_start, t_end] by exponential gaps.
std::vector<double> sample_poisson_events(double rate, double t_start, double t_end,
                                          std::uint64_t seed);

/// Poisson arrivals whose rate is base_rate times the schedule's negative-rate
/// multiplier. Sampled exactly per constant-rate piece.
std::vector<double> sample_scheduled_poisson_events(double base_rate,
                                                    const InterventionSchedule& schedule,
                                                    double t_start, double t_end,
                                                    std::uint64_t seed);

struct JumpOptions {
  /// Small-jump scaling K: event rates are multiplied by K and jump sizes divided by K.
  double jump_scale = 1.0;
  std::size_t record_every = 1;
};

struct JumpRun {
  Trajectory trajectory;  ///< columns "p", "n", "eb"
  EventStream events;
  std::size_t jumps_applied = 0;
  std::size_t floor_count = 0;  ///< times a variable was floored at 0
};

/// Simulates the Poisson-driven jump system.
///
/// Between events the drift dP = -P/tau_P + g' (EB - EB_d) (mirrored for N)
/// is integrated by RK4, split at event times. A positive event adds
/// q_P(IB + a) / K to P, a negative one adds q_N(IB + a) / K to N, where
/// IB = EB(t - t_d) is read by linear interpolation of the stored path
/// (constant initial history). The negative rate follows the schedule's
/// multiplier.
JumpRun simulate_jump(const FullModelParams& params, AffectState initial, double t_end,
                      double dt, const InterventionSchedule& schedule, std::uint64_t seed,
                      const JumpOptions& options = {});

enum class Basin { kLow, kHigh, kUndecided };

const char* to_string(Basin b) noexcept;

inline constexpr double kUndecidedBand = 0.02;

/// Classifies the mean EB over the last `window` time units against the
/// unstable root just below the highest one (the middle root when there are
/// three). Within kUndecidedBand of it the result is undecided. Uses the "eb"
/// column when present, else column 0.
/// Throws InsufficientData if the record is shorter than the window and
/// ValidationError unless an odd number (>= 3) of roots is given.
Basin basin_classify(const Trajectory& traj, std::span<const double> eb_roots, double window);

}  // namespace affect
