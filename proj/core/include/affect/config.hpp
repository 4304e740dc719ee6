#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "affect/model.hpp"
#include "affect/schedule.hpp"

namespace affect {

/// Run description for the simulate command (one JSON document).
///
///   {"mode": "jump" | "full" | "reduced",
///    "params": {...}, "initial": {"p":..,"n":..} or {"eb":..} or {"p":..},
///    "t_end": .., "dt": .., "record_every": .., "jump_scale": .., "seed": ..,
///    "schedule": [{"t_start":..,"t_end":..,"a":..,"t_d":..,"neg_rate_multiplier":..}]
///    or "scenario": {"therapy_start":.., ..., "horizon":..}}
///
/// With "initial": {"eb": x} the total affect is the delay-free fluid
/// equilibrium total at x. Without "t_end", a scenario's horizon is used.
struct SimulateConfig {
  enum class Mode { kJump, kFull, kReduced };
  Mode mode = Mode::kJump;
  FullModelParams full;
  ReducedParams reduced;
  AffectState initial;
  double initial_p = 0.0;  ///< constant history for the reduced equation
  double t_end = 0.0;
  std::optional<double> dt;
  std::size_t record_every = 1;
  double jump_scale = 1.0;
  std::optional<std::uint64_t> seed;
  InterventionSchedule schedule;
};

const char* to_string(SimulateConfig::Mode m) noexcept;

/// Step used when the config leaves dt out: min(tau)/50 for the full and jump
/// models, t0/20 (or 0.01 without delay) for the reduced one.
double default_dt(const SimulateConfig& cfg);

/// Stress-grid experiment for the montecarlo command.
///
///   {"params": {...}, "betas": [..], "js": [..], "runs_per_cell": 50,
///    "stress_duration": 14, "scenario": {...}, "dt": 0.1, "seed": ..}
struct MonteCarloConfig {
  FullModelParams base;
  std::vector<double> betas;
  std::vector<double> js;
  std::size_t runs_per_cell = 50;
  double stress_duration = 14.0;
  StressScenario scenario;
  double dt = 0.1;
  std::optional<std::uint64_t> seed;
};

/// Parse and validate. JSON syntax errors raise ParseError with the line;
/// bad or unknown fields raise ValidationError naming the field and its line.
SimulateConfig parse_simulate_config(const std::string& text);
MonteCarloConfig parse_montecarlo_config(const std::string& text);

}  // namespace affect
