#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "affect/trajectory.hpp"

namespace affect {

/// Normalized Lomb power over a grid of angular frequencies.
struct Periodogram {
  std::vector<double> omegas;
  std::vector<double> powers;
  std::size_t m_independent = 0;  ///< independent frequencies for false-alarm probabilities
  std::size_t n_samples = 0;

  /// Index of the largest power. Throws InsufficientData when empty.
  std::size_t peak_index() const;
  double peak_omega() const { return omegas[peak_index()]; }
  double peak_power() const { return powers[peak_index()]; }
  /// False-alarm probability of the peak with m_independent frequencies.
  double peak_false_alarm() const;
};

/// Lomb phase tau(omega): tan(2 omega tau) = sum sin(2 omega t) / sum cos(2 omega t).
double lomb_tau(std::span<const double> times, double omega);

/// Lomb-Scargle periodogram with the phase tau(omega) in every sum:
///
///   P(w) = [ (sum y_j cos w(t_j - tau))^2 / sum cos^2 w(t_j - tau)
///          + (sum y_j sin w(t_j - tau))^2 / sum sin^2 w(t_j - tau) ] / (2 sigma^2)
///
/// with y_j mean-removed and sigma^2 the n-1 sample variance.
/// Throws InsufficientData for fewer than 3 samples, ZeroVariance for constant data.
/// m_independent defaults to 2N.
Periodogram lomb_scargle(std::span<const double> times, std::span<const double> values,
                         std::span<const double> omegas,
                         std::optional<std::size_t> m_independent = std::nullopt);
Periodogram lomb_scargle(const Trajectory& series, std::span<const double> omegas,
                         std::optional<std::size_t> m_independent = std::nullopt);

/// 1 - (1 - e^{-z})^m.
double false_alarm_probability(double z, double m);

/// omega from 2 pi / span up to pi N / span, spaced (2 pi / span) / oversample.
std::vector<double> default_frequency_grid(std::span<const double> times,
                                           double oversample = 4.0);

/// Time-indexed Lomb power on centered windows with full coverage.
struct SlidingPeriodogram {
  std::vector<double> centers;
  std::vector<double> omegas;
  std::vector<double> powers;            ///< row-major [center][omega]
  std::vector<double> peak_false_alarm;  ///< per center
  std::vector<std::size_t> window_samples;

  double power(std::size_t ci, std::size_t wi) const { return powers[ci * omegas.size() + wi]; }
};

/// Lomb-Scargle of the samples in [t - window/2, t + window/2] for every sample
/// time t whose window lies inside the record. Windows with fewer than 3
/// samples or constant values get zero power and false alarm 1.
SlidingPeriodogram sliding_lomb_scargle(const Trajectory& series, double window,
                                        std::span<const double> omegas,
                                        unsigned threads = 1);

struct OscillationPhase {
  bool present = false;
  bool candidate = false;        ///< sliding windows flagged a span
  double span_start = 0.0;
  double span_end = 0.0;
  double omega = 0.0;            ///< whole-span peak
  double period = 0.0;
  double p_value = 1.0;          ///< whole-span false-alarm probability
};

/// Flags the longest run of at least two consecutive sliding windows whose
/// peak false alarm is below `threshold`, then confirms it with a whole-span
/// periodogram over the union of those windows. The confirmation level
/// defaults to `threshold`.
OscillationPhase detect_oscillation_phase(const Trajectory& series, double window,
                                          double threshold = 0.05,
                                          std::span<const double> omegas = {},
                                          std::optional<double> confirm = std::nullopt);

}  // namespace affect
