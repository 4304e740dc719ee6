#pragma once

#include <cstddef>

#include "affect/trajectory.hpp"

namespace affect {

/// Mean over the samples i-h..i+h, truncated at the record edges.
Trajectory sliding_mean(const Trajectory& series, std::size_t half_width = 3);

/// Standard deviation (n - 1) over the same windows, of the series after
/// subtracting its sliding mean. Windows of one sample give 0.
Trajectory sliding_std(const Trajectory& series, std::size_t half_width = 3);

/// Series minus its sliding mean.
Trajectory centered_series(const Trajectory& series, std::size_t half_width = 3);

/// Best two-phase split: phase 1 is the first split_index samples.
struct Segmentation {
  std::size_t split_index = 0;
  double statistic = 0.0;
  double p_value = 1.0;
  bool significant = false;
  bool degenerate = false;  ///< every candidate split was degenerate
};

/// Scans split points t in [min_phase, N - min_phase], runs Brown-Forsythe on
/// the centered series, and keeps the split with the smallest p-value.
/// Throws InsufficientData if N < 2 * min_phase or min_phase < 2.
Segmentation segment_variance(const Trajectory& series, std::size_t min_phase = 2,
                              double threshold = 0.05, std::size_t half_width = 3);

}  // namespace affect
