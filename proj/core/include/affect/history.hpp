#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace affect {

/// Past states of a delayed system, sampled on the integrator's step grid.
///
/// Lookups before the first stored time fall back to the initial-history
/// function. With derivatives available, interior segments use cubic Hermite
/// interpolation and the first segment is linear; without derivatives every
/// segment is linear. Samples older than `span` before the newest one are
/// discarded.
class HistoryBuffer {
 public:
  enum class Interpolation { kHermite, kLinear };

  /// `initial` maps a time t < first stored time to the state at t.
  using InitialHistory = std::function<void(double t, std::span<double> out)>;

  HistoryBuffer(std::size_t dim, double span, InitialHistory initial,
                Interpolation mode = Interpolation::kHermite);

  /// Appends a sample. Times must be strictly increasing. `derivative` may be
  /// empty in linear mode.
  void push(double t, std::span<const double> state,
            std::span<const double> derivative = {});

  /// Interpolated state at time t into `out`. t must not exceed the newest time.
  void at(double t, std::span<double> out) const;

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return times_.size() - head_; }
  double span() const noexcept { return span_; }
  double newest_time() const;
  double oldest_time() const;

 private:
  void compact();

  std::size_t dim_;
  double span_;
  InitialHistory initial_;
  Interpolation mode_;
  std::size_t head_ = 0;  // index of the oldest retained sample
  std::vector<double> times_;
  std::vector<double> states_;
  std::vector<double> derivs_;
};

}  // namespace affect
