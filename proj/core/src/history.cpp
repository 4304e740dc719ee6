#include "affect/history.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "affect/errors.hpp"

namespace affect {

HistoryBuffer::HistoryBuffer(std::size_t dim, double span, InitialHistory initial,
                             Interpolation mode)
    : dim_(dim), span_(span), initial_(std::move(initial)), mode_(mode) {
  if (dim_ == 0) throw std::invalid_argument("history dimension must be positive");
  if (!(span_ >= 0)) throw std::invalid_argument("history span must be >= 0");
}

double HistoryBuffer::newest_time() const {
  if (size() == 0) throw InsufficientData("history is empty");
  return times_.back();
}

double HistoryBuffer::oldest_time() const {
  if (size() == 0) throw InsufficientData("history is empty");
  return times_[head_];
}

void HistoryBuffer::push(double t, std::span<const double> state,
                         std::span<const double> derivative) {
  if (state.size() != dim_) throw std::invalid_argument("state width mismatch");
  if (size() > 0 && !(t > times_.back())) {
    throw std::invalid_argument("history times must be strictly increasing");
  }
  const bool hermite = mode_ == Interpolation::kHermite;
  if (hermite && derivative.size() != dim_) {
    throw std::invalid_argument("Hermite history needs a derivative per sample");
  }
  times_.push_back(t);
  states_.insert(states_.end(), state.begin(), state.end());
  if (hermite) derivs_.insert(derivs_.end(), derivative.begin(), derivative.end());
  compact();
}

void HistoryBuffer::compact() {
  // Keep one sample older than the span so queries at exactly t - span bracket.
  const double cutoff = times_.back() - span_;
  while (head_ + 1 < times_.size() && times_[head_ + 1] <= cutoff) ++head_;
  if (head_ > 4096 && head_ * 2 > times_.size()) {
    times_.erase(times_.begin(), times_.begin() + static_cast<std::ptrdiff_t>(head_));
    states_.erase(states_.begin(),
                  states_.begin() + static_cast<std::ptrdiff_t>(head_ * dim_));
    if (!derivs_.empty()) {
      derivs_.erase(derivs_.begin(),
                    derivs_.begin() + static_cast<std::ptrdiff_t>(head_ * dim_));
    }
    head_ = 0;
  }
}

void HistoryBuffer::at(double t, std::span<double> out) const {
  assert(out.size() == dim_);
  if (size() == 0 || t < times_[0]) {
    initial_(t, out);
    return;
  }
  if (t < times_[head_]) {
    throw InsufficientData("history lookup older than the retained span");
  }
  if (t > times_.back()) {
    throw InvalidStep("history lookup ahead of the newest sample; step too large for the delay");
  }
  const auto begin = times_.begin() + static_cast<std::ptrdiff_t>(head_);
  auto it = std::upper_bound(begin, times_.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - times_.begin());
  if (hi == times_.size()) {
    std::copy_n(states_.begin() + static_cast<std::ptrdiff_t>((hi - 1) * dim_), dim_,
                out.begin());
    return;
  }
  const std::size_t lo = hi - 1;
  const double t0 = times_[lo], t1 = times_[hi];
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double* y0 = &states_[lo * dim_];
  const double* y1 = &states_[hi * dim_];

  if (mode_ == Interpolation::kLinear || lo == 0) {
    for (std::size_t d = 0; d < dim_; ++d) out[d] = y0[d] + s * (y1[d] - y0[d]);
    return;
  }
  const double* f0 = &derivs_[lo * dim_];
  const double* f1 = &derivs_[hi * dim_];
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  for (std::size_t d = 0; d < dim_; ++d) {
    out[d] = h00 * y0[d] + h10 * h * f0[d] + h01 * y1[d] + h11 * h * f1[d];
  }
}

}  // namespace affect
