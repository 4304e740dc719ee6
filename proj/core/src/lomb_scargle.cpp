#include "affect/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "affect/errors.hpp"
#include "affect/montecarlo.hpp"
#include "affect/statistics.hpp"

namespace affect {

using std::numbers::pi;

std::size_t Periodogram::peak_index() const {
  if (powers.empty()) throw InsufficientData("empty periodogram");
  return static_cast<std::size_t>(std::max_element(powers.begin(), powers.end()) -
                                  powers.begin());
}

double Periodogram::peak_false_alarm() const {
  return false_alarm_probability(peak_power(), double(m_independent));
}

double lomb_tau(std::span<const double> times, double omega) {
  double s = 0, c = 0;
  for (double t : times) {
    s += std::sin(2 * omega * t);
    c += std::cos(2 * omega * t);
  }
  return std::atan2(s, c) / (2 * omega);
}

Periodogram lomb_scargle(std::span<const double> times, std::span<const double> values,
                         std::span<const double> omegas,
                         std::optional<std::size_t> m_independent) {
  if (times.size() != values.size()) throw ValidationError("times and values differ in length");
  const std::size_t n = times.size();
  if (n < 3) throw InsufficientData("Lomb-Scargle needs at least 3 samples");
  const double var = sample_variance(values);
  const double mu = mean(values);
  if (!(var > 1e-300)) throw ZeroVariance("Lomb-Scargle of a constant series");

  // Shift times to their mean; the periodogram is translation invariant and
  // this keeps the trigonometric arguments small.
  const double t_mid = mean(times);
  std::vector<double> ts(n), ys(n);
  for (std::size_t j = 0; j < n; ++j) {
    ts[j] = times[j] - t_mid;
    ys[j] = values[j] - mu;
  }

  Periodogram out;
  out.omegas.assign(omegas.begin(), omegas.end());
  out.powers.resize(omegas.size());
  out.n_samples = n;
  out.m_independent = m_independent.value_or(2 * n);
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    const double w = omegas[i];
    if (!(w > 0)) throw ValidationError("frequencies must be positive");
    const double tau = lomb_tau(ts, w);
    double yc = 0, ys_ = 0, cc = 0, ss = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double arg = w * (ts[j] - tau);
      const double c = std::cos(arg), s = std::sin(arg);
      yc += ys[j] * c;
      ys_ += ys[j] * s;
      cc += c * c;
      ss += s * s;
    }
    double p = 0;
    if (cc > 0) p += yc * yc / cc;
    if (ss > 1e-12 * n) p += ys_ * ys_ / ss;
    out.powers[i] = p / (2 * var);
  }
  return out;
}

Periodogram lomb_scargle(const Trajectory& series, std::span<const double> omegas,
                         std::optional<std::size_t> m_independent) {
  return lomb_scargle(series.times(), series.values(), omegas, m_independent);
}

double false_alarm_probability(double z, double m) {
  if (!(z >= 0)) throw ValidationError("power must be >= 0");
  if (!(m >= 1)) throw ValidationError("number of independent frequencies must be >= 1");
  // 1 - (1 - e^{-z})^m without cancellation.
  return -std::expm1(m * std::log1p(-std::exp(-z)));
}

std::vector<double> default_frequency_grid(std::span<const double> times, double oversample) {
  if (times.size() < 2) throw InsufficientData("frequency grid needs at least 2 samples");
  if (!(oversample >= 1)) throw ValidationError("oversample must be >= 1");
  const auto [lo, hi] = std::minmax_element(times.begin(), times.end());
  const double span = *hi - *lo;
  if (!(span > 0)) throw InsufficientData("frequency grid needs a positive time span");
  const double w_min = 2 * pi / span;
  const double w_max = pi * double(times.size()) / span;
  const double step = w_min / oversample;
  std::vector<double> grid;
  for (double w = w_min; w <= w_max * (1 + 1e-12); w = w_min + step * double(grid.size())) {
    grid.push_back(w);
  }
  return grid;
}

SlidingPeriodogram sliding_lomb_scargle(const Trajectory& series, double window,
                                        std::span<const double> omegas, unsigned threads) {
  if (!(window > 0)) throw ValidationError("window must be positive");
  const auto& ts = series.times();
  const auto& vs = series.values();
  if (ts.empty() || ts.back() - ts.front() < window) {
    throw InsufficientData("series span is shorter than the sliding window");
  }
  SlidingPeriodogram out;
  out.omegas.assign(omegas.begin(), omegas.end());
  const double half = window / 2;
  for (double t : ts) {
    if (t - half >= ts.front() - 1e-12 && t + half <= ts.back() + 1e-12) {
      if (out.centers.empty() || t > out.centers.back()) out.centers.push_back(t);
    }
  }
  const std::size_t nw = omegas.size();
  out.powers.assign(out.centers.size() * nw, 0.0);
  out.peak_false_alarm.assign(out.centers.size(), 1.0);
  out.window_samples.assign(out.centers.size(), 0);
  parallel_for(out.centers.size(), threads, [&](std::size_t ci) {
    const double c = out.centers[ci];
    const auto first = std::lower_bound(ts.begin(), ts.end(), c - half - 1e-12) - ts.begin();
    const auto last = std::upper_bound(ts.begin(), ts.end(), c + half + 1e-12) - ts.begin();
    const std::size_t count = static_cast<std::size_t>(last - first);
    out.window_samples[ci] = count;
    if (count < 3) return;
    std::span<const double> wt(ts.data() + first, count), wv(vs.data() + first, count);
    try {
      const auto pg = lomb_scargle(wt, wv, omegas);
      std::copy(pg.powers.begin(), pg.powers.end(), out.powers.begin() + ci * nw);
      if (nw > 0) out.peak_false_alarm[ci] = pg.peak_false_alarm();
    } catch (const ZeroVariance&) {
    }
  });
  return out;
}

OscillationPhase detect_oscillation_phase(const Trajectory& series, double window,
                                          double threshold, std::span<const double> omegas,
                                          std::optional<double> confirm) {
  if (!(threshold > 0 && threshold < 1)) throw ValidationError("threshold must be in (0, 1)");
  const double level = confirm.value_or(threshold);
  if (!(level > 0 && level < 1)) throw ValidationError("confirm level must be in (0, 1)");
  std::vector<double> grid;
  if (omegas.empty()) {
    grid = default_frequency_grid(series.times());
    omegas = grid;
  }
  const auto sl = sliding_lomb_scargle(series, window, omegas);

  OscillationPhase out;
  std::size_t best_first = 0, best_len = 0;
  for (std::size_t i = 0; i < sl.centers.size();) {
    if (sl.peak_false_alarm[i] >= threshold) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < sl.centers.size() && sl.peak_false_alarm[j] < threshold) ++j;
    if (j - i > best_len) {
      best_first = i;
      best_len = j - i;
    }
    i = j;
  }
  if (best_len < 2) return out;

  out.candidate = true;
  const auto& ts = series.times();
  out.span_start = std::max(ts.front(), sl.centers[best_first] - window / 2);
  out.span_end = std::min(ts.back(), sl.centers[best_first + best_len - 1] + window / 2);
  const auto first = std::lower_bound(ts.begin(), ts.end(), out.span_start - 1e-12) - ts.begin();
  const auto last = std::upper_bound(ts.begin(), ts.end(), out.span_end + 1e-12) - ts.begin();
  const auto span = series.slice(static_cast<std::size_t>(first), static_cast<std::size_t>(last));
  const auto pg = lomb_scargle(span, omegas);
  out.omega = pg.peak_omega();
  out.period = 2 * pi / out.omega;
  out.p_value = pg.peak_false_alarm();
  out.present = out.p_value < level;
  return out;
}

}  // namespace affect
