#include "affect/stochastic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "affect/errors.hpp"
#include "affect/history.hpp"

namespace affect {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) noexcept {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return splitmix64(h ^ c);
}

namespace {

void append_arrivals(std::mt19937_64& rng, double rate, double t_start, double t_end,
                     std::vector<double>& out) {
  if (rate <= 0 || t_end <= t_start) return;
  std::exponential_distribution<double> gap(rate);
  double t = t_start;
  while (true) {
    t += gap(rng);
    if (t > t_end) break;
    out.push_back(t);
  }
}

void check_window(double rate, double t_start, double t_end) {
  if (!(rate >= 0) || !std::isfinite(rate)) throw ValidationError("rate must be >= 0");
  if (!(t_end >= t_start)) throw ValidationError("t_end must be >= t_start");
}

}  // namespace

std::vector<double> sample_poisson_events(double rate, double t_start, double t_end,
                                          std::uint64_t seed) {
  check_window(rate, t_start, t_end);
  std::mt19937_64 rng(splitmix64(seed));
  std::vector<double> out;
  append_arrivals(rng, rate, t_start, t_end, out);
  return out;
}

std::vector<double> sample_scheduled_poisson_events(double base_rate,
                                                    const InterventionSchedule& schedule,
                                                    double t_start, double t_end,
                                                    std::uint64_t seed) {
  check_window(base_rate, t_start, t_end);
  std::vector<double> cuts{t_start};
  for (double b : schedule.breakpoints()) {
    if (b > t_start && b < t_end) cuts.push_back(b);
  }
  cuts.push_back(t_end);
  std::mt19937_64 rng(splitmix64(seed));
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double m = schedule.at(cuts[i], 0.0).neg_rate_multiplier;
    append_arrivals(rng, base_rate * m, cuts[i], cuts[i + 1], out);
  }
  return out;
}

JumpRun simulate_jump(const FullModelParams& params, AffectState initial, double t_end,
                      double dt, const InterventionSchedule& schedule, std::uint64_t seed,
                      const JumpOptions& options) {
  params.validate();
  if (!(dt > 0) || !std::isfinite(dt)) throw InvalidStep("dt must be positive");
  if (!(t_end > 0) || !std::isfinite(t_end)) throw ValidationError("t_end must be positive");
  if (!(options.jump_scale > 0)) throw ValidationError("jump_scale must be positive");
  if (options.record_every == 0) throw ValidationError("record_every must be >= 1");
  if (!(initial.p >= 0) || !(initial.n >= 0)) {
    throw ValidationError("initial affect must be nonnegative");
  }
  auto check_delay = [dt](double td) {
    if (td > 0 && td < dt) throw InvalidStep("dt must not exceed any positive delay");
  };
  check_delay(params.t_d);
  for (const auto& s : schedule.segments()) {
    if (s.t_d) check_delay(*s.t_d);
  }

  const double K = options.jump_scale;
  JumpRun run;
  run.events.positive_times =
      sample_poisson_events(params.lambda_prime * K, 0.0, t_end, derive_seed(seed, 1));
  run.events.negative_times = sample_scheduled_poisson_events(
      params.lambda_prime * K, schedule, 0.0, t_end, derive_seed(seed, 2));

  const double eb_init = emotional_balance(initial);
  HistoryBuffer ebs(1, schedule.max_delay(params.t_d),
                    [eb_init](double, std::span<double> out) { out[0] = eb_init; },
                    HistoryBuffer::Interpolation::kLinear);

  using State = std::array<double, 2>;
  State y{initial.p, initial.n};
  auto eb_of = [](const State& s) { return emotional_balance({s[0], s[1]}); };
  auto delayed_eb = [&](double t, double td, const State& s) {
    if (td <= 0) return eb_of(s);
    double v = 0;
    ebs.at(std::min(t - td, ebs.newest_time()), std::span<double>(&v, 1));
    return v;
  };
  auto drift = [&](double t, const State& s, double td) {
    const double cmp = params.g_prime * (eb_of(s) - delayed_eb(t, td, s));
    return State{-s[0] / params.tau_p + cmp, -s[1] / params.tau_n - cmp};
  };
  auto floor_state = [&](State& s) {
    for (double& v : s) {
      if (!std::isfinite(v)) throw NonFiniteState("jump state became non-finite");
      if (v < 0) {
        v = 0;
        ++run.floor_count;
      }
    }
  };
  auto advance = [&](double s0, double s1, double td) {
    const double h = s1 - s0;
    if (h <= 0) return;
    const State k1 = drift(s0, y, td);
    const State a{y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]};
    const State k2 = drift(s0 + 0.5 * h, a, td);
    const State b{y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]};
    const State k3 = drift(s0 + 0.5 * h, b, td);
    const State c{y[0] + h * k3[0], y[1] + h * k3[1]};
    const State k4 = drift(s1, c, td);
    for (int d = 0; d < 2; ++d) y[d] += h / 6.0 * (k1[d] + 2 * k2[d] + 2 * k3[d] + k4[d]);
    floor_state(y);
  };
  auto jump = [&](double te, bool positive) {
    const ScheduleValue sv = schedule.at(te, params.t_d);
    const double ib = delayed_eb(te, sv.t_d, y);
    if (positive) {
      y[0] += q_positive(ib + sv.a, params) / K;
    } else {
      y[1] += q_negative(ib + sv.a, params) / K;
    }
    ++run.jumps_applied;
  };

  const std::size_t n = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  run.trajectory = Trajectory({"p", "n", "eb"});
  run.trajectory.reserve(n / options.record_every + 2);
  auto emit = [&](double t) {
    const std::array<double, 3> row{y[0], y[1], eb_of(y)};
    run.trajectory.push_back(t, row);
  };
  {
    const double e0 = eb_of(y);
    ebs.push(0.0, std::span<const double>(&e0, 1));
    emit(0.0);
  }

  const auto& pos = run.events.positive_times;
  const auto& neg = run.events.negative_times;
  std::size_t ip = 0, in = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    const double t1 = i + 1 == n ? t_end : static_cast<double>(i + 1) * dt;
    const double td = schedule.at(t, params.t_d).t_d;
    double s = t;
    while (true) {
      const double tp = ip < pos.size() ? pos[ip] : INFINITY;
      const double tn = in < neg.size() ? neg[in] : INFINITY;
      const double te = std::min(tp, tn);
      if (te > t1) break;
      advance(s, te, td);
      s = te;
      if (tp == te) {
        jump(te, true);
        ++ip;
      }
      if (tn == te) {
        jump(te, false);
        ++in;
      }
    }
    advance(s, t1, td);
    const double e1 = eb_of(y);
    ebs.push(t1, std::span<const double>(&e1, 1));
    if ((i + 1) % options.record_every == 0 || i + 1 == n) emit(t1);
  }
  return run;
}

const char* to_string(Basin b) noexcept {
  switch (b) {
    case Basin::kLow: return "low";
    case Basin::kHigh: return "high";
    case Basin::kUndecided: return "undecided";
  }
  return "undecided";
}

Basin basin_classify(const Trajectory& traj, std::span<const double> eb_roots, double window) {
  if (eb_roots.size() < 3 || eb_roots.size() % 2 == 0) {
    throw ValidationError("basin classification needs an odd number (>= 3) of roots");
  }
  if (!(window > 0)) throw ValidationError("window must be positive");
  if (traj.size() < 2 || traj.times().back() - traj.times().front() < window) {
    throw InsufficientData("trajectory shorter than the classification window");
  }
  const auto& eb = traj.has_column("eb") ? traj.column("eb") : traj.values();
  const auto& ts = traj.times();
  const double from = ts.back() - window;
  double sum = 0;
  std::size_t count = 0;
  for (std::size_t i = ts.size(); i-- > 0 && ts[i] >= from;) {
    sum += eb[i];
    ++count;
  }
  const double mean = sum / double(count);
  // Separatrix bounding the basin of the highest stable root.
  const double mid = eb_roots[eb_roots.size() - 2];
  if (std::abs(mean - mid) < kUndecidedBand) return Basin::kUndecided;
  return mean > mid ? Basin::kHigh : Basin::kLow;
}

}  // namespace affect
