#include "affect/dde.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "affect/errors.hpp"
#include "affect/history.hpp"

namespace affect {
namespace {

std::size_t step_count(double t_end, double dt) {
  if (!(t_end > 0) || !std::isfinite(t_end)) throw ValidationError("t_end must be positive");
  return static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
}

double step_time(std::size_t i, std::size_t n, double dt, double t_end) {
  return i == n ? t_end : static_cast<double>(i) * dt;
}

bool record_row(std::size_t i, std::size_t n, std::size_t every) {
  return i % every == 0 || i == n;
}

}  // namespace

double reduced_rhs(double p, double pd, const ReducedParams& prm) noexcept {
  const double pd2 = pd * pd;
  return (prm.g - 1.0) * p + prm.lambda * pd2 / (1.0 + prm.beta * pd2) - prm.g * pd;
}

DdeRun integrate_reduced(const ReducedParams& params, const ScalarHistory& history,
                         double t_end, double dt, std::size_t record_every) {
  params.validate();
  if (!(dt > 0) || !std::isfinite(dt)) throw InvalidStep("dt must be positive");
  if (params.t0 > 0 && dt > params.t0 / 10) throw InvalidStep("dt must not exceed t0/10");
  if (record_every == 0) throw ValidationError("record_every must be >= 1");
  const std::size_t n = step_count(t_end, dt);

  const double t0 = params.t0;
  auto initial = [&](double t, std::span<double> out) {
    const double v = history(t);
    if (!(v >= 0 && v <= 1)) throw ValidationError("initial history must lie in [0, 1]");
    out[0] = v;
  };
  HistoryBuffer buf(1, t0, initial);
  std::array<double, 1> tmp{};
  auto delayed = [&](double t, double stage_p) {
    if (t0 == 0) return stage_p;
    buf.at(t - t0, tmp);
    return tmp[0];
  };

  DdeRun run;
  run.dt = dt;
  run.trajectory = Trajectory({"p"});
  run.trajectory.reserve(n / record_every + 2);

  double p = history(0.0);
  if (!(p >= 0 && p <= 1)) throw ValidationError("initial history must lie in [0, 1]");
  double f = reduced_rhs(p, delayed(0.0, p), params);
  buf.push(0.0, std::span<const double>(&p, 1), std::span<const double>(&f, 1));
  run.trajectory.push_back(0.0, std::span<const double>(&p, 1));

  for (std::size_t i = 0; i < n; ++i) {
    const double t = step_time(i, n, dt, t_end);
    const double t1 = step_time(i + 1, n, dt, t_end);
    const double h = t1 - t;
    const double k1 = f;
    const double pa = p + 0.5 * h * k1;
    const double k2 = reduced_rhs(pa, delayed(t + 0.5 * h, pa), params);
    const double pb = p + 0.5 * h * k2;
    const double k3 = reduced_rhs(pb, delayed(t + 0.5 * h, pb), params);
    const double pc = p + h * k3;
    const double k4 = reduced_rhs(pc, delayed(t1, pc), params);
    double next = p + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    if (!std::isfinite(next)) {
      throw NonFiniteState("reduced state became non-finite at t=" + std::to_string(t1));
    }
    if (next < 0 || next > 1) {
      next = std::clamp(next, 0.0, 1.0);
      ++run.clamp_count;
    }
    p = next;
    f = reduced_rhs(p, delayed(t1, p), params);
    buf.push(t1, std::span<const double>(&p, 1), std::span<const double>(&f, 1));
    if (record_row(i + 1, n, record_every)) {
      run.trajectory.push_back(t1, std::span<const double>(&p, 1));
    }
  }
  run.steps = n;
  return run;
}

DdeRun integrate_reduced(const ReducedParams& params, double constant_history, double t_end,
                         double dt, std::size_t record_every) {
  return integrate_reduced(
      params, [constant_history](double) { return constant_history; }, t_end, dt,
      record_every);
}

DdeRun integrate_full(const FullModelParams& params, AffectState initial, double t_end,
                      double dt, const InterventionSchedule& schedule,
                      std::size_t record_every) {
  params.validate();
  if (!(dt > 0) || !std::isfinite(dt)) throw InvalidStep("dt must be positive");
  if (dt > std::min(params.tau_p, params.tau_n) / 50 * (1 + 1e-12)) {
    throw InvalidStep("dt must not exceed min(tau_p, tau_n)/50");
  }
  auto check_delay = [dt](double td) {
    if (td > 0 && td < dt) throw InvalidStep("dt must not exceed any positive delay");
  };
  check_delay(params.t_d);
  for (const auto& s : schedule.segments()) {
    if (s.t_d) check_delay(*s.t_d);
  }
  if (!(initial.p >= 0) || !(initial.n >= 0)) {
    throw ValidationError("initial affect must be nonnegative");
  }
  if (record_every == 0) throw ValidationError("record_every must be >= 1");
  const std::size_t n = step_count(t_end, dt);

  const AffectState init = initial;
  HistoryBuffer buf(2, schedule.max_delay(params.t_d),
                    [init](double, std::span<double> out) {
                      out[0] = init.p;
                      out[1] = init.n;
                    });

  using State = std::array<double, 2>;
  auto rhs = [&](double t, const State& y, const ScheduleValue& sv) {
    double pd = y[0], nd = y[1];
    if (sv.t_d > 0) {
      std::array<double, 2> d{};
      buf.at(t - sv.t_d, d);
      pd = d[0];
      nd = d[1];
    }
    const double eb = emotional_balance({y[0], y[1]});
    const double ebd = emotional_balance({pd, nd});
    const double cmp = params.g_prime * (eb - ebd);
    return State{
        -y[0] / params.tau_p + cmp + params.lambda_prime * q_positive(ebd + sv.a, params),
        -y[1] / params.tau_n - cmp +
            sv.neg_rate_multiplier * params.lambda_prime * q_negative(ebd + sv.a, params)};
  };
  auto axpy = [](const State& y, double h, const State& k) {
    return State{y[0] + h * k[0], y[1] + h * k[1]};
  };

  DdeRun run;
  run.dt = dt;
  run.trajectory = Trajectory({"p", "n", "eb"});
  run.trajectory.reserve(n / record_every + 2);

  State y{initial.p, initial.n};
  auto emit = [&](double t) {
    const std::array<double, 3> row{y[0], y[1], emotional_balance({y[0], y[1]})};
    run.trajectory.push_back(t, row);
  };
  State f = rhs(0.0, y, schedule.at(0.0, params.t_d));
  buf.push(0.0, y, f);
  emit(0.0);

  for (std::size_t i = 0; i < n; ++i) {
    const double t = step_time(i, n, dt, t_end);
    const double t1 = step_time(i + 1, n, dt, t_end);
    const double h = t1 - t;
    const ScheduleValue sv = schedule.at(t, params.t_d);
    const State k1 = i == 0 ? f : rhs(t, y, sv);
    const State k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1), sv);
    const State k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2), sv);
    const State k4 = rhs(t1, axpy(y, h, k3), sv);
    for (int d = 0; d < 2; ++d) {
      y[d] += h / 6.0 * (k1[d] + 2 * k2[d] + 2 * k3[d] + k4[d]);
      if (!std::isfinite(y[d])) {
        throw NonFiniteState("fluid state became non-finite at t=" + std::to_string(t1));
      }
    }
    // Derivative for the Hermite history is taken with the next step's schedule.
    f = rhs(t1, y, schedule.at(t1, params.t_d));
    buf.push(t1, y, f);
    if (record_row(i + 1, n, record_every)) emit(t1);
  }
  run.steps = n;
  return run;
}

std::optional<double> estimate_period(std::span<const double> times,
                                      std::span<const double> values, double tail_fraction) {
  const std::size_t n = std::min(times.size(), values.size());
  if (n < 4) return std::nullopt;
  const std::size_t first = n - std::max<std::size_t>(
                                    4, static_cast<std::size_t>(tail_fraction * double(n)));
  double mean = 0;
  for (std::size_t i = first; i < n; ++i) mean += values[i];
  mean /= double(n - first);

  std::vector<double> crossings;
  for (std::size_t i = first + 1; i < n; ++i) {
    const double a = values[i - 1] - mean, b = values[i] - mean;
    if (a < 0 && b >= 0) {
      crossings.push_back(times[i - 1] + (times[i] - times[i - 1]) * (-a) / (b - a));
    }
  }
  if (crossings.size() < 2) return std::nullopt;
  return (crossings.back() - crossings.front()) / double(crossings.size() - 1);
}

double amplitude_between(std::span<const double> times, std::span<const double> values,
                         double t_from, double t_to) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < times.size() && i < values.size(); ++i) {
    if (times[i] < t_from || times[i] > t_to) continue;
    lo = std::min(lo, values[i]);
    hi = std::max(hi, values[i]);
  }
  if (hi < lo) throw InsufficientData("no samples in the requested interval");
  return 0.5 * (hi - lo);
}

}  // namespace affect
