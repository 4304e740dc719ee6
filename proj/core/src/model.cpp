#include "affect/model.hpp"

#include <cmath>
#include <string>

#include "affect/errors.hpp"

namespace affect {

namespace {

void require(bool ok, const char* field, const char* rule) {
  if (!ok) {
    throw ValidationError(std::string(field) + " must satisfy " + rule);
  }
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void FullModelParams::validate() const {
  require(finite(alpha) && alpha > 0, "alpha", "alpha > 0");
  require(finite(beta) && beta > 0, "beta", "beta > 0");
  require(finite(c) && c >= 0, "c", "c >= 0");
  require(finite(lambda_prime) && lambda_prime >= 0, "lambda_prime",
          "lambda_prime >= 0");
  require(finite(tau_p) && tau_p > 0, "tau_p", "tau_p > 0");
  require(finite(tau_n) && tau_n > 0, "tau_n", "tau_n > 0");
  require(finite(g_prime), "g_prime", "a finite value");
  require(finite(t_d) && t_d >= 0, "t_d", "t_d >= 0");
  require(finite(therapy_shift_a) && therapy_shift_a >= 0, "therapy_shift_a",
          "therapy_shift_a >= 0");
}

void ReducedParams::validate() const {
  require(finite(lambda) && lambda > 0, "lambda", "lambda > 0");
  require(finite(beta) && beta > 0, "beta", "beta > 0");
  require(finite(g), "g", "a finite value");
  require(finite(t0) && t0 >= 0, "t0", "t0 >= 0");
}

double q_positive(double x, const FullModelParams& params) noexcept {
  const double x2 = x * x;
  return params.alpha * x2 / (1.0 + params.beta * x2) + params.c;
}

double q_negative(double x, const FullModelParams& params) noexcept {
  return q_positive(1.0 - x, params);
}

double emotional_balance(AffectState state) {
  const double total = state.p + state.n;
  if (!(total > kTotalAffectEpsilon)) {
    throw DegenerateState("total affect p + n = " + std::to_string(total) +
                          " is below the degeneracy threshold");
  }
  return state.p / total;
}

double equilibrium_map(double eb, const FullModelParams& params) noexcept {
  const double pos = q_positive(eb, params) * params.tau_p;
  const double neg = q_negative(eb, params) * params.tau_n;
  return pos / (pos + neg);
}

double equilibrium_total_affect(double eb, const FullModelParams& params) noexcept {
  return params.lambda_prime * (params.tau_p * q_positive(eb, params) +
                                params.tau_n * q_negative(eb, params));
}

std::vector<double> equilibrium_eb_values(const FullModelParams& params) {
  params.validate();
  constexpr int kIntervals = 10000;
  constexpr double kTolerance = 1e-10;

  auto residual = [&](double x) { return equilibrium_map(x, params) - x; };

  std::vector<double> roots;
  double x_prev = 0.0;
  double r_prev = residual(x_prev);
  if (r_prev == 0.0) roots.push_back(x_prev);

  for (int i = 1; i <= kIntervals; ++i) {
    const double x = static_cast<double>(i) / kIntervals;
    const double r = residual(x);
    if (r == 0.0) {
      roots.push_back(x);
    } else if (r_prev != 0.0 && std::signbit(r) != std::signbit(r_prev)) {
      double lo = x_prev, hi = x;
      double r_lo = r_prev;
      // Bisect to the tolerance, then a few more halvings for round-off headroom.
      while (hi - lo > kTolerance * 1e-3) {
        const double mid = 0.5 * (lo + hi);
        const double r_mid = residual(mid);
        if (r_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(r_mid) == std::signbit(r_lo)) {
          lo = mid;
          r_lo = r_mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x_prev = x;
    r_prev = r;
  }
  return roots;
}

ReducedParams reduce_params(const FullModelParams& full, double total_affect,
                            double tau) {
  full.validate();
  if (!(total_affect > 0) || !std::isfinite(total_affect)) {
    throw ValidationError("total_affect must be > 0");
  }
  if (!(tau > 0) || !std::isfinite(tau)) {
    throw ValidationError("tau must be > 0");
  }
  if (full.tau_p != full.tau_n) {
    throw ReductionAssumptionViolated(
        "reduction requires tau_p == tau_n (got " + std::to_string(full.tau_p) +
        " and " + std::to_string(full.tau_n) + ")");
  }
  if (full.tau_p != tau) {
    throw ReductionAssumptionViolated("tau must equal tau_p == tau_n");
  }
  ReducedParams out;
  out.lambda = full.lambda_prime * full.alpha * tau / total_affect;
  out.beta = full.beta;
  out.g = full.g_prime * tau / total_affect;
  out.t0 = full.t_d / tau;
  return out;
}

}  // namespace affect
