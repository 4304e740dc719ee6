#pragma once

#include <vector>

namespace affect {

/// Threshold on P + N below which the emotional balance is reported as degenerate.
inline constexpr double kTotalAffectEpsilon = 1e-12;

/// Named emotional-balance set-points of the balanced-states-of-mind framework.
namespace set_points {
inline constexpr double kPathological = 0.50;
inline constexpr double kCoping = 0.62;
inline constexpr double kNormal = 0.72;
inline constexpr double kOptimal = 0.81;
inline constexpr double kSuperOptimal = 0.88;
}  // namespace set_points

/// Parameters of the full two-variable affect system.
///
/// Time-like quantities (tau_p, tau_n, t_d, 1/lambda_prime, 1/g_prime) share
/// one model time unit chosen by the caller.
struct FullModelParams {
  double alpha = 10.0;         ///< sigmoid scale
  double beta = 2.7;           ///< sigmoid slope
  double c = 0.2;              ///< response amplitude at zero balance
  double lambda_prime = 4.0;   ///< event rate, per time unit
  double tau_p = 10.0;         ///< positive-affect decay time
  double tau_n = 10.0;         ///< negative-affect decay time
  double g_prime = 13.0;       ///< self-comparison gain, per time unit
  double t_d = 0.0;            ///< internal-representation delay
  double therapy_shift_a = 0.0;

  /// Throws ValidationError naming the first offending field.
  void validate() const;
};

/// Parameters of the dimensionless scalar delay equation
/// dp/dt = (g-1) p + lambda p_d^2 / (1 + beta p_d^2) - g p_d.
struct ReducedParams {
  double lambda = 4.0;
  double beta = 3.75;
  double g = 1.0;
  double t0 = 0.0;

  void validate() const;
};

struct AffectState {
  double p = 0.0;
  double n = 0.0;
};

/// q_P(x) = alpha x^2 / (1 + beta x^2) + c.
double q_positive(double x, const FullModelParams& params) noexcept;

/// Mirror of q_positive: q_N(x) = q_P(1 - x).
double q_negative(double x, const FullModelParams& params) noexcept;

/// EB = p / (p + n). Throws DegenerateState when p + n <= kTotalAffectEpsilon.
double emotional_balance(AffectState state);

/// Right-hand side of the equilibrium implicit equation
/// EB = q_P tau_P / (q_P tau_P + q_N tau_N).
double equilibrium_map(double eb, const FullModelParams& params) noexcept;

/// All roots of EB = equilibrium_map(EB) in [0, 1], ascending.
///
/// Found by sign-change bracketing on a 10^4-interval uniform grid followed by
/// bisection. Grid nodes that are exact roots are reported directly.
std::vector<double> equilibrium_eb_values(const FullModelParams& params);

/// Total affect P + N of the delay-free fluid equilibrium at balance eb.
double equilibrium_total_affect(double eb, const FullModelParams& params) noexcept;

/// Maps the full system onto the scalar delay equation:
/// lambda = lambda' alpha tau / T, g = g' tau / T, t0 = t_d / tau.
/// Requires tau_p == tau_n == tau; throws ReductionAssumptionViolated otherwise.
ReducedParams reduce_params(const FullModelParams& full, double total_affect,
                            double tau);

}  // namespace affect
