#pragma once

#include <complex>
#include <optional>

#include "affect/model.hpp"

namespace affect {

enum class Region { kI, kII, kIII };
enum class Stability { kStable, kUnstable, kLeftUnstableSaddle };
enum class Criticality { kSupercritical, kSubcritical, kUndetermined };

const char* to_string(Region r) noexcept;
const char* to_string(Stability s) noexcept;
const char* to_string(Criticality c) noexcept;

inline constexpr double kBoundaryTolerance = 1e-12;

struct RegionInfo {
  Region region = Region::kI;
  bool on_lambda_minus_one = false;    ///< beta == lambda - 1 (p_+ = 1 or p_- = 1)
  bool on_lambda_squared_quarter = false;  ///< beta == lambda^2 / 4 (roots merge)
  bool on_lambda_two = false;          ///< lambda == 2
};

struct FixedPoint {
  double p = 0.0;
  Stability stability = Stability::kStable;
};

/// Equilibria of the delay-free reduced equation in [0, 1].
struct FixedPointSet {
  FixedPoint p0;
  std::optional<FixedPoint> p_minus;
  std::optional<FixedPoint> p_plus;
  RegionInfo region;
};

/// Case analysis of the (lambda, beta) plane:
///   (i)   lambda < 2, beta > lambda - 1   or  lambda >= 2, beta > lambda^2/4
///   (ii)  lambda < 2, beta <= lambda - 1  or  lambda >= 2, beta < lambda - 1
///   (iii) lambda >= 2, lambda - 1 <= beta <= lambda^2/4
/// Equalities are decided exactly; the flags mark points within
/// kBoundaryTolerance of a boundary. Throws ValidationError unless both are positive.
RegionInfo classify_region(double lambda, double beta);

/// p_(+/-) = (lambda +/- sqrt(lambda^2 - 4 beta)) / (2 beta), kept when in [0, 1].
FixedPointSet fixed_points(double lambda, double beta);

/// zeta - (g-1) + [(g-1) + gamma/lambda] e^{-zeta t0}, gamma = sqrt(lambda^2 - 4 beta).
std::complex<double> dispersion_residual(std::complex<double> zeta, const ReducedParams& params);

struct HopfPoint {
  double omega = 0.0;
  double t0 = 0.0;
  int k = 0;
  std::optional<double> lyapunov;
  Criticality criticality = Criticality::kUndetermined;
  double residual = 0.0;  ///< |dispersion_residual(i omega)|
};

/// Existence conditions: lambda > 2, lambda - 1 < beta < lambda^2/4 and
/// g > 1 - gamma/(2 lambda).
bool hopf_exists(double lambda, double beta, double g) noexcept;

/// Hopf point on branch k >= 0, or empty when the existence conditions fail.
/// The arctangent branch is chosen so that t0 > 0 and the residual vanishes;
/// throws Error if the residual check (1e-10) fails.
std::optional<HopfPoint> hopf_point(double lambda, double beta, double g, int k = 0);

/// Closed-form first Lyapunov coefficient at g = 1 (evaluated as printed for
/// every k). Throws OutOfRegion unless lambda > 2 and 0 < gamma < lambda - 2.
double lyapunov_g1(double lambda, double beta, int k = 0);

/// Intermediate quantities of the center-manifold reduction at a Hopf point.
struct NormalFormTerms {
  double omega = 0, t0 = 0;
  double a0 = 0, a1 = 0;     ///< linear part: A0 x(t) + A1 x(t - t0)
  double b2 = 0, b3 = 0;     ///< Taylor coefficients of the nonlinearity at p_+
  double psi1 = 0, psi2 = 0; ///< adjoint eigenvector at 0
  double h11 = 0, h12 = 0, h22 = 0;  ///< center-manifold quadratic terms at -t0
  double lyapunov = 0;           ///< closed-form expression in these terms
  double lyapunov_from_normal_form = 0;  ///< same coefficient from the cubic normal form
};

/// Center-manifold reduction for general g. Throws OutOfRegion when no Hopf
/// point exists and LinearSolveFailure if the h-system is singular.
NormalFormTerms center_manifold_terms(double lambda, double beta, double g, int k = 0);

/// First Lyapunov coefficient for general g (NormalFormTerms::lyapunov).
double lyapunov_general(double lambda, double beta, double g, int k = 0);

struct BtPoint {
  double beta = 0.0;
  double t0 = 0.0;
};

/// (lambda^2/4, 1/(g-1)) for g > 1, empty otherwise.
std::optional<BtPoint> bt_point(double lambda, double g);

}  // namespace affect
