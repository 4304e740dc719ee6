#include "affect/bifurcation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "affect/errors.hpp"

namespace affect {

using std::numbers::pi;

const char* to_string(Region r) noexcept {
  switch (r) {
    case Region::kI: return "i";
    case Region::kII: return "ii";
    case Region::kIII: return "iii";
  }
  return "?";
}

const char* to_string(Stability s) noexcept {
  switch (s) {
    case Stability::kStable: return "stable";
    case Stability::kUnstable: return "unstable";
    case Stability::kLeftUnstableSaddle: return "left-unstable-saddle";
  }
  return "?";
}

const char* to_string(Criticality c) noexcept {
  switch (c) {
    case Criticality::kSupercritical: return "supercritical";
    case Criticality::kSubcritical: return "subcritical";
    case Criticality::kUndetermined: return "undetermined";
  }
  return "?";
}

namespace {

void require_positive(double lambda, double beta) {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw ValidationError("lambda must be > 0");
  if (!(beta > 0) || !std::isfinite(beta)) throw ValidationError("beta must be > 0");
}

bool near(double a, double b) { return std::abs(a - b) <= kBoundaryTolerance; }

}  // namespace

RegionInfo classify_region(double lambda, double beta) {
  require_positive(lambda, beta);
  RegionInfo info;
  const double quarter = lambda * lambda / 4;
  if (lambda < 2) {
    info.region = beta > lambda - 1 ? Region::kI : Region::kII;
  } else if (beta > quarter) {
    info.region = Region::kI;
  } else if (beta < lambda - 1) {
    info.region = Region::kII;
  } else {
    info.region = Region::kIII;
  }
  info.on_lambda_minus_one = near(beta, lambda - 1);
  info.on_lambda_squared_quarter = near(beta, quarter);
  info.on_lambda_two = near(lambda, 2);
  return info;
}

FixedPointSet fixed_points(double lambda, double beta) {
  FixedPointSet out;
  out.region = classify_region(lambda, beta);
  out.p0 = {0.0, Stability::kStable};
  const double disc = lambda * lambda - 4 * beta;
  if (disc < 0) return out;
  if (disc == 0) {
    const double p = 2 / lambda;
    if (p <= 1) {
      out.p_minus = FixedPoint{p, Stability::kLeftUnstableSaddle};
      out.p_plus = out.p_minus;
    }
    return out;
  }
  const double gamma = std::sqrt(disc);
  const double pp = (lambda + gamma) / (2 * beta);
  // Stable form avoids cancellation in lambda - gamma.
  const double pm = 2 / (lambda + gamma);
  if (pm <= 1) out.p_minus = FixedPoint{pm, Stability::kUnstable};
  if (pp <= 1) out.p_plus = FixedPoint{pp, Stability::kStable};
  return out;
}

std::complex<double> dispersion_residual(std::complex<double> zeta, const ReducedParams& prm) {
  const double gamma = std::sqrt(prm.lambda * prm.lambda - 4 * prm.beta);
  const double gm1 = prm.g - 1;
  return zeta - gm1 + (gm1 + gamma / prm.lambda) * std::exp(-zeta * prm.t0);
}

bool hopf_exists(double lambda, double beta, double g) noexcept {
  if (!(lambda > 2) || !(beta > lambda - 1) || !(beta < lambda * lambda / 4)) return false;
  const double gamma = std::sqrt(lambda * lambda - 4 * beta);
  return g > 1 - gamma / (2 * lambda);
}

std::optional<HopfPoint> hopf_point(double lambda, double beta, double g, int k) {
  if (k < 0) throw ValidationError("branch index k must be >= 0");
  if (!hopf_exists(lambda, beta, g)) return std::nullopt;
  const double gamma = std::sqrt(lambda * lambda - 4 * beta);
  const double omega = std::sqrt(gamma * (gamma + 2 * lambda * (g - 1)) / (lambda * lambda));
  double angle;
  if (g > 1) {
    angle = std::atan(omega / (g - 1));
  } else if (g == 1) {
    angle = pi / 2;
  } else {
    angle = pi + std::atan(omega / (g - 1));
  }
  HopfPoint hp;
  hp.omega = omega;
  hp.t0 = (angle + 2 * pi * k) / omega;
  hp.k = k;
  hp.residual =
      std::abs(dispersion_residual({0.0, omega}, ReducedParams{lambda, beta, g, hp.t0}));
  if (!(hp.t0 > 0) || !(hp.residual < 1e-10)) {
    throw Error("Hopf branch selection failed: residual " + std::to_string(hp.residual));
  }
  return hp;
}

double lyapunov_g1(double lambda, double beta, int k) {
  if (k < 0) throw ValidationError("branch index k must be >= 0");
  if (!(lambda > 2) || !(lambda * lambda - 4 * beta > 0)) {
    throw OutOfRegion("lyapunov_g1 needs lambda > 2 and 0 < gamma < lambda - 2");
  }
  const double g = std::sqrt(lambda * lambda - 4 * beta);
  if (!(g < lambda - 2)) {
    throw OutOfRegion("lyapunov_g1 needs lambda > 2 and 0 < gamma < lambda - 2");
  }
  const double P = pi * (4 * k + 1);
  const double l = lambda;
  const double num = std::pow(l - g, 3) * (2 * (7 * P - 8) * g * g * g - 30 * P * g * g * l +
                                           3 * (4 - 11 * P) * g * l * l + (4 - 11 * P) * l * l * l);
  return num / (80 * (4 + pi * pi) * g * l * l * l);
}

double lyapunov_general(double lambda, double beta, double g, int k) {
  return center_manifold_terms(lambda, beta, g, k).lyapunov;
}

std::optional<BtPoint> bt_point(double lambda, double g) {
  if (!(g > 1)) return std::nullopt;
  return BtPoint{lambda * lambda / 4, 1 / (g - 1)};
}

}  // namespace affect
