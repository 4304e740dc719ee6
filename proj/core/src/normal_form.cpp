// Center-manifold reduction of the reduced delay equation at a Hopf point.
//
// Around p_+ the equation reads x' = A0 x(t) + A1 x(t-t0) + B2 x_d^2 + B3 x_d^3.
// The quadratic center-manifold coefficients h(theta) = (h11, h12, h22) solve
// h' = M h + m(theta) b on [-t0, 0], whose solution is a particular part at
// frequency omega plus homogeneous modes {1, cos 2 omega theta, sin 2 omega theta},
// fixed by the boundary condition at theta = 0.

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "affect/bifurcation.hpp"
#include "affect/errors.hpp"

namespace affect {
namespace {

using Eigen::Matrix3d;
using Eigen::Vector3d;

Matrix3d homogeneous_basis(double omega, double theta) {
  const double c2 = std::cos(2 * omega * theta);
  const double s2 = std::sin(2 * omega * theta);
  Matrix3d m;
  m << 0.5, c2 / 2, -s2 / 2,
       0.0, s2, c2,
       0.5, -c2 / 2, s2 / 2;
  return m;
}

// Closed-form coefficient in terms of omega, t0, A1, B2, B3 and h(-t0).
double closed_form_lyapunov(double w, double t, double A1, double B2, double B3, double h11,
                            double h12, double h22) {
  using std::cos;
  using std::sin;
  const double tw = t * w, t2w2 = tw * tw;
  const double D = A1 * (2 * t2w2 + cos(2 * tw) - 1) + 4 * t * w * w * cos(tw) - 4 * w * sin(tw);
  const double E =
      4 * tw * (A1 * B2 * h22 * (8 * t2w2 - 5) + 6 * A1 * B3 * t2w2 - 3 * A1 * B3 - 4 * B2 * B2) +
      2 * sin(2 * tw) * (2 * A1 * B2 * h22 * (1 - 2 * t2w2) - 6 * A1 * B3 * t2w2 + 3 * A1 * B3 +
                         4 * B2 * B2) +
      4 * tw * cos(2 * tw) * (2 * A1 * B2 * h22 * (3 - 2 * t2w2) + 3 * A1 * B3 + 4 * B2 * B2) -
      sin(4 * tw) * (2 * A1 * B2 * h22 + 3 * A1 * B3 + 4 * B2 * B2) +
      4 * B2 * h11 * (2 * tw * (cos(2 * tw) + 2) - 3 * sin(2 * tw)) * D -
      8 * B2 * h12 * sin(tw) * (2 * tw * cos(tw) - sin(tw)) * D -
      4 * A1 * B2 * tw * h22 * cos(4 * tw) -
      4 * w * cos(3 * tw) * (2 * h22 * (2 * B2 * t2w2 + B2) + 3 * B3) +
      4 * w * cos(tw) * (2 * h22 * (6 * B2 * t2w2 + B2) + 3 * (4 * B3 * t2w2 + B3)) -
      4 * t * w * w * sin(tw) * (22 * B2 * h22 + 15 * B3) +
      4 * t * w * w * sin(3 * tw) * (2 * B2 * h22 - 3 * B3);
  return w / (8 * D * D) * E;
}

}  // namespace

NormalFormTerms center_manifold_terms(double lambda, double beta, double g, int k) {
  const auto hp = hopf_point(lambda, beta, g, k);
  if (!hp) throw OutOfRegion("no Hopf point for these parameters");

  NormalFormTerms nf;
  const double gamma = std::sqrt(lambda * lambda - 4 * beta);
  const double w = hp->omega, t0 = hp->t0;
  nf.omega = w;
  nf.t0 = t0;
  nf.a0 = g - 1;
  nf.a1 = -(g - 1) - gamma / lambda;
  const double gl = gamma + lambda;
  nf.b2 = 4 * beta * beta * (8 * beta - 3 * lambda * gl) / (lambda * lambda * gl * gl * gl);
  nf.b3 = 2 * beta * (lambda * lambda * (gamma - lambda) - 2 * beta * (gamma - 2 * lambda)) /
          (lambda * lambda * lambda);

  const double C = std::cos(w * t0), S = std::sin(w * t0);
  const double tw = t0 * w;
  const double A1 = nf.a1;
  const double shape = A1 * (2 * tw * tw + std::cos(2 * tw) - 1);
  nf.psi1 = 1 / (shape / (4 * w * (tw * C - S)) + 1);
  nf.psi2 = -4 * t0 * w * w * S / (4 * t0 * C * w * w - 4 * S * w + shape);
  if (!std::isfinite(nf.psi1) || !std::isfinite(nf.psi2)) {
    throw LinearSolveFailure("adjoint normalization is singular");
  }

  Matrix3d M;
  M << 0, -w, 0,
       2 * w, 0, -2 * w,
       0, w, 0;
  const Vector3d b = nf.b2 * Vector3d(C * C, -2 * C * S, S * S);

  // Particular solution P cos(w theta) + Q sin(w theta).
  Eigen::Matrix<double, 6, 6> big = Eigen::Matrix<double, 6, 6>::Zero();
  Eigen::Matrix<double, 6, 1> rhs;
  big.topLeftCorner<3, 3>() = M;
  big.topRightCorner<3, 3>() = -w * Matrix3d::Identity();
  big.bottomLeftCorner<3, 3>() = w * Matrix3d::Identity();
  big.bottomRightCorner<3, 3>() = M;
  rhs << -nf.psi1 * b, -nf.psi2 * b;
  Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu6(big);
  if (!lu6.isInvertible()) throw LinearSolveFailure("particular h-system is singular");
  const Eigen::Matrix<double, 6, 1> pq = lu6.solve(rhs);
  const Vector3d P = pq.head<3>(), Q = pq.tail<3>();
  auto particular = [&](double th) -> Vector3d {
    return P * std::cos(w * th) + Q * std::sin(w * th);
  };

  // Boundary condition M h(0) = A0 h(0) + A1 h(-t0) + (1 - psi1) b.
  const Matrix3d shifted = M - nf.a0 * Matrix3d::Identity();
  const Matrix3d lhs = shifted * homogeneous_basis(w, 0) - A1 * homogeneous_basis(w, -t0);
  const Vector3d r = -shifted * particular(0) + A1 * particular(-t0) + (1 - nf.psi1) * b;
  Eigen::FullPivLU<Matrix3d> lu3(lhs);
  if (!lu3.isInvertible()) throw LinearSolveFailure("center-manifold boundary system is singular");
  const Vector3d h = homogeneous_basis(w, -t0) * lu3.solve(r) + particular(-t0);
  nf.h11 = h[0];
  nf.h12 = h[1];
  nf.h22 = h[2];

  // Normal-form route: quadratic and cubic coefficients on the center plane.
  const double B2 = nf.b2, B3 = nf.b3;
  const double q20 = B2 * C * C, q11 = -2 * B2 * C * S, q02 = B2 * S * S;
  const double c30 = 2 * B2 * C * nf.h11 + B3 * C * C * C;
  const double c21 = 2 * B2 * (C * nf.h12 - S * nf.h11) - 3 * B3 * C * C * S;
  const double c12 = 2 * B2 * (C * nf.h22 - S * nf.h12) + 3 * B3 * C * S * S;
  const double c03 = -2 * B2 * S * nf.h22 - B3 * S * S * S;
  const double p1 = nf.psi1, p2 = nf.psi2;
  nf.lyapunov_from_normal_form =
      (3 * p1 * c30 + p1 * c12 + p2 * c21 + 3 * p2 * c03) / 8 -
      (p1 * q11 * (p1 * q20 + p1 * q02) - p2 * q11 * (p2 * q20 + p2 * q02) -
       2 * p1 * q20 * p2 * q20 + 2 * p1 * q02 * p2 * q02) /
          (8 * w);

  nf.lyapunov = closed_form_lyapunov(w, t0, A1, B2, B3, nf.h11, nf.h12, nf.h22);
  return nf;
}

}  // namespace affect
