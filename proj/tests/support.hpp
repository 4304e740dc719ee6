#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace testing {

/// Roots of f on [a, b]: sign changes on a uniform grid refined by bisection,
/// plus grid nodes where f is exactly zero.
inline std::vector<double> grid_roots(const std::function<double(double)>& f, double a, double b,
                                      int intervals = 10000, double tol = 1e-13) {
  std::vector<double> roots;
  double x0 = a, f0 = f(a);
  if (f0 == 0) roots.push_back(a);
  for (int i = 1; i <= intervals; ++i) {
    const double x1 = a + (b - a) * i / intervals;
    const double f1 = f(x1);
    if (f1 == 0) {
      roots.push_back(x1);
    } else if (f0 != 0 && (f0 < 0) != (f1 < 0)) {
      double lo = x0, hi = x1, flo = f0;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

inline std::vector<double> gaussian_noise(std::mt19937_64& rng, std::size_t n, double sigma) {
  std::normal_distribution<double> d(0.0, sigma);
  std::vector<double> out(n);
  for (auto& v : out) v = d(rng);
  return out;
}

/// Pearson correlation.
inline double correlation(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(x.size());
  my /= double(y.size());
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace testing
