#include "affect/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <boost/math/distributions/fisher_f.hpp>

#include "affect/errors.hpp"

namespace affect {

double mean(std::span<const double> x) {
  if (x.empty()) throw InsufficientData("mean of an empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) / double(x.size());
}

double sample_variance(std::span<const double> x) {
  if (x.size() < 2) throw InsufficientData("variance needs at least 2 samples");
  const double m = mean(x);
  double ss = 0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / double(x.size() - 1);
}

double median(std::span<const double> x) {
  if (x.empty()) throw InsufficientData("median of an empty sample");
  std::vector<double> s(x.begin(), x.end());
  const std::size_t mid = s.size() / 2;
  std::nth_element(s.begin(), s.begin() + mid, s.end());
  if (s.size() % 2) return s[mid];
  const double hi = s[mid];
  const double lo = *std::max_element(s.begin(), s.begin() + mid);
  return 0.5 * (lo + hi);
}

double f_distribution_upper_tail(double x, double df1, double df2) {
  if (x <= 0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::cdf(boost::math::complement(boost::math::fisher_f(df1, df2), x));
}

TestResult brown_forsythe(std::span<const double> group1, std::span<const double> group2) {
  if (group1.size() < 2 || group2.size() < 2) {
    throw InsufficientData("Brown-Forsythe needs at least 2 samples per group");
  }
  auto deviations = [](std::span<const double> g) {
    const double m = median(g);
    std::vector<double> z(g.size());
    std::transform(g.begin(), g.end(), z.begin(), [m](double v) { return std::abs(v - m); });
    return z;
  };
  const auto z1 = deviations(group1);
  const auto z2 = deviations(group2);
  const double n1 = double(z1.size()), n2 = double(z2.size()), n = n1 + n2;
  const double m1 = mean(z1), m2 = mean(z2);
  const double grand = (n1 * m1 + n2 * m2) / n;
  const double between = n1 * (m1 - grand) * (m1 - grand) + n2 * (m2 - grand) * (m2 - grand);
  double within = 0;
  for (double v : z1) within += (v - m1) * (v - m1);
  for (double v : z2) within += (v - m2) * (v - m2);

  // Relative scale so round-off in constant groups counts as zero spread.
  const double scale = std::max({std::abs(m1), std::abs(m2), 1e-300});
  const bool no_within = within <= 1e-24 * scale * scale * n;
  const bool no_between = between <= 1e-24 * scale * scale * n;
  if (no_within && no_between) throw DegenerateGroup("Brown-Forsythe statistic is undefined");
  if (no_within) return {std::numeric_limits<double>::infinity(), 0.0};
  const double F = between / (within / (n - 2));
  return {F, f_distribution_upper_tail(F, 1, n - 2)};
}

TestResult f_test_variance(std::span<const double> group1, std::span<const double> group2) {
  const double v1 = sample_variance(group1);
  const double v2 = sample_variance(group2);
  if (!(v1 > 0) || !(v2 > 0)) throw ZeroVariance("F-test needs nonzero variances");
  const bool first_larger = v1 >= v2;
  const double F = first_larger ? v1 / v2 : v2 / v1;
  const double df_num = double((first_larger ? group1 : group2).size() - 1);
  const double df_den = double((first_larger ? group2 : group1).size() - 1);
  const double p = std::min(1.0, 2 * f_distribution_upper_tail(F, df_num, df_den));
  return {F, p};
}

}  // namespace affect
