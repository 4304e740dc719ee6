#pragma once

#include <span>

namespace affect {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

double mean(std::span<const double> x);
/// Sample variance with denominator n - 1.
double sample_variance(std::span<const double> x);
double median(std::span<const double> x);

/// Brown-Forsythe test for equal variances: one-way ANOVA on absolute
/// deviations from each group's median, F with (1, n1 + n2 - 2) df.
/// Throws InsufficientData for groups smaller than 2 and DegenerateGroup when
/// the deviations have no within-group spread and no between-group difference.
/// No within-group spread with a between-group difference gives F = inf, p = 0.
TestResult brown_forsythe(std::span<const double> group1, std::span<const double> group2);

/// Variance-ratio F-test: F = larger variance / smaller, two-sided p.
/// Throws ZeroVariance if either group has zero variance.
TestResult f_test_variance(std::span<const double> group1, std::span<const double> group2);

/// Upper tail P(F > x) of the F distribution.
double f_distribution_upper_tail(double x, double df1, double df2);

}  // namespace affect
