#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <affect/bifurcation.hpp>
#include <affect/errors.hpp>

#include "support.hpp"

using namespace affect;
using std::numbers::pi;

namespace {

// Nonzero equilibria of the delay-free reduced field, -p + lambda p^2/(1+beta p^2),
// located on (0, 1] after dividing out the root at zero.
std::vector<double> brute_force_roots(double lambda, double beta) {
  return testing::grid_roots(
      [&](double p) { return -1 + lambda * p / (1 + beta * p * p); }, 1e-12, 1.0, 10000);
}

}  // namespace

TEST_SUITE("bifurcation") {
  TEST_CASE("fixed points at named parameters") {
    auto merged = fixed_points(4, 4);
    REQUIRE(merged.p_plus);
    REQUIRE(merged.p_minus);
    CHECK(merged.p_plus->p == doctest::Approx(0.5));
    CHECK(merged.p_plus->stability == Stability::kLeftUnstableSaddle);
    CHECK(merged.region.on_lambda_squared_quarter);

    auto edge = fixed_points(4, 3);
    REQUIRE(edge.p_plus);
    CHECK(edge.p_plus->p == doctest::Approx(1.0));
    CHECK(edge.p_minus->p == doctest::Approx(1.0 / 3));
    CHECK(edge.region.on_lambda_minus_one);

    auto none = fixed_points(4, 4.5);
    CHECK_FALSE(none.p_plus);
    CHECK_FALSE(none.p_minus);
    CHECK(none.region.region == Region::kI);

    auto two = fixed_points(1.5, 0.4);
    CHECK_FALSE(two.p_plus);
    REQUIRE(two.p_minus);
    CHECK(two.p_minus->p == doctest::Approx((1.5 - std::sqrt(0.65)) / 0.8).epsilon(1e-12));
    CHECK(two.region.region == Region::kII);
    CHECK(two.p0.stability == Stability::kStable);
  }

  TEST_CASE("region classification at named parameters") {
    CHECK(classify_region(4, 3.5).region == Region::kIII);
    CHECK(classify_region(4, 2).region == Region::kII);
    CHECK(classify_region(1.5, 1).region == Region::kI);
    CHECK(classify_region(2, 1).on_lambda_two);
    CHECK_THROWS_AS(classify_region(0, 1), ValidationError);
    CHECK_THROWS_AS(classify_region(1, -1), ValidationError);
  }

  TEST_CASE("fixed points agree with brute-force roots on random parameters") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> L(1e-6, 20), B(1e-6, 100);
    for (int i = 0; i < 1000; ++i) {
      const double lambda = L(rng), beta = B(rng);
      const auto fp = fixed_points(lambda, beta);
      const auto roots = brute_force_roots(lambda, beta);
      std::vector<double> got;
      if (fp.p_minus) got.push_back(fp.p_minus->p);
      if (fp.p_plus) got.push_back(fp.p_plus->p);
      REQUIRE(got.size() == roots.size());
      for (std::size_t r = 0; r < got.size(); ++r) CHECK(std::abs(got[r] - roots[r]) < 1e-9);
      const Region expect = roots.empty() ? Region::kI : roots.size() == 1 ? Region::kII : Region::kIII;
      CHECK(fp.region.region == expect);
      for (double g : {0.0, 1.0, 2.5}) {
        for (double p : got) {
          CHECK(std::abs((g - 1) * p + lambda * p * p / (1 + beta * p * p) - g * p) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("beta sweep at lambda = 4 crosses the boundaries at 3 and 4") {
    Region prev = classify_region(4, 0.01).region;
    std::vector<std::pair<double, Region>> changes;
    for (int i = 2; i <= 600; ++i) {
      const double beta = 0.01 * i;
      const Region r = classify_region(4, beta).region;
      if (r != prev) changes.emplace_back(beta, r);
      prev = r;
    }
    REQUIRE(changes.size() == 2);
    CHECK(changes[0].first == doctest::Approx(3.0).epsilon(0.011 / 3));
    CHECK(changes[0].second == Region::kIII);
    CHECK(changes[1].first == doctest::Approx(4.0).epsilon(0.011 / 4));
    CHECK(changes[1].second == Region::kI);
  }

  TEST_CASE("Hopf closed forms") {
    auto h = hopf_point(4, 3.75, 1);
    REQUIRE(h);
    CHECK(std::abs(h->omega - 0.25) < 1e-12);
    CHECK(std::abs(h->t0 - 2 * pi) < 1e-12);
    auto h2 = hopf_point(4, 3.75, 2);
    REQUIRE(h2);
    CHECK(h2->omega == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(h2->t0 == doctest::Approx(std::atan(0.75) / 0.75).epsilon(1e-14));
    CHECK_FALSE(hopf_point(4, 3, 1));
    CHECK_FALSE(hopf_exists(4, 3, 1));
    CHECK_FALSE(hopf_point(1.5, 0.4, 1));
  }

  TEST_CASE("Hopf points zero the dispersion relation") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> L(2.01, 20), U(0, 1), G(0, 10);
    int tested = 0;
    while (tested < 1000) {
      const double lambda = L(rng);
      const double beta = (lambda - 1) + U(rng) * (lambda * lambda / 4 - (lambda - 1));
      const double g = G(rng);
      if (!hopf_exists(lambda, beta, g)) continue;
      ++tested;
      for (int k = 0; k < 3; ++k) {
        const auto h = hopf_point(lambda, beta, g, k);
        REQUIRE(h);
        CHECK(h->omega > 0);
        CHECK(h->t0 > 0);
        CHECK(std::abs(dispersion_residual({0, h->omega}, {lambda, beta, g, h->t0})) < 1e-10);
        if (k > 0) CHECK(h->t0 > hopf_point(lambda, beta, g, k - 1)->t0);
      }
    }
  }

  TEST_CASE("dispersion residual special values") {
    const double lambda = 4, beta = 3.75, gamma = 1;
    for (double g : {0.7, 1.0, 3.0}) {
      const ReducedParams prm{lambda, beta, g, 0};
      const double zeta = -gamma / lambda;
      CHECK(std::abs(dispersion_residual(zeta, prm)) < 1e-15);
      CHECK(dispersion_residual(0.0, {lambda, beta, g, 2.0}).real() ==
            doctest::Approx(gamma / lambda));
    }
  }

  TEST_CASE("Lyapunov coefficient at g = 1 matches the factorized form") {
    // Roots of the cubic factor in x = gamma / lambda.
    const double P = pi;
    auto cubic = [&](double x) {
      return 2 * (7 * P - 8) * x * x * x - 30 * P * x * x + 3 * (4 - 11 * P) * x + (4 - 11 * P);
    };
    const auto real_roots = testing::grid_roots(cubic, -20, 20, 200000);
    REQUIRE(real_roots.size() == 1);
    const double a1 = real_roots[0];
    // Remaining quadratic x^2 - 2 a2 x + (a2^2 + a3^2) by synthetic division.
    const double lead = 2 * (7 * P - 8);
    const double c2 = -30 * P / lead + a1;
    const double c1 = 3 * (4 - 11 * P) / lead + a1 * c2;
    const double a2 = -c2 / 2;
    const double a3 = std::sqrt(c1 - a2 * a2);
    CHECK(a1 == doctest::Approx(4.2).epsilon(0.02));
    CHECK(a2 == doctest::Approx(-0.42).epsilon(0.03));
    CHECK(a3 == doctest::Approx(0.29).epsilon(0.05));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> L(2.01, 30), U(0.001, 0.999);
    for (int i = 0; i < 500; ++i) {
      const double lambda = L(rng);
      const double gamma = U(rng) * (lambda - 2);
      const double beta = (lambda * lambda - gamma * gamma) / 4;
      const double a0 = (7 * P - 8) / (40 * (4 + P * P) * gamma * std::pow(lambda, 3));
      const double factored = a0 * std::pow(lambda - gamma, 3) * (gamma - a1 * lambda) *
                              (gamma * gamma - 2 * a2 * gamma * lambda +
                               (a2 * a2 + a3 * a3) * lambda * lambda);
      const double v = lyapunov_g1(lambda, beta);
      CHECK(v == doctest::Approx(factored).epsilon(1e-9));
      CHECK(v < 0);
    }
  }

  TEST_CASE("lyapunov_g1 reference values and domain") {
    CHECK(lyapunov_g1(4, 3.75) == doctest::Approx(-1.43396382493).epsilon(1e-10));
    CHECK(lyapunov_g1(4, 3.75, 1) < 0);
    CHECK(lyapunov_g1(4, 3.75, 1) != doctest::Approx(lyapunov_g1(4, 3.75, 0)));
    CHECK_THROWS_AS(lyapunov_g1(4, 3), OutOfRegion);
    CHECK_THROWS_AS(lyapunov_g1(1.5, 0.5), OutOfRegion);
    CHECK_THROWS_AS(lyapunov_g1(4, 4.5), OutOfRegion);
  }

  TEST_CASE("Bogdanov-Takens points") {
    auto a = bt_point(4, 2);
    REQUIRE(a);
    CHECK(a->beta == 4.0);
    CHECK(a->t0 == 1.0);
    auto b = bt_point(6, 1.5);
    REQUIRE(b);
    CHECK(b->beta == 9.0);
    CHECK(b->t0 == 2.0);
    CHECK_FALSE(bt_point(4, 1));
    CHECK_FALSE(bt_point(4, 0.5));
  }

  TEST_CASE("to_string names") {
    CHECK(std::string(to_string(Region::kIII)) == "iii");
    CHECK(std::string(to_string(Stability::kLeftUnstableSaddle)) == "left-unstable-saddle");
    CHECK(std::string(to_string(Criticality::kSupercritical)) == "supercritical");
  }
}
