#include <doctest.h>

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include <affect/bifurcation.hpp>
#include <affect/dde.hpp>
#include <affect/errors.hpp>
#include <affect/schedule.hpp>

using namespace affect;

namespace {

double final_value(const ReducedParams& prm, const ScalarHistory& hist, double t_end,
                   double dt) {
  return integrate_reduced(prm, hist, t_end, dt).trajectory.values().back();
}

}  // namespace

TEST_SUITE("dde") {
  TEST_CASE("zero history stays at zero") {
    ReducedParams prm{4, 3.75, 1, 2};
    const auto run = integrate_reduced(prm, 0.0, 40, 0.1);
    for (double v : run.trajectory.values()) CHECK(v == 0.0);
    CHECK(run.clamp_count == 0);
  }

  TEST_CASE("fixed points are preserved") {
    for (double t0 : {0.0, 0.5, 3.0, 7.0}) {
      ReducedParams prm{4, 3.75, 1, t0};
      const auto fp = fixed_points(4, 3.75);
      REQUIRE(fp.p_plus);
      const double dt = t0 > 0 ? t0 / 10 : 0.05;
      const auto run = integrate_reduced(prm, fp.p_plus->p, 1000 * dt, dt);
      for (double v : run.trajectory.values()) REQUIRE(std::abs(v - fp.p_plus->p) < 1e-8);
    }
  }

  TEST_CASE("delay-off run matches an adaptive reference") {
    for (double g : {0.3, 1.0, 2.5}) {
      ReducedParams prm{4, 3.75, g, 0};
      auto rhs = [&](const std::vector<double>& x, std::vector<double>& dx, double) {
        dx[0] = -x[0] + prm.lambda * x[0] * x[0] / (1 + prm.beta * x[0] * x[0]);
      };
      for (double p0 : {0.1, 0.45, 0.9}) {
        std::vector<double> x{p0};
        namespace ode = boost::numeric::odeint;
        ode::integrate_adaptive(
            ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<std::vector<double>>()),
            rhs, x, 0.0, 10.0, 1e-3);
        const auto run = integrate_reduced(prm, p0, 10.0, 0.005);
        CHECK(std::abs(run.trajectory.values().back() - x[0]) < 1e-8);
      }
    }
  }

  TEST_CASE("step halving shows fourth-order convergence on a smooth start") {
    // The first history segment is interpolated linearly, which costs one
    // order unless p'' vanishes at t = 0+. With g = 1, p''(0+) = F'(p_d) p_d',
    // so a history flat at -t0 gives a smooth start.
    ReducedParams prm{4, 3.75, 1, 1.5};
    auto hist = [&](double t) { return 0.62 + 0.05 * std::cos(0.3 * (t + prm.t0)); };
    const double t_end = 12.0;
    const double a = final_value(prm, hist, t_end, 0.05);
    const double b = final_value(prm, hist, t_end, 0.025);
    const double c = final_value(prm, hist, t_end, 0.0125);
    const double order = std::log2(std::abs(a - b) / std::abs(b - c));
    MESSAGE("observed order " << order);
    CHECK(order >= 3.5);
  }

  TEST_CASE("generic histories still converge at third order or better") {
    ReducedParams prm{4, 3.75, 1, 1.5};
    auto hist = [](double t) { return 0.62 + 0.05 * std::cos(0.3 * t); };
    const double a = final_value(prm, hist, 12.0, 0.05);
    const double b = final_value(prm, hist, 12.0, 0.025);
    const double c = final_value(prm, hist, 12.0, 0.0125);
    CHECK(std::log2(std::abs(a - b) / std::abs(b - c)) >= 2.9);
  }

  TEST_CASE("subcritical delay decays to p_plus") {
    const double t0c = 2 * std::numbers::pi;
    ReducedParams prm{4, 3.75, 1, 0.9 * t0c};
    const auto run = integrate_reduced(prm, 2.0 / 3.0 + 0.05, 50 * 4 * t0c, prm.t0 / 20);
    CHECK(std::abs(run.trajectory.values().back() - 2.0 / 3.0) < 1e-4);
  }

  TEST_CASE("supercritical delay oscillates at the Hopf frequency") {
    const double t0c = 2 * std::numbers::pi;
    for (double factor : {1.05, 1.1}) {
      ReducedParams prm{4, 3.75, 1, factor * t0c};
      const auto run = integrate_reduced(prm, 2.0 / 3.0 + 0.05, 4000, prm.t0 / 20);
      const auto& tr = run.trajectory;
      const auto period = estimate_period(tr.times(), tr.values());
      REQUIRE(period);
      CHECK(amplitude_between(tr.times(), tr.values(), 3000, 4000) > 0.01);
      // omega t0 stays close to pi/2 along the branch, so the period grows with t0.
      CHECK(*period == doctest::Approx(8 * std::numbers::pi * factor).epsilon(0.05));
    }
  }

  TEST_CASE("reduced step validation") {
    ReducedParams prm{4, 3.75, 1, 1.0};
    CHECK_THROWS_AS(integrate_reduced(prm, 0.5, 10, 0.0), InvalidStep);
    CHECK_THROWS_AS(integrate_reduced(prm, 0.5, 10, -0.1), InvalidStep);
    CHECK_THROWS_AS(integrate_reduced(prm, 0.5, 10, 0.2), InvalidStep);
    CHECK_NOTHROW(integrate_reduced(prm, 0.5, 10, 0.1));
    CHECK_THROWS_AS(integrate_reduced(prm, 1.5, 10, 0.1), ValidationError);
  }

  TEST_CASE("clamping is counted") {
    ReducedParams prm{20, 0.5, 3, 2.0};
    const auto run = integrate_reduced(prm, 0.95, 60, 0.1);
    for (double v : run.trajectory.values()) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(run.clamp_count > 0);
  }

  TEST_CASE("record_every thins the output but keeps the end point") {
    ReducedParams prm{4, 3.75, 1, 1.0};
    const auto full = integrate_reduced(prm, 0.5, 10.05, 0.1);
    const auto thin = integrate_reduced(prm, 0.5, 10.05, 0.1, 10);
    CHECK(full.trajectory.size() == 102);
    CHECK(thin.trajectory.times().back() == doctest::Approx(10.05));
    CHECK(thin.trajectory.values().back() == full.trajectory.values().back());
    CHECK(thin.trajectory.values()[3] == full.trajectory.values()[30]);
  }

  TEST_CASE("full system: pure decay") {
    FullModelParams p;
    p.lambda_prime = 0;
    p.g_prime = 0;
    const auto run = integrate_full(p, {1.0, 1.0}, 10.0, 0.01);
    CHECK(run.trajectory.column("p").back() ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
    CHECK(run.trajectory.column("n").back() ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  }

  TEST_CASE("full system: therapy lifts the balance into the high basin") {
    FullModelParams p;
    const auto roots = equilibrium_eb_values(p);
    const double eb0 = roots.front();
    const double total = equilibrium_total_affect(eb0, p);
    InterventionSchedule therapy({{182, 365, 0.2, std::nullopt, 1.0}});
    const auto run = integrate_full(p, {total * eb0, total * (1 - eb0)}, 1500, 0.1, therapy, 10);
    const auto& eb = run.trajectory.column("eb");
    CHECK(eb[18] == doctest::Approx(eb0).epsilon(1e-6));
    CHECK(eb.back() == doctest::Approx(roots.back()).epsilon(1e-4));
  }

  TEST_CASE("full system: delay after therapy rings around the upper root") {
    FullModelParams p;
    const auto roots = equilibrium_eb_values(p);
    const double eb0 = roots.front();
    const double total = equilibrium_total_affect(eb0, p);
    auto crossings = [&](double td) {
      InterventionSchedule sched({{182, 365, 0.2, std::nullopt, 1.0},
                                  {365, 3000, 0.0, td, 1.0}});
      const auto run =
          integrate_full(p, {total * eb0, total * (1 - eb0)}, 3000, 0.1, sched, 10);
      const auto& t = run.trajectory.times();
      const auto& eb = run.trajectory.column("eb");
      int count = 0;
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (t[i] <= 366) continue;
        REQUIRE(eb[i] > roots[1]);
        count += (eb[i] - roots.back()) * (eb[i - 1] - roots.back()) < 0;
      }
      CHECK(eb.back() == doctest::Approx(roots.back()).epsilon(1e-4));
      return count;
    };
    CHECK(crossings(0.0) == 0);
    CHECK(crossings(21.0) >= 10);
  }

  TEST_CASE("full system step validation") {
    FullModelParams p;
    CHECK_THROWS_AS(integrate_full(p, {1, 1}, 10, 0.3), InvalidStep);
    p.t_d = 0.05;
    CHECK_THROWS_AS(integrate_full(p, {1, 1}, 10, 0.1), InvalidStep);
    p.t_d = 0;
    InterventionSchedule s({{1, 2, 0, 0.05, 1}});
    CHECK_THROWS_AS(integrate_full(p, {1, 1}, 10, 0.1, s), InvalidStep);
    CHECK_THROWS_AS(integrate_full(p, {-1, 1}, 10, 0.1), ValidationError);
  }

  TEST_CASE("period estimation on a known sine") {
    std::vector<double> t, v;
    for (int i = 0; i < 5000; ++i) {
      t.push_back(0.01 * i);
      v.push_back(3 + std::sin(2 * std::numbers::pi * t.back() / 1.7));
    }
    const auto period = estimate_period(t, v);
    REQUIRE(period);
    CHECK(*period == doctest::Approx(1.7).epsilon(1e-3));
    CHECK(amplitude_between(t, v, 10, 50) == doctest::Approx(1.0).epsilon(1e-3));
    std::vector<double> flat(t.size(), 2.0);
    CHECK_FALSE(estimate_period(t, flat));
  }
}
