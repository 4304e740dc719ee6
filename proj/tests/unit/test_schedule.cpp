#include <doctest.h>

#include <affect/errors.hpp>
#include <affect/schedule.hpp>

using namespace affect;

TEST_SUITE("schedule") {
  TEST_CASE("uncovered time uses the defaults") {
    InterventionSchedule s({{10, 20, 0.2, std::nullopt, 1.0}});
    const auto v = s.at(5, 7.0);
    CHECK(v.a == 0.0);
    CHECK(v.t_d == 7.0);
    CHECK(v.neg_rate_multiplier == 1.0);
    CHECK(InterventionSchedule{}.at(100, 3.0).t_d == 3.0);
  }

  TEST_CASE("segments are half-open") {
    InterventionSchedule s({{10, 20, 0.2, 4.0, 3.0}, {20, 30, 0.0, std::nullopt, 2.0}});
    CHECK(s.at(9.999, 0).a == 0.0);
    CHECK(s.at(10, 0).a == 0.2);
    CHECK(s.at(10, 0).t_d == 4.0);
    CHECK(s.at(19.999, 0).neg_rate_multiplier == 3.0);
    CHECK(s.at(20, 1.5).neg_rate_multiplier == 2.0);
    CHECK(s.at(20, 1.5).t_d == 1.5);
    CHECK(s.at(30, 0).neg_rate_multiplier == 1.0);
  }

  TEST_CASE("validation") {
    CHECK_THROWS_AS(InterventionSchedule({{10, 5, 0, {}, 1}}), ValidationError);
    CHECK_THROWS_AS(InterventionSchedule({{0, 5, -0.1, {}, 1}}), ValidationError);
    CHECK_THROWS_AS(InterventionSchedule({{0, 5, 0, -1.0, 1}}), ValidationError);
    CHECK_THROWS_AS(InterventionSchedule({{0, 5, 0, {}, -1}}), ValidationError);
    CHECK_THROWS_AS(InterventionSchedule({{0, 5, 0, {}, 1}, {4, 8, 0, {}, 1}}), ValidationError);
    CHECK_THROWS_AS(InterventionSchedule({{4, 8, 0, {}, 1}, {0, 2, 0, {}, 1}}), ValidationError);
    CHECK_NOTHROW(InterventionSchedule({{0, 5, 0, {}, 1}, {5, 8, 0, {}, 1}}));
  }

  TEST_CASE("max delay and breakpoints") {
    InterventionSchedule s({{0, 5, 0, 2.0, 1}, {5, 8, 0, 9.0, 1}, {10, 12, 0, {}, 1}});
    CHECK(s.max_delay(1.0) == 9.0);
    CHECK(s.max_delay(11.0) == 11.0);
    CHECK(s.breakpoints() == std::vector<double>{0, 5, 8, 10, 12});
  }

  TEST_CASE("stress scenario layout") {
    StressScenario sc;
    const auto s = sc.schedule();
    CHECK(s.at(100, 0).a == 0.0);
    CHECK(s.at(200, 0).a == 0.2);
    CHECK(s.at(200, 0).t_d == 0.0);
    CHECK(s.at(400, 0).t_d == 21.0);
    CHECK(s.at(1830, 0).neg_rate_multiplier == 3.0);
    CHECK(s.at(1846, 0).neg_rate_multiplier == 1.0);
    CHECK(s.at(3000, 0).t_d == 21.0);
    sc.stress_start = 300;
    CHECK_THROWS_AS(sc.schedule(), ValidationError);
  }
}
