#include <doctest.h>

#include <cmath>

#include "evopoisson/dynamics.hpp"
#include "evopoisson/equilibrium.hpp"
#include "evopoisson/errors.hpp"
#include "evopoisson/schedule.hpp"
#include "fixtures.hpp"

using namespace evopoisson;

TEST_CASE("schedule values and flags") {
  CHECK(StepSchedule::inv_n()(4) == 0.25);
  CHECK(StepSchedule::inv_n_sq()(4) == 1.0 / 16.0);
  CHECK(StepSchedule::inv_n_log_n()(1) == 1.0);
  CHECK(StepSchedule::inv_n_log_n()(10) == doctest::Approx(1.0 / (1.0 + 10.0 * std::log(10.0))));
  CHECK(StepSchedule::constant(0.1)(1000) == 0.1);
  CHECK_THROWS_AS(StepSchedule::inv_n()(0), InvalidParameter);
  CHECK_THROWS_AS(StepSchedule::constant(0.0), InvalidParameter);

  const auto inv_n = validate_schedule(StepSchedule::inv_n());
  CHECK(inv_n.sums_to_infinity);
  CHECK(inv_n.square_summable);
  CHECK(inv_n.slower_than_inv_n == false);
  CHECK(inv_n.valid_for_replicator());
  CHECK_FALSE(inv_n.valid_for_controller());

  const auto log = validate_schedule(StepSchedule::inv_n_log_n());
  CHECK(log.sums_to_infinity);
  CHECK(log.square_summable);
  CHECK(log.slower_than_inv_n == true);
  CHECK(log.valid_for_controller());

  const auto sq = validate_schedule(StepSchedule::inv_n_sq());
  CHECK_FALSE(sq.sums_to_infinity);
  CHECK(sq.square_summable);
  CHECK_FALSE(sq.slower_than_inv_n.has_value());

  const auto constant = validate_schedule(StepSchedule::constant(0.5));
  CHECK(constant.sums_to_infinity);
  CHECK_FALSE(constant.square_summable);
  CHECK(constant.slower_than_inv_n == false);
}

TEST_CASE("schedule parsing") {
  CHECK(StepSchedule::parse("inv_n").family() == ScheduleFamily::kInvN);
  CHECK(StepSchedule::parse("inv_n_log_n").family() == ScheduleFamily::kInvNLogN);
  CHECK(StepSchedule::parse("inv_n_sq").family() == ScheduleFamily::kInvNSq);
  const auto c = StepSchedule::parse("const:0.25");
  CHECK(c.family() == ScheduleFamily::kConstant);
  CHECK(c.constant_step() == 0.25);
  CHECK(StepSchedule::parse(c.name()).constant_step() == 0.25);
  CHECK_THROWS_AS(StepSchedule::parse("sqrt"), Unsupported);
  CHECK_THROWS(StepSchedule::parse("const:x"));
}

TEST_CASE("replicator right-hand side") {
  const PayoffEngine e(fixtures::two_type());
  CHECK(replicator_rhs(e, 0.0) == 0.0);
  CHECK(replicator_rhs(e, 1.0) == 0.0);
  const double p_star = solve_equilibrium(e).p_star;
  CHECK(std::abs(replicator_rhs(e, p_star)) <= 1e-8);
  CHECK(e.expected_cost_off(0.3) < e.protection_cost());
  CHECK(replicator_rhs(e, 0.3) > 0.0);
  CHECK(replicator_rhs(e, 0.95) < 0.0);
  CHECK(replicator_rhs(e, 0.3, 0.1) == doctest::Approx(10.0 * replicator_rhs(e, 0.3)));
  CHECK_THROWS_AS(replicator_rhs(e, 0.3, 0.0), InvalidParameter);
  CHECK_THROWS_AS(replicator_rhs(e, 1.3), InvalidParameter);
  CHECK(default_time_step(e) * e.lambda() * e.infection_cost() == doctest::Approx(0.5));
}

TEST_CASE("continuous dynamics converge monotonically to p*") {
  for (double lambda : {10.0, 20.0}) {
    const PayoffEngine e(fixtures::two_type(lambda));
    const double p_star = solve_equilibrium(e).p_star;
    for (double p0 : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const Trajectory t = integrate_replicator(e, p0);
      CHECK(t.converged);
      REQUIRE(t.rest_point);
      CHECK(std::abs(*t.rest_point - p_star) <= 1e-8);
      for (std::size_t i = 1; i < t.values.size(); ++i) {
        CHECK(std::abs(t.values[i] - p_star) <= std::abs(t.values[i - 1] - p_star) + 1e-15);
        CHECK(t.times[i] > t.times[i - 1]);
      }
    }
  }
  const PayoffEngine e20(fixtures::two_type(20.0));
  CHECK(std::abs(integrate_replicator(e20, 0.3).final_value() - 0.44) <= 0.03);
  CHECK(std::abs(integrate_replicator(e20, 0.7).final_value() - 0.44) <= 0.03);
}

TEST_CASE("continuous dynamics edge cases") {
  const PayoffEngine e(fixtures::two_type());
  const Trajectory zero = integrate_replicator(e, 0.0);
  for (double v : zero.values) CHECK(v == 0.0);
  const double p_star = solve_equilibrium(e).p_star;
  const Trajectory still = integrate_replicator(e, p_star);
  CHECK(std::abs(still.final_value() - p_star) <= 1e-10);
  IntegrationOptions bad;
  bad.dt = 0.0;
  CHECK_THROWS_AS(integrate_replicator(e, 0.5, bad), InvalidParameter);
  bad = {};
  bad.t_max = -1.0;
  CHECK_THROWS_AS(integrate_replicator(e, 0.5, bad), InvalidParameter);
  CHECK_THROWS_AS(integrate_replicator(e, 1.5), InvalidParameter);
}

TEST_CASE("time-scale factor does not move the rest point") {
  const PayoffEngine e(fixtures::two_type(20.0));
  for (double eps : {0.1, 1.0, 10.0}) {
    IntegrationOptions o;
    o.epsilon = eps;
    o.t_max = 1e5 * eps;
    const Trajectory t = integrate_replicator(e, 0.2, o);
    REQUIRE(t.rest_point);
    CHECK(std::abs(*t.rest_point - solve_equilibrium(e).p_star) <= 1e-8);
  }
}

TEST_CASE("discrete dynamics") {
  const PayoffEngine e(fixtures::two_type(10.0));
  const double p_star = solve_equilibrium(e).p_star;
  DiscreteOptions o;
  o.tol = 2e-5;
  o.n_max = 50'000'000;
  const Trajectory t = discrete_replicator(e, 0.5, StepSchedule::inv_n(), o);
  CHECK(t.converged);
  CHECK(t.warnings.empty());
  CHECK(std::abs(t.final_value() - p_star) <= 1e-4);
  CHECK(std::abs(t.final_value() - integrate_replicator(e, 0.5).final_value()) <= 1e-4);

  for (double p0 : {0.0, 1.0}) {
    const Trajectory fixed = discrete_replicator(e, p0, StepSchedule::inv_n());
    CHECK(fixed.final_value() == p0);
  }

  const Trajectory stalled = discrete_replicator(e, 0.5, StepSchedule::inv_n_sq());
  CHECK_FALSE(stalled.warnings.empty());
  CHECK(std::abs(stalled.final_value() - p_star) > 1e-2);

  CHECK(discrete_replicator_step(e, 0.5, 0.0) == 0.5);
  for (double step : {1.0, 10.0, 1e6}) {
    const double next = discrete_replicator_step(e, 0.99, step);
    CHECK(next > 0.0);
    CHECK(next < 1.0);
  }
}
