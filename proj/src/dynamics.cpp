#include "evopoisson/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "evopoisson/errors.hpp"

namespace evopoisson {
namespace {

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

void check_start(double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw InvalidParameter("initial state must lie in [0, 1]");
}

}  // namespace

double replicator_rhs(const PayoffEngine& engine, double p, double epsilon) {
  if (!(epsilon > 0)) throw InvalidParameter("epsilon must be > 0");
  return p * (1.0 - p) * (engine.protection_cost() - engine.expected_cost_off(p)) / epsilon;
}

double default_time_step(const PayoffEngine& engine, double epsilon) {
  return 0.5 * epsilon / (engine.lambda() * engine.infection_cost());
}

Trajectory integrate_replicator(const PayoffEngine& engine, double p0, const IntegrationOptions& options) {
  check_start(p0);
  const double eps = options.epsilon;
  if (!(eps > 0)) throw InvalidParameter("epsilon must be > 0");
  const double dt = options.dt.value_or(default_time_step(engine, eps));
  if (!(dt > 0)) throw InvalidParameter("dt must be > 0");
  if (!(options.t_max > 0)) throw InvalidParameter("t_max must be > 0");
  if (options.record_every < 1) throw InvalidParameter("record_every must be >= 1");

  auto rhs = [&](double p) { return replicator_rhs(engine, clamp01(p), eps); };

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.values.push_back(p0);

  double p = p0;
  double t = 0.0;
  const auto max_steps = static_cast<std::int64_t>(std::ceil(options.t_max / dt));
  for (std::int64_t step = 1; step <= max_steps; ++step) {
    const double k1 = rhs(p);
    const double k2 = rhs(p + 0.5 * dt * k1);
    const double k3 = rhs(p + 0.5 * dt * k2);
    const double k4 = rhs(p + dt * k3);
    const double next = clamp01(p + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    t = static_cast<double>(step) * dt;
    const double moved = std::abs(next - p);
    p = next;
    traj.steps = step;

    const bool done = std::abs(rhs(p)) < options.tol && moved < options.tol * dt;
    if (done || step == max_steps || step % options.record_every == 0) {
      traj.times.push_back(t);
      traj.values.push_back(p);
    }
    if (done) {
      traj.converged = true;
      traj.rest_point = p;
      break;
    }
  }
  return traj;
}

double discrete_replicator_step(const PayoffEngine& engine, double p, double step) {
  double delta = step * replicator_rhs(engine, p);
  if (p + delta > 1.0) delta = 0.5 * (1.0 - p);
  if (p + delta < 0.0) delta = -0.5 * p;
  return clamp01(p + delta);
}

Trajectory discrete_replicator(const PayoffEngine& engine, double p0, const StepSchedule& schedule,
                               const DiscreteOptions& options) {
  check_start(p0);
  if (options.n_max < 1) throw InvalidParameter("n_max must be >= 1");

  Trajectory traj;
  if (!validate_schedule(schedule).valid_for_replicator()) {
    traj.warnings.push_back("schedule " + schedule.name() +
                            " is not (non-summable, square-summable); the iteration need not track the ODE");
  }
  traj.times.push_back(0.0);
  traj.values.push_back(p0);

  double p = p0;
  double next_mark = 1.0;
  for (std::int64_t n = 1; n <= options.n_max; ++n) {
    const double b = schedule(n);
    const double next = discrete_replicator_step(engine, p, b);
    const bool done = std::abs(next - p) / b < options.tol;
    p = next;
    traj.steps = n;

    const bool last = done || n == options.n_max;
    // Dense for the first thousand iterations, then log-spaced.
    if (options.record ? (last || n <= 1000 || static_cast<double>(n) >= next_mark) : last) {
      traj.times.push_back(static_cast<double>(n));
      traj.values.push_back(p);
      if (n > 1000) next_mark = std::max(next_mark, static_cast<double>(n)) * 1.001;
    }
    if (n == 1000) next_mark = 1001.0;
    if (done) {
      traj.converged = true;
      traj.rest_point = p;
      break;
    }
  }
  return traj;
}

}  // namespace evopoisson
