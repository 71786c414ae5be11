#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evopoisson/payoff.hpp"
#include "evopoisson/schedule.hpp"

namespace evopoisson {

/// Time (or iteration index) series of the population's OFF share.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> values;
  bool converged = false;
  std::optional<double> rest_point;
  /// Integration steps or iterations actually taken.
  std::int64_t steps = 0;
  std::vector<std::string> warnings;

  double final_value() const { return values.empty() ? 0.0 : values.back(); }
};

/// (1/eps) p (1 - p) (C - U(OFF, p)).
double replicator_rhs(const PayoffEngine& engine, double p, double epsilon = 1.0);

/// Largest dt with dt * lambda * K <= 0.5, scaled by epsilon.
double default_time_step(const PayoffEngine& engine, double epsilon = 1.0);

struct IntegrationOptions {
  std::optional<double> dt;  // default_time_step() when unset
  double t_max = 1e4;
  double epsilon = 1.0;
  double tol = 1e-10;
  /// Keep every k-th step (the first and last are always kept).
  std::int64_t record_every = 1;
};

/// Fixed-step RK4 on the replicator equation, clamped to [0, 1]. Stops once
/// |dp/dt| < tol and the last step moved less than tol * dt.
Trajectory integrate_replicator(const PayoffEngine& engine, double p0, const IntegrationOptions& options = {});

struct DiscreteOptions {
  std::int64_t n_max = 10'000'000;
  double tol = 1e-8;
  /// When false only the start and end points are stored.
  bool record = true;
};

/// One iteration p + b p (1 - p)(C - U(OFF, p)). A step that would leave
/// [0, 1] is cut to half the remaining distance, so the absorbing boundary
/// rest points are never reached from the interior.
double discrete_replicator_step(const PayoffEngine& engine, double p, double step);

/// Iterates the discrete replicator with b(n) from `schedule`, n = 1, 2, ...
/// Converged when |p_{n+1} - p_n| / b(n) < tol. Schedules that are not
/// (non-summable, square-summable) run anyway but leave a warning.
Trajectory discrete_replicator(const PayoffEngine& engine, double p0, const StepSchedule& schedule,
                               const DiscreteOptions& options = {});

}  // namespace evopoisson
