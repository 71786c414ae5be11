#include "evopoisson/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evopoisson/dynamics.hpp"
#include "evopoisson/equilibrium.hpp"
#include "evopoisson/errors.hpp"

namespace evopoisson {
namespace {

constexpr double kRevenueSolverTol = 1e-12;
// Inner runs start at least this far from 0 and 1, which are rest points.
constexpr double kWarmStartMargin = 0.01;

int draw_direction(std::mt19937_64& rng) { return (rng() >> 63) != 0 ? 1 : -1; }

double golden_section_max(const RevenueFn& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// Shared SPSA loop. `observe(price, probe, direction)` returns
/// {R~(price), R~(probe)}; `population()` reports the tracked state, if any.
template <class Observe, class Population>
ControllerState run_loop(double price_cap, const TwoTimescaleOptions& options, Observe observe,
                         Population population) {
  const double delta = options.delta.value_or(0.01 * price_cap);
  if (!(delta > 0 && 2 * delta < price_cap)) throw InvalidParameter("delta must lie in (0, K/2)");
  const double c_start = options.c0.value_or(0.5 * price_cap);
  if (!(c_start > 0 && c_start < price_cap)) throw InvalidParameter("C0 must lie in (0, K)");
  if (options.n_outer < 1) throw InvalidParameter("n_outer must be >= 1");

  ControllerState state;
  state.schedule = options.price_steps;
  state.flags = validate_schedule(options.price_steps);
  state.delta = delta;
  state.seed = options.seed;
  state.mode = options.mode;
  if (!state.flags.valid_for_controller()) {
    state.notes.push_back("price schedule " + options.price_steps.name() +
                          " violates sum a = inf, sum a^2 < inf, n a(n) -> 0; convergence to C* is not guaranteed");
  }

  std::mt19937_64 rng(options.seed);
  double price = std::clamp(c_start, delta, price_cap - delta);
  state.trace.reserve(static_cast<std::size_t>(options.n_outer));
  for (std::int64_t n = 1; n <= options.n_outer; ++n) {
    const int direction = draw_direction(rng);
    const double probe = price + delta * direction;
    const auto [base_revenue, probe_revenue] = observe(n, price, probe, direction);
    const double gradient = (probe_revenue - base_revenue) / (delta * direction);

    state.trace.push_back(TraceRow{n, price, base_revenue, direction, population()});
    price = std::clamp(price + options.price_steps(n) * gradient, delta, price_cap - delta);
    state.iteration = n;
  }
  state.price = price;
  return state;
}

}  // namespace

double revenue(const PayoffEngine& engine, double price) {
  if (!(price >= 0)) throw InvalidParameter("price must be >= 0");
  if (price >= engine.infection_cost()) return 0.0;
  const EquilibriumResult eq = solve_equilibrium(engine.with_protection_cost(price), kRevenueSolverTol);
  return engine.lambda() * (1.0 - eq.p_star) * price;
}

double revenue_support_end(const PayoffEngine& engine) {
  const double k = engine.infection_cost();
  const double safe_mass_at_one = engine.F(1.0) * std::exp(-engine.lambda());
  return std::clamp(k * (1.0 - safe_mass_at_one), 0.0, k);
}

ConcavityReport concavity_check(const PayoffEngine& engine, double c_lo, double c_hi, std::size_t n_points) {
  const double k = engine.infection_cost();
  if (!(c_lo >= 0 && c_hi <= k && c_lo < c_hi)) throw InvalidParameter("need 0 <= c_lo < c_hi <= K");
  if (n_points < 3) throw InvalidParameter("concavity check needs at least 3 grid points");

  ConcavityReport report;
  report.support_end = revenue_support_end(engine);
  double hi = c_hi;
  if (report.support_end < hi) {
    hi = report.support_end;
    report.clipped = true;
  }
  if (!(hi > c_lo)) throw InvalidParameter("grid lies entirely where the revenue is identically zero");

  report.prices.resize(n_points);
  report.revenues.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double c = c_lo + (hi - c_lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    report.prices[i] = c;
    report.revenues[i] = revenue(engine, c);
  }

  const auto& r = report.revenues;
  std::optional<std::size_t> last_failure;
  report.second_differences.resize(n_points - 2);
  for (std::size_t i = 0; i + 2 < n_points; ++i) {
    report.second_differences[i] = r[i] - 2.0 * r[i + 1] + r[i + 2];
    if (!(report.second_differences[i] < 0)) last_failure = i;
  }
  const std::size_t tail_start = last_failure ? *last_failure + 1 : 0;
  report.c0 = report.prices[tail_start];
  report.concave_on_tail = tail_start + 2 < n_points;

  report.argmax = static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
  report.unique_maximizer =
      std::count_if(r.begin(), r.end(), [&](double v) { return v >= r[report.argmax]; }) == 1;
  bool peaked = true;
  for (std::size_t i = 0; i + 1 < n_points; ++i) {
    if (i < report.argmax && r[i + 1] < r[i]) peaked = false;
    if (i >= report.argmax && r[i + 1] > r[i]) peaked = false;
  }
  report.single_peaked = peaked;
  return report;
}

RevenueOptimum optimize_exact(const RevenueFn& revenue_eval, double c_lo, double c_hi, double tol) {
  if (!(c_lo < c_hi)) throw InvalidParameter("need c_lo < c_hi");
  if (!(tol > 0)) throw InvalidParameter("tol must be > 0");
  constexpr std::size_t n = kOptimizeGridPoints;
  const double h = (c_hi - c_lo) / static_cast<double>(n - 1);
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double v = revenue_eval(c_lo + h * static_cast<double>(i));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = c_lo + h * static_cast<double>(best == 0 ? 0 : best - 1);
  const double b = c_lo + h * static_cast<double>(std::min(best + 1, n - 1));
  const double refined = golden_section_max(revenue_eval, a, b, tol);
  const double refined_value = revenue_eval(refined);

  RevenueOptimum out{c_lo + h * static_cast<double>(best), best_value};
  if (refined_value > out.revenue) out = {refined, refined_value};
  return out;
}

RevenueOptimum optimize_exact(const PayoffEngine& engine, double tol) {
  return optimize_exact([&engine](double c) { return revenue(engine, c); }, 0.0, engine.infection_cost(), tol);
}

SpsaSample spsa_gradient(const RevenueFn& revenue_eval, double price, double delta, std::mt19937_64& rng) {
  if (!(delta > 0)) throw InvalidParameter("delta must be > 0");
  SpsaSample s;
  s.direction = draw_direction(rng);
  s.base_revenue = revenue_eval(price);
  s.probe_revenue = revenue_eval(price + delta * s.direction);
  s.gradient = (s.probe_revenue - s.base_revenue) / (delta * s.direction);
  return s;
}

const char* to_string(ControlMode mode) {
  return mode == ControlMode::kCoupled ? "coupled" : "nested";
}

ControllerState run_two_timescale(const PayoffEngine& engine, const TwoTimescaleOptions& options) {
  const double lambda = engine.lambda();
  const double k = engine.infection_cost();
  if (!(options.p0 >= 0 && options.p0 <= 1)) throw InvalidParameter("p0 must lie in [0, 1]");

  if (options.mode == ControlMode::kNested) {
    double state = options.p0;
    DiscreteOptions inner;
    inner.tol = options.inner_tol;
    inner.n_max = options.inner_max_iter;
    inner.record = false;
    std::int64_t unconverged = 0;
    auto settle = [&](double price) {
      if (price >= k) return 0.0;
      const Trajectory t =
          discrete_replicator(engine.with_protection_cost(price),
                              std::clamp(state, kWarmStartMargin, 1.0 - kWarmStartMargin),
                              options.population_steps, inner);
      if (!t.converged) ++unconverged;
      state = t.final_value();
      return lambda * (1.0 - state) * price;
    };
    auto observe = [&](std::int64_t, double price, double probe, int) {
      const double base = settle(price);
      const double probed = settle(probe);
      return std::pair{base, probed};
    };
    ControllerState out = run_loop(k, options, observe, [] { return std::optional<double>{}; });
    if (unconverged > 0) {
      out.notes.push_back(std::to_string(unconverged) + " inner replicator runs hit the iteration cap");
    }
    return out;
  }

  double base_state = options.p0;
  double plus_state = options.p0;
  double minus_state = options.p0;
  auto observe = [&](std::int64_t n, double price, double probe, int direction) {
    const double b = options.population_steps(n);
    const double delta = std::abs(probe - price);
    auto advance = [&](double& p, double c) {
      p = discrete_replicator_step(engine.with_protection_cost(c), p, b);
    };
    advance(base_state, price);
    advance(plus_state, price + delta);
    advance(minus_state, std::max(0.0, price - delta));
    const double probe_state = direction > 0 ? plus_state : minus_state;
    return std::pair{lambda * (1.0 - base_state) * price, lambda * (1.0 - probe_state) * probe};
  };
  return run_loop(k, options, observe, [&] { return std::optional<double>{base_state}; });
}

ControllerState run_two_timescale(const RevenueFn& observe_revenue, double price_cap,
                                  const TwoTimescaleOptions& options) {
  if (!(price_cap > 0)) throw InvalidParameter("price cap must be > 0");
  auto observe = [&](std::int64_t, double price, double probe, int) {
    return std::pair{observe_revenue(price), observe_revenue(probe)};
  };
  return run_loop(price_cap, options, observe, [] { return std::optional<double>{}; });
}

}  // namespace evopoisson
