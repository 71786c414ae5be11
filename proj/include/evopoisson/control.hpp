#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "evopoisson/payoff.hpp"
#include "evopoisson/schedule.hpp"

namespace evopoisson {

/// Revenue observed by the controller at a posted price.
using RevenueFn = std::function<double(double)>;

/// R(C) = lambda (1 - p*(C)) C, with p* solved for a copy of the model at price C.
double revenue(const PayoffEngine& engine, double price);

/// Price above which the curves no longer cross and p* = 1 (so R = 0):
/// K (1 - F(1) e^{-lambda}).
double revenue_support_end(const PayoffEngine& engine);

struct ConcavityReport {
  std::vector<double> prices;
  std::vector<double> revenues;
  /// second_differences[i] is centred on prices[i + 1].
  std::vector<double> second_differences;
  /// Smallest grid price from which every second difference is negative.
  double c0 = 0.0;
  bool concave_on_tail = false;
  double support_end = 0.0;
  /// True when c_hi was lowered to support_end.
  bool clipped = false;
  std::size_t argmax = 0;
  bool unique_maximizer = false;
  bool single_peaked = false;
};

/// Second differences of R on an evenly spaced grid over [c_lo, min(c_hi, support_end)].
ConcavityReport concavity_check(const PayoffEngine& engine, double c_lo, double c_hi, std::size_t n_points);

struct RevenueOptimum {
  double price = 0.0;
  double revenue = 0.0;
};

inline constexpr std::size_t kOptimizeGridPoints = 512;

/// Grid scan over [c_lo, c_hi] followed by golden-section refinement on the
/// cells around the best grid point, down to width tol.
RevenueOptimum optimize_exact(const RevenueFn& revenue_eval, double c_lo, double c_hi, double tol = 1e-8);
RevenueOptimum optimize_exact(const PayoffEngine& engine, double tol = 1e-8);

struct SpsaSample {
  double gradient = 0.0;
  /// Delta in {-1, +1}.
  int direction = 1;
  double base_revenue = 0.0;
  double probe_revenue = 0.0;
};

/// Draws Delta = +/-1 with equal probability from the top bit of `rng` and
/// returns (R(C + delta Delta) - R(C)) / (delta Delta).
SpsaSample spsa_gradient(const RevenueFn& revenue_eval, double price, double delta, std::mt19937_64& rng);

enum class ControlMode { kCoupled, kNested };

const char* to_string(ControlMode mode);

struct TwoTimescaleOptions {
  StepSchedule price_steps = StepSchedule::inv_n_log_n();
  StepSchedule population_steps = StepSchedule::inv_n();
  /// Probe width; 0.01 K when unset.
  std::optional<double> delta;
  /// Starting price; K / 2 when unset.
  std::optional<double> c0;
  std::int64_t n_outer = 300;
  ControlMode mode = ControlMode::kNested;
  std::uint64_t seed = 1;
  /// Initial population OFF share.
  double p0 = 0.5;
  double inner_tol = 1e-9;
  std::int64_t inner_max_iter = 200'000;
};

struct TraceRow {
  std::int64_t n = 0;
  /// Price posted at iteration n (before the update).
  double price = 0.0;
  double revenue_estimate = 0.0;
  int direction = 1;
  /// Base population state; only tracked in coupled mode.
  std::optional<double> population;
};

struct ControllerState {
  double price = 0.0;
  std::int64_t iteration = 0;
  StepSchedule schedule = StepSchedule::inv_n_log_n();
  ScheduleFlags flags;
  double delta = 0.0;
  std::uint64_t seed = 0;
  ControlMode mode = ControlMode::kNested;
  std::vector<TraceRow> trace;
  std::vector<std::string> notes;
};

/// SPSA price updates C_{n+1} = C_n + a(n) f(C_n, Delta_n), projected onto
/// [delta, K - delta], driven by the population's replicator dynamics.
///
/// kNested runs the discrete replicator to convergence at every posted price
/// (warm-started from the last population state). kCoupled keeps one
/// population replica per price C_n, C_n + delta, C_n - delta and advances
/// each by a single b(n) step per price update.
ControllerState run_two_timescale(const PayoffEngine& engine, const TwoTimescaleOptions& options);

/// Same loop against a directly observable revenue curve (no population), with
/// prices projected onto [delta, price_cap - delta].
ControllerState run_two_timescale(const RevenueFn& observe, double price_cap, const TwoTimescaleOptions& options);

}  // namespace evopoisson
