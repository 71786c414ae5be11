#pragma once

#include <optional>
#include <span>
#include <string>

#include "evopoisson/payoff.hpp"

namespace evopoisson {

enum class EquilibriumKind { kPureOffDominant, kInteriorMixed, kClosedFormLog, kClosedFormLambert };

const char* to_string(EquilibriumKind kind);

struct EquilibriumResult {
  /// Equilibrium probability of playing OFF.
  double p_star = 1.0;
  EquilibriumKind kind = EquilibriumKind::kPureOffDominant;
  /// Relative mismatch |F - G| / max(F, G) at p_star; 0 for pure outcomes.
  double residual = 0.0;
  int iterations = 0;
  Convention convention = Convention::kLiteralEq2;

  double protection_rate() const { return 1.0 - p_star; }
};

inline constexpr double kDefaultSolverTolerance = 1e-10;

/// p* = 1 when C >= K (OFF dominates), otherwise nothing.
std::optional<EquilibriumResult> check_dominance(const PayoffEngine& engine);

/// F(1) < G(1): the only condition under which F and G cross inside (0, 1).
bool interior_exists(const PayoffEngine& engine);

/// Symmetric equilibrium by bisection on F - G.
///
/// Falls back to p* = 1 when C >= K or when the curves never cross, since
/// U(OFF, p) < C then holds for every profile. Throws NumericalError on
/// non-finite intermediate values.
EquilibriumResult solve_equilibrium(const PayoffEngine& engine, double tol = kDefaultSolverTolerance);

/// Single type, tau > 1, self-exclusive counting: p* = min(1, log(K/(K-C))/lambda).
EquilibriumResult closed_form_high_tau(const PayoffEngine& engine);

/// Single type, 1/2 < tau <= 1, self-exclusive counting:
/// p* = -(1 + W_{-1}(-(1 - C/K)/e)) / lambda. Returns the bisection result
/// when the formula leaves (0, 1).
EquilibriumResult closed_form_mid_tau(const PayoffEngine& engine);

struct EssReport {
  bool passed = true;
  /// Smallest U(q, m) - U(p*, m) over the grid, m = eps q + (1 - eps) p*.
  double worst_margin = 0.0;
  double worst_q = 0.0;
  double worst_eps = 0.0;
  std::size_t checked = 0;
};

inline constexpr double kEssStrictMargin = 1e-12;

/// Checks the incumbent p* undercuts every mutant q on the grid at every
/// mutant share eps. Grids must stay in (0, 1] and avoid p* itself.
EssReport verify_ess(const PayoffEngine& engine, double p_star, std::span<const double> q_grid,
                     std::span<const double> eps_grid);

}  // namespace evopoisson
