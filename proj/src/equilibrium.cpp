#include "evopoisson/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "evopoisson/errors.hpp"
#include "evopoisson/lambert_w.hpp"

namespace evopoisson {
namespace {

constexpr double kClosedFormResidual = 1e-8;

double relative_mismatch(double f, double g) {
  const double scale = std::max(std::abs(f), std::abs(g));
  return scale > 0 ? std::abs(f - g) / scale : 0.0;
}

EquilibriumResult pure_off(const PayoffEngine& engine) {
  EquilibriumResult r;
  r.p_star = 1.0;
  r.kind = EquilibriumKind::kPureOffDominant;
  r.convention = engine.model().convention();
  return r;
}

void require_single_type_self_exclusive(const PayoffEngine& engine, const char* what) {
  const auto& model = engine.model();
  if (model.num_types() != 1) throw DomainError(std::string(what) + " needs a single player type");
  if (model.convention() != Convention::kSelfExclusive) {
    throw DomainError(std::string(what) + " needs the self-exclusive convention");
  }
  if (model.protection_cost() >= model.infection_cost()) {
    throw DomainError(std::string(what) + " needs C < K; use the dominance path");
  }
}

/// Sign of tau - 1 and 2 tau - 1, exact when tau is a fraction.
int compare_tau(const Rate& tau, std::int64_t num, std::int64_t den) {
  if (tau.is_exact()) {
    const __int128 lhs = static_cast<__int128>(tau.fraction()->num) * den;
    const __int128 rhs = static_cast<__int128>(num) * tau.fraction()->den;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }
  const double target = static_cast<double>(num) / static_cast<double>(den);
  return tau.value() < target ? -1 : (tau.value() > target ? 1 : 0);
}

}  // namespace

const char* to_string(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::kPureOffDominant:
      return "PURE_OFF_DOMINANT";
    case EquilibriumKind::kInteriorMixed:
      return "INTERIOR_MIXED";
    case EquilibriumKind::kClosedFormLog:
      return "CLOSED_FORM_LOG";
    case EquilibriumKind::kClosedFormLambert:
      return "CLOSED_FORM_LAMBERT";
  }
  return "?";
}

std::optional<EquilibriumResult> check_dominance(const PayoffEngine& engine) {
  if (engine.protection_cost() >= engine.infection_cost()) return pure_off(engine);
  return std::nullopt;
}

bool interior_exists(const PayoffEngine& engine) { return engine.F(1.0) < engine.G(1.0); }

EquilibriumResult solve_equilibrium(const PayoffEngine& engine, double tol) {
  if (!(tol > 0)) throw InvalidParameter("solver tolerance must be > 0");
  if (auto dominant = check_dominance(engine)) return *dominant;
  if (!interior_exists(engine)) return pure_off(engine);

  // H(0) = C/K >= 0 and H(1) < 0; keep H(lo) > 0 >= H(hi).
  double lo = 0.0;
  double hi = 1.0;
  int iterations = 0;
  double p = 0.5;
  double residual = std::numeric_limits<double>::infinity();
  for (; iterations < 400; ++iterations) {
    p = 0.5 * (lo + hi);
    const double f = engine.F(p);
    const double g = engine.G(p);
    if (!std::isfinite(f) || !std::isfinite(g)) {
      std::ostringstream msg;
      msg << "non-finite F/G during bisection at p=" << p << " (F=" << f << ", G=" << g
          << ", lambda=" << engine.lambda() << ")";
      throw NumericalError(msg.str());
    }
    residual = relative_mismatch(f, g);
    if (hi - lo <= tol && residual <= tol) break;
    if (p <= lo || p >= hi) break;
    if (f - g > 0) {
      lo = p;
    } else {
      hi = p;
    }
  }

  EquilibriumResult r;
  r.p_star = p;
  r.kind = EquilibriumKind::kInteriorMixed;
  r.residual = residual;
  r.iterations = iterations;
  r.convention = engine.model().convention();
  return r;
}

EquilibriumResult closed_form_high_tau(const PayoffEngine& engine) {
  require_single_type_self_exclusive(engine, "log closed form");
  const auto& model = engine.model();
  if (compare_tau(model.taus()[0], 1, 1) <= 0) throw DomainError("log closed form needs tau > 1");

  const double k = model.infection_cost();
  const double c = model.protection_cost();
  EquilibriumResult r;
  r.p_star = std::min(1.0, std::log(k / (k - c)) / model.lambda());
  r.kind = EquilibriumKind::kClosedFormLog;
  r.convention = model.convention();
  if (r.p_star < 1.0) r.residual = relative_mismatch(engine.F(r.p_star), engine.G(r.p_star));
  return r;
}

EquilibriumResult closed_form_mid_tau(const PayoffEngine& engine) {
  require_single_type_self_exclusive(engine, "Lambert closed form");
  const auto& model = engine.model();
  const Rate& tau = model.taus()[0];
  if (compare_tau(tau, 1, 2) <= 0 || compare_tau(tau, 1, 1) > 0) {
    throw DomainError("Lambert closed form needs 1/2 < tau <= 1");
  }

  const double lambda = model.lambda();
  const double keep = 1.0 - model.protection_cost() / model.infection_cost();
  const double w = lambert_w_minus1(-keep / std::numbers::e);
  const double p = -(1.0 + w) / lambda;
  if (!(p > 0.0 && p < 1.0)) return solve_equilibrium(engine);

  const double residual = relative_mismatch(1.0 + lambda * p, keep * std::exp(lambda * p));
  if (residual > kClosedFormResidual) {
    std::ostringstream msg;
    msg << "Lambert closed form residual " << residual << " exceeds " << kClosedFormResidual;
    throw NumericalError(msg.str());
  }
  EquilibriumResult r;
  r.p_star = p;
  r.kind = EquilibriumKind::kClosedFormLambert;
  r.residual = residual;
  r.convention = model.convention();
  return r;
}

EssReport verify_ess(const PayoffEngine& engine, double p_star, std::span<const double> q_grid,
                     std::span<const double> eps_grid) {
  if (!(p_star >= 0.0 && p_star <= 1.0)) throw InvalidParameter("p* must lie in [0, 1]");
  EssReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (double q : q_grid) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("mutant strategies must lie in (0, 1)");
    if (std::abs(q - p_star) <= kDefaultSolverTolerance) {
      throw InvalidParameter("mutant grid must exclude p*");
    }
    for (double eps : eps_grid) {
      if (!(eps > 0.0 && eps <= 1.0)) throw InvalidParameter("mutant shares must lie in (0, 1]");
      const double mixed = eps * q + (1.0 - eps) * p_star;
      const double margin = engine.expected_cost_mixed(q, mixed) - engine.expected_cost_mixed(p_star, mixed);
      ++report.checked;
      if (margin < report.worst_margin) {
        report.worst_margin = margin;
        report.worst_q = q;
        report.worst_eps = eps;
      }
      if (!(margin > kEssStrictMargin)) report.passed = false;
    }
  }
  return report;
}

}  // namespace evopoisson
