#pragma once

#include <memory>
#include <span>

#include "evopoisson/population_model.hpp"
#include "evopoisson/safe_set.hpp"

namespace evopoisson {

/// Cost functions of the protection game for one model.
///
/// Holds the model together with its precomputed safe set. The safe set only
/// depends on the rates, the type mix and the convention, so the cheap
/// `with_*` variants share it across copies with a different lambda or C.
class PayoffEngine {
 public:
  explicit PayoffEngine(PopulationModel model);
  /// Throws InvalidParameter if `safe_set` was built for different parameters.
  PayoffEngine(PopulationModel model, std::shared_ptr<const SafeSet> safe_set);

  const PopulationModel& model() const { return model_; }
  const SafeSet& safe_set() const { return *safe_set_; }

  PayoffEngine with_protection_cost(double c) const;
  PayoffEngine with_lambda(double lambda) const;

  double lambda() const { return model_.lambda(); }
  double infection_cost() const { return model_.infection_cost(); }
  double protection_cost() const { return model_.protection_cost(); }

  /// u(OFF, x): K if x propagates, else 0. Type independent.
  double realized_cost_off(std::span<const std::uint32_t> x) const;

  /// Safe-set mass scaled by e^{lambda p}: sum_n c_n (lambda p)^n.
  double F(double p) const;
  /// (1 - C/K) e^{lambda p}.
  double G(double p) const;

  /// U(OFF, p) = K (1 - e^{-lambda p} F(p)), clamped into [0, K].
  double expected_cost_off(double p) const;
  /// U(q, p) = q U(OFF, p) + (1 - q) C.
  double expected_cost_mixed(double q, double p) const;

  /// P(X = x | p) for independent Poisson counts with means lambda r_t p.
  double outcome_probability(std::span<const std::uint32_t> x, double p) const;

 private:
  PopulationModel model_;
  std::shared_ptr<const SafeSet> safe_set_;
};

}  // namespace evopoisson
