#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "evopoisson/rate.hpp"

namespace evopoisson {

/// How an outcome vector is read by the propagation predicate.
///
/// kLiteralEq2 counts every unprotected player in x and propagates when
/// sum_t x_t tau_t/(1+tau_t) >= 1. kSelfExclusive reads x as the *other*
/// unprotected players seen by a focal player of the most contagious type;
/// a point is safe while sum_t x_t w_t <= 1 - max_t w_t, which for a single
/// type gives the truncation x <= floor(delta/beta).
enum class Convention { kLiteralEq2, kSelfExclusive };

const char* to_string(Convention c);

/// Number of unprotected (OFF) players of each type.
using OutcomeVector = std::vector<std::uint32_t>;

struct ModelParams {
  double lambda = 1.0;
  std::vector<double> type_dist;
  Rate beta = Rate::exact(1, 1);
  std::vector<Rate> recovery_rates;
  double infection_cost = 1.0;
  double protection_cost = 0.0;
  /// Defaults to kSelfExclusive for one type and kLiteralEq2 otherwise.
  std::optional<Convention> convention;
};

/// Validated, immutable game and epidemic parameters.
class PopulationModel {
 public:
  explicit PopulationModel(ModelParams params);

  /// Builds a model with beta = 1 and delta_t = 1/tau_t.
  static PopulationModel from_taus(double lambda, std::vector<double> type_dist,
                                   const std::vector<Rate>& taus, double infection_cost,
                                   double protection_cost,
                                   std::optional<Convention> convention = std::nullopt);

  double lambda() const { return params_.lambda; }
  std::size_t num_types() const { return params_.type_dist.size(); }
  const std::vector<double>& type_dist() const { return params_.type_dist; }
  const Rate& beta() const { return params_.beta; }
  const std::vector<Rate>& recovery_rates() const { return params_.recovery_rates; }
  double infection_cost() const { return params_.infection_cost; }
  double protection_cost() const { return params_.protection_cost; }
  Convention convention() const { return convention_; }
  const ModelParams& params() const { return params_; }

  /// tau_t = beta/delta_t, exact when both rates are.
  const std::vector<Rate>& taus() const { return taus_; }
  bool all_rates_exact() const;

  PopulationModel with_protection_cost(double c) const;
  PopulationModel with_lambda(double lambda) const;
  PopulationModel with_convention(Convention c) const;

 private:
  ModelParams params_;
  Convention convention_;
  std::vector<Rate> taus_;
};

/// Effective spreading rates tau_t = beta/delta_t.
std::vector<double> effective_rates(const PopulationModel& model);

/// True when the infection spreads over the whole interaction group.
bool propagates(const PopulationModel& model, std::span<const std::uint32_t> x);

/// Homogeneous complete-graph epidemic threshold 1/(x-1) for x >= 2 nodes.
double critical_threshold_homogeneous(std::int64_t x);

}  // namespace evopoisson
