#pragma once

#include <vector>

#include "evopoisson/population_model.hpp"

namespace fixtures {

using evopoisson::Convention;
using evopoisson::PopulationModel;
using evopoisson::Rate;

// lambda=10, r=(0.1, 0.9), tau=(1/20, 1/5), K=5, C=4.
inline PopulationModel two_type(double lambda = 10.0, double c = 4.0,
                                Convention conv = Convention::kLiteralEq2) {
  return PopulationModel::from_taus(lambda, {0.1, 0.9}, {Rate::exact(1, 20), Rate::exact(1, 5)}, 5.0, c, conv);
}

inline PopulationModel single_type(Rate tau, double lambda, double c, double k = 5.0) {
  return PopulationModel::from_taus(lambda, {1.0}, {tau}, k, c, Convention::kSelfExclusive);
}

// beta=5, delta=(10, 51/10), K=10, r=(0.3, 0.7), lambda=10.
inline PopulationModel pricing(double c = 5.0) {
  evopoisson::ModelParams p;
  p.lambda = 10.0;
  p.type_dist = {0.3, 0.7};
  p.beta = Rate::exact(5, 1);
  p.recovery_rates = {Rate::exact(10, 1), Rate::exact(51, 10)};
  p.infection_cost = 10.0;
  p.protection_cost = c;
  return PopulationModel(p);
}

}  // namespace fixtures
