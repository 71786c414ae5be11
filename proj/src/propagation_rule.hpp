#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "evopoisson/population_model.hpp"

namespace evopoisson::detail {

/// Linear propagation test sum_t x_t w_t (>= | >) threshold, with
/// w_t = tau_t/(1+tau_t) = beta/(beta+delta_t).
///
/// With exact rates every weight is put over a common denominator D so the
/// test becomes sum_t x_t a_t >= threshold in integers.
class PropagationRule {
 public:
  using BigInt = boost::multiprecision::cpp_int;

  explicit PropagationRule(const PopulationModel& model);

  bool exact() const { return exact_; }
  std::size_t num_types() const { return weights_.size(); }

  // Floating path.
  const std::vector<double>& weights() const { return weights_; }
  double threshold() const { return threshold_; }
  bool strict() const { return strict_; }
  bool crosses(double partial_sum) const {
    return strict_ ? partial_sum > threshold_ : partial_sum >= threshold_;
  }

  // Exact path: propagates iff sum_t x_t int_weights[t] >= int_threshold.
  const std::vector<BigInt>& int_weights() const { return int_weights_; }
  const BigInt& int_threshold() const { return int_threshold_; }

  bool propagates(std::span<const std::uint32_t> x) const;

 private:
  bool exact_ = false;
  bool strict_ = false;
  std::vector<double> weights_;
  double threshold_ = 1.0;
  std::vector<BigInt> int_weights_;
  BigInt int_threshold_;
};

}  // namespace evopoisson::detail
