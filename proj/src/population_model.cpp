#include "evopoisson/population_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "evopoisson/errors.hpp"
#include "propagation_rule.hpp"

namespace evopoisson {
namespace {

void validate(const ModelParams& p) {
  if (!(std::isfinite(p.lambda) && p.lambda > 0)) throw InvalidParameter("lambda must be finite and > 0");
  if (p.type_dist.empty()) throw InvalidParameter("at least one player type is required");
  if (p.type_dist.size() != p.recovery_rates.size()) {
    throw InvalidParameter("type distribution and recovery rates differ in length");
  }
  double total = 0.0;
  for (double r : p.type_dist) {
    if (!(std::isfinite(r) && r >= 0)) throw InvalidParameter("type probabilities must be >= 0");
    total += r;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidParameter("type distribution sums to " + std::to_string(total) + ", expected 1");
  }
  if (!(std::isfinite(p.beta.value()) && p.beta.value() > 0)) throw InvalidParameter("beta must be > 0");
  for (const Rate& d : p.recovery_rates) {
    if (!(std::isfinite(d.value()) && d.value() > 0)) throw InvalidParameter("recovery rates must be > 0");
  }
  if (!(std::isfinite(p.infection_cost) && p.infection_cost > 0)) throw InvalidParameter("K must be > 0");
  if (!(std::isfinite(p.protection_cost) && p.protection_cost >= 0)) throw InvalidParameter("C must be >= 0");
}

}  // namespace

const char* to_string(Convention c) {
  switch (c) {
    case Convention::kLiteralEq2:
      return "literal";
    case Convention::kSelfExclusive:
      return "exclusive";
  }
  return "?";
}

PopulationModel::PopulationModel(ModelParams params) : params_(std::move(params)) {
  validate(params_);
  convention_ = params_.convention.value_or(params_.type_dist.size() == 1 ? Convention::kSelfExclusive
                                                                           : Convention::kLiteralEq2);
  taus_.reserve(params_.recovery_rates.size());
  for (const Rate& d : params_.recovery_rates) {
    Rate tau = params_.beta / d;
    if (!(std::isfinite(tau.value()) && tau.value() > 0)) {
      throw InvalidParameter("effective spreading rate must be finite and > 0");
    }
    taus_.push_back(tau);
  }
}

PopulationModel PopulationModel::from_taus(double lambda, std::vector<double> type_dist,
                                           const std::vector<Rate>& taus, double infection_cost,
                                           double protection_cost, std::optional<Convention> convention) {
  ModelParams p;
  p.lambda = lambda;
  p.type_dist = std::move(type_dist);
  p.beta = Rate::exact(1, 1);
  for (const Rate& tau : taus) {
    if (!(tau.value() > 0)) throw InvalidParameter("tau must be > 0");
    p.recovery_rates.push_back(Rate::exact(1, 1) / tau);
  }
  p.infection_cost = infection_cost;
  p.protection_cost = protection_cost;
  p.convention = convention;
  return PopulationModel(std::move(p));
}

bool PopulationModel::all_rates_exact() const {
  return params_.beta.is_exact() &&
         std::all_of(params_.recovery_rates.begin(), params_.recovery_rates.end(),
                     [](const Rate& r) { return r.is_exact(); });
}

PopulationModel PopulationModel::with_protection_cost(double c) const {
  ModelParams p = params_;
  p.protection_cost = c;
  p.convention = convention_;
  return PopulationModel(std::move(p));
}

PopulationModel PopulationModel::with_lambda(double lambda) const {
  ModelParams p = params_;
  p.lambda = lambda;
  p.convention = convention_;
  return PopulationModel(std::move(p));
}

PopulationModel PopulationModel::with_convention(Convention c) const {
  ModelParams p = params_;
  p.convention = c;
  return PopulationModel(std::move(p));
}

std::vector<double> effective_rates(const PopulationModel& model) {
  std::vector<double> out;
  out.reserve(model.num_types());
  for (const Rate& t : model.taus()) out.push_back(t.value());
  return out;
}

bool propagates(const PopulationModel& model, std::span<const std::uint32_t> x) {
  if (x.size() != model.num_types()) throw InvalidParameter("outcome vector has wrong number of types");
  return detail::PropagationRule(model).propagates(x);
}

double critical_threshold_homogeneous(std::int64_t x) {
  if (x <= 1) throw DomainError("critical threshold needs at least two unprotected nodes");
  return 1.0 / static_cast<double>(x - 1);
}

namespace detail {

PropagationRule::PropagationRule(const PopulationModel& model) {
  const auto& taus = model.taus();
  const bool self_exclusive = model.convention() == Convention::kSelfExclusive;

  weights_.reserve(taus.size());
  for (const Rate& tau : taus) weights_.push_back(tau.value() / (1.0 + tau.value()));
  if (self_exclusive) {
    threshold_ = 1.0 - *std::max_element(weights_.begin(), weights_.end());
    strict_ = true;
  } else {
    threshold_ = 1.0;
    strict_ = false;
  }

  exact_ = model.all_rates_exact();
  if (!exact_) return;

  // w_t = beta/(beta + delta_t) = bn*dd / (bn*dd + dn*bd)
  const Fraction beta = *model.beta().fraction();
  std::vector<BigInt> nums;
  std::vector<BigInt> dens;
  BigInt common = 1;
  for (const Rate& d : model.recovery_rates()) {
    const Fraction delta = *d.fraction();
    BigInt num = BigInt(beta.num) * delta.den;
    BigInt den = num + BigInt(delta.num) * beta.den;
    BigInt g = boost::multiprecision::gcd(num, den);
    num /= g;
    den /= g;
    common = boost::multiprecision::lcm(common, den);
    nums.push_back(num);
    dens.push_back(den);
  }
  int_weights_.reserve(nums.size());
  BigInt max_weight = 0;
  for (std::size_t t = 0; t < nums.size(); ++t) {
    int_weights_.push_back(nums[t] * (common / dens[t]));
    max_weight = std::max(max_weight, int_weights_.back());
  }
  // Literal: propagate iff sum >= D. Self-exclusive: safe iff sum <= D - max a.
  int_threshold_ = self_exclusive ? common - max_weight + 1 : common;
}

bool PropagationRule::propagates(std::span<const std::uint32_t> x) const {
  if (exact_) {
    BigInt sum = 0;
    for (std::size_t t = 0; t < x.size(); ++t) sum += int_weights_[t] * x[t];
    return sum >= int_threshold_;
  }
  double sum = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) sum += static_cast<double>(x[t]) * weights_[t];
  return crosses(sum);
}

}  // namespace detail
}  // namespace evopoisson
