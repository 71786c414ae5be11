#include "evopoisson/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evopoisson/errors.hpp"

namespace evopoisson {
namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidParameter(std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

PayoffEngine::PayoffEngine(PopulationModel model)
    : model_(std::move(model)), safe_set_(std::make_shared<const SafeSet>(enumerate_safe_set(model_))) {}

PayoffEngine::PayoffEngine(PopulationModel model, std::shared_ptr<const SafeSet> safe_set)
    : model_(std::move(model)), safe_set_(std::move(safe_set)) {
  if (!safe_set_) throw InvalidParameter("null safe set");
  if (safe_set_->fingerprint() != safe_set_fingerprint(model_)) {
    throw InvalidParameter("safe set was generated for a different model");
  }
}

PayoffEngine PayoffEngine::with_protection_cost(double c) const {
  return PayoffEngine(model_.with_protection_cost(c), safe_set_);
}

PayoffEngine PayoffEngine::with_lambda(double lambda) const {
  return PayoffEngine(model_.with_lambda(lambda), safe_set_);
}

double PayoffEngine::realized_cost_off(std::span<const std::uint32_t> x) const {
  return propagates(model_, x) ? model_.infection_cost() : 0.0;
}

double PayoffEngine::F(double p) const {
  check_probability(p, "p");
  const auto& c = safe_set_->coeffs();
  const double z = model_.lambda() * p;
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double PayoffEngine::G(double p) const {
  return (1.0 - model_.protection_cost() / model_.infection_cost()) * std::exp(model_.lambda() * p);
}

double PayoffEngine::expected_cost_off(double p) const {
  const double k = model_.infection_cost();
  const double safe_mass = std::exp(-model_.lambda() * p) * F(p);
  return std::clamp(k * (1.0 - safe_mass), 0.0, k);
}

double PayoffEngine::expected_cost_mixed(double q, double p) const {
  check_probability(q, "q");
  return q * expected_cost_off(p) + (1.0 - q) * model_.protection_cost();
}

double PayoffEngine::outcome_probability(std::span<const std::uint32_t> x, double p) const {
  check_probability(p, "p");
  if (x.size() != model_.num_types()) throw InvalidParameter("outcome vector has wrong number of types");
  const auto& r = model_.type_dist();
  double log_mass = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    const double mean = model_.lambda() * r[t] * p;
    if (x[t] == 0) {
      log_mass -= mean;
      continue;
    }
    if (mean <= 0.0) return 0.0;
    log_mass += x[t] * std::log(mean) - std::lgamma(x[t] + 1.0) - mean;
  }
  return std::exp(log_mass);
}

}  // namespace evopoisson
