#include "evopoisson/safe_set.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>

#include "evopoisson/errors.hpp"
#include "propagation_rule.hpp"

namespace evopoisson {
namespace {

using detail::PropagationRule;

/// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

template <class Sum, class Crosses>
class Enumerator {
 public:
  Enumerator(std::vector<Sum> weights, Crosses crosses, std::size_t cap)
      : weights_(std::move(weights)), crosses_(crosses), cap_(cap), current_(weights_.size(), 0) {}

  std::vector<std::uint32_t> run() {
    descend(0, Sum(0));
    return std::move(flat_);
  }

 private:
  void descend(std::size_t t, Sum partial) {
    if (t == weights_.size()) {
      if (++count_ > cap_) {
        throw ResourceLimit("safe set exceeds " + std::to_string(cap_) +
                            " points (raise EVOPOISSON_SAFESET_CAP or increase rates)");
      }
      flat_.insert(flat_.end(), current_.begin(), current_.end());
      return;
    }
    for (std::uint32_t x = 0;; ++x) {
      Sum next = partial + weights_[t] * static_cast<Sum>(x);
      if (crosses_(next)) break;
      current_[t] = x;
      descend(t + 1, partial + weights_[t] * static_cast<Sum>(x));
    }
    current_[t] = 0;
  }

  std::vector<Sum> weights_;
  Crosses crosses_;
  std::size_t cap_;
  std::size_t count_ = 0;
  std::vector<std::uint32_t> current_;
  std::vector<std::uint32_t> flat_;
};

template <class Sum, class Crosses>
std::vector<std::uint32_t> enumerate_with(std::vector<Sum> weights, Crosses crosses, std::size_t cap) {
  return Enumerator<Sum, Crosses>(std::move(weights), crosses, cap).run();
}

std::vector<std::uint32_t> enumerate_points(const PropagationRule& rule, std::size_t cap) {
  if (!rule.exact()) {
    return enumerate_with(rule.weights(), [&rule](double s) { return rule.crosses(s); }, cap);
  }
  using BigInt = PropagationRule::BigInt;
  // Partial sums stay below threshold + max weight, so 62-bit operands cannot overflow.
  const BigInt limit = BigInt(1) << 61;
  bool fits = rule.int_threshold() < limit;
  for (const BigInt& w : rule.int_weights()) fits = fits && w < limit;
  if (fits) {
    std::vector<std::int64_t> weights;
    for (const BigInt& w : rule.int_weights()) weights.push_back(static_cast<std::int64_t>(w));
    const auto threshold = static_cast<std::int64_t>(rule.int_threshold());
    return enumerate_with(std::move(weights), [threshold](std::int64_t s) { return s >= threshold; }, cap);
  }
  const BigInt threshold = rule.int_threshold();
  return enumerate_with(rule.int_weights(), [&threshold](const BigInt& s) { return s >= threshold; }, cap);
}

void mix(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
}

template <class T>
void mix_value(std::uint64_t& h, const T& v) {
  mix(h, &v, sizeof(v));
}

}  // namespace

std::size_t safe_set_cap_from_env() {
  const char* raw = std::getenv("EVOPOISSON_SAFESET_CAP");
  if (raw == nullptr || *raw == '\0') return kDefaultSafeSetCap;
  std::size_t value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc() || ptr != end || value == 0) {
    throw InvalidParameter(std::string("EVOPOISSON_SAFESET_CAP is not a positive integer: ") + raw);
  }
  return value;
}

std::uint64_t safe_set_fingerprint(const PopulationModel& model) {
  std::uint64_t h = 14695981039346656037ULL;
  mix_value(h, static_cast<int>(model.convention()));
  mix_value(h, model.num_types());
  for (const Rate& tau : model.taus()) {
    if (tau.is_exact()) {
      mix_value(h, tau.fraction()->num);
      mix_value(h, tau.fraction()->den);
    } else {
      mix_value(h, tau.value());
    }
  }
  for (double r : model.type_dist()) mix_value(h, r);
  return h;
}

SafeSet::SafeSet(std::size_t num_types, std::vector<std::uint32_t> flat_points, std::vector<double> coeffs,
                 std::uint64_t fingerprint)
    : num_types_(num_types), flat_(std::move(flat_points)), coeffs_(std::move(coeffs)), fingerprint_(fingerprint) {
  if (coeffs_.empty()) throw InvalidParameter("safe set needs at least the zero vector");
}

SafeSet enumerate_safe_set(const PopulationModel& model, std::size_t cap) {
  const PropagationRule rule(model);
  std::vector<std::uint32_t> flat = enumerate_points(rule, cap);

  const std::size_t types = model.num_types();
  const auto& r = model.type_dist();
  std::vector<double> log_r(types);
  for (std::size_t t = 0; t < types; ++t) {
    log_r[t] = r[t] > 0 ? std::log(r[t]) : -std::numeric_limits<double>::infinity();
  }

  std::vector<CompensatedSum> sums;
  for (std::size_t offset = 0; offset < flat.size(); offset += types) {
    std::size_t total = 0;
    double log_term = 0.0;
    bool zero = false;
    for (std::size_t t = 0; t < types; ++t) {
      const std::uint32_t x = flat[offset + t];
      total += x;
      if (x == 0) continue;
      if (r[t] <= 0) {
        zero = true;
        continue;
      }
      log_term += x * log_r[t] - std::lgamma(x + 1.0);
    }
    if (sums.size() <= total) sums.resize(total + 1);
    if (!zero) sums[total].add(std::exp(log_term));
  }

  std::vector<double> coeffs(sums.size());
  for (std::size_t n = 0; n < sums.size(); ++n) coeffs[n] = sums[n].value();
  return SafeSet(types, std::move(flat), std::move(coeffs), safe_set_fingerprint(model));
}

}  // namespace evopoisson
