#include "evopoisson/lambert_w.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "evopoisson/errors.hpp"

namespace evopoisson {
namespace {

constexpr double kInvE = 1.0 / std::numbers::e;
constexpr double kBranchTolerance = 1e-15;

}  // namespace

double lambert_w_minus1(double z) {
  if (!(z < 0.0) || z < -kInvE - kBranchTolerance || !std::isfinite(z)) {
    throw DomainError("W_{-1} is defined on [-1/e, 0), got " + std::to_string(z));
  }
  // Within a couple of ulps of -1/e the rounding of the constant dominates.
  if (z <= -kInvE * (1.0 - 4.0 * std::numeric_limits<double>::epsilon())) return -1.0;
  const double q = std::max(0.0, std::fma(std::numbers::e, z, 1.0));  // scaled distance to the branch point

  double w;
  if (q < 0.3) {
    // Series about the branch point in p = -sqrt(2 (e z + 1)).
    const double p = -std::sqrt(2.0 * q);
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))));
  } else {
    const double l1 = std::log(-z);
    w = l1 - std::log(-l1);
  }

  // Halley iteration on f(w) = w e^w - z.
  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    const double next = w - step;
    if (!std::isfinite(next)) break;
    // Stay on the lower branch.
    w = next > -1.0 ? 0.5 * (w - 1.0) : next;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(w)) break;
  }
  return w;
}

}  // namespace evopoisson
