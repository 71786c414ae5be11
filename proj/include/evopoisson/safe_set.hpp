#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "evopoisson/population_model.hpp"

namespace evopoisson {

inline constexpr std::size_t kDefaultSafeSetCap = 10'000'000;

/// Reads EVOPOISSON_SAFESET_CAP, falling back to kDefaultSafeSetCap.
std::size_t safe_set_cap_from_env();

/// Identifies the parameters a safe set depends on (rates, type mix, convention).
std::uint64_t safe_set_fingerprint(const PopulationModel& model);

/// All outcome vectors that do not propagate, plus coefficients grouped by
/// total count: coeffs()[n] = sum over points with |x| = n of prod_t r_t^x_t / x_t!.
class SafeSet {
 public:
  SafeSet(std::size_t num_types, std::vector<std::uint32_t> flat_points,
          std::vector<double> coeffs, std::uint64_t fingerprint);

  std::size_t size() const { return num_types_ == 0 ? 0 : flat_.size() / num_types_; }
  std::size_t num_types() const { return num_types_; }
  std::span<const std::uint32_t> point(std::size_t i) const {
    return {flat_.data() + i * num_types_, num_types_};
  }
  const std::vector<double>& coeffs() const { return coeffs_; }
  std::size_t max_total() const { return coeffs_.size() - 1; }
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  std::size_t num_types_;
  std::vector<std::uint32_t> flat_;
  std::vector<double> coeffs_;
  std::uint64_t fingerprint_;
};

/// Depth-first enumeration of {x : !propagates(model, x)} in lexicographic order.
/// Throws ResourceLimit once more than `cap` points are found.
SafeSet enumerate_safe_set(const PopulationModel& model, std::size_t cap = safe_set_cap_from_env());

}  // namespace evopoisson
