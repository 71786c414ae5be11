#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace evopoisson {

enum class ScheduleFamily { kInvN, kInvNLogN, kInvNSq, kConstant };

/// Analytic properties of a step-size family (indices start at n = 1).
struct ScheduleFlags {
  bool sums_to_infinity = false;
  bool square_summable = false;
  /// n a(n) -> 0, i.e. the steps vanish faster than 1/n. Not applicable when
  /// the steps are already summable.
  std::optional<bool> slower_than_inv_n;

  bool valid_for_replicator() const { return sums_to_infinity && square_summable; }
  bool valid_for_controller() const {
    return sums_to_infinity && square_summable && slower_than_inv_n.value_or(false);
  }
};

/// Step-size family b(n) / a(n): 1/n, 1/(1 + n log n), 1/n^2 or a constant h.
class StepSchedule {
 public:
  static StepSchedule inv_n() { return StepSchedule(ScheduleFamily::kInvN, 0.0); }
  static StepSchedule inv_n_log_n() { return StepSchedule(ScheduleFamily::kInvNLogN, 0.0); }
  static StepSchedule inv_n_sq() { return StepSchedule(ScheduleFamily::kInvNSq, 0.0); }
  static StepSchedule constant(double h);
  /// Accepts "inv_n", "inv_n_log_n", "inv_n_sq" or "const:<h>".
  static StepSchedule parse(std::string_view name);

  ScheduleFamily family() const { return family_; }
  double constant_step() const { return h_; }

  /// Step size at iteration n >= 1.
  double operator()(std::int64_t n) const;

  std::string name() const;

 private:
  StepSchedule(ScheduleFamily family, double h) : family_(family), h_(h) {}
  ScheduleFamily family_;
  double h_;
};

/// Returns the known flag triple for the schedule's family.
ScheduleFlags validate_schedule(const StepSchedule& schedule);

}  // namespace evopoisson
