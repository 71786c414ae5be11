#include "evopoisson/schedule.hpp"

#include <charconv>
#include <cmath>

#include "evopoisson/errors.hpp"

namespace evopoisson {

StepSchedule StepSchedule::constant(double h) {
  if (!(std::isfinite(h) && h > 0)) throw InvalidParameter("constant step must be finite and > 0");
  return StepSchedule(ScheduleFamily::kConstant, h);
}

StepSchedule StepSchedule::parse(std::string_view name) {
  if (name == "inv_n") return inv_n();
  if (name == "inv_n_log_n") return inv_n_log_n();
  if (name == "inv_n_sq") return inv_n_sq();
  if (name.starts_with("const:")) {
    std::string text(name.substr(6));
    try {
      std::size_t used = 0;
      double h = std::stod(text, &used);
      if (used == text.size()) return constant(h);
    } catch (const std::logic_error&) {
    }
    throw InvalidParameter("bad constant step: " + text);
  }
  throw Unsupported("unknown step schedule '" + std::string(name) + "'");
}

double StepSchedule::operator()(std::int64_t n) const {
  if (n < 1) throw InvalidParameter("step schedules are indexed from n = 1");
  const double x = static_cast<double>(n);
  switch (family_) {
    case ScheduleFamily::kInvN:
      return 1.0 / x;
    case ScheduleFamily::kInvNLogN:
      return 1.0 / (1.0 + x * std::log(x));
    case ScheduleFamily::kInvNSq:
      return 1.0 / (x * x);
    case ScheduleFamily::kConstant:
      return h_;
  }
  throw Unsupported("unknown step schedule");
}

std::string StepSchedule::name() const {
  switch (family_) {
    case ScheduleFamily::kInvN:
      return "inv_n";
    case ScheduleFamily::kInvNLogN:
      return "inv_n_log_n";
    case ScheduleFamily::kInvNSq:
      return "inv_n_sq";
    case ScheduleFamily::kConstant: {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), h_);
      return "const:" + std::string(buf, ptr);
    }
  }
  return "?";
}

ScheduleFlags validate_schedule(const StepSchedule& schedule) {
  switch (schedule.family()) {
    case ScheduleFamily::kInvN:
      return {true, true, false};
    case ScheduleFamily::kInvNLogN:
      return {true, true, true};
    case ScheduleFamily::kInvNSq:
      return {false, true, std::nullopt};
    case ScheduleFamily::kConstant:
      return {true, false, false};
  }
  throw Unsupported("unknown step schedule");
}

}  // namespace evopoisson
