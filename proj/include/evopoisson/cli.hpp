#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "evopoisson/population_model.hpp"
#include "evopoisson/rate.hpp"

namespace evopoisson::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kIoError = 3, kNumericalError = 4 };

/// Runs the command-line front end; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Caption parameters of figures 2-6 (figure 4's model also serves as the
/// default for the other subcommands).
PopulationModel figure_model(int which);

/// Sets one named parameter: lambda, C, K, beta, r (share of type 1, the
/// others rescaled), tau<i> or delta<i> (1-based type index).
PopulationModel set_parameter(const PopulationModel& model, std::string_view name, Fraction value);

struct SweepAxis {
  std::string name;
  std::vector<Fraction> values;
};

/// "name=lo:hi:count" with exact decimal endpoints; count evenly spaced values.
SweepAxis parse_sweep_axis(std::string_view spec);

}  // namespace evopoisson::cli
