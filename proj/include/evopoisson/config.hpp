#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "evopoisson/population_model.hpp"

namespace evopoisson {

/// Parses a model document:
///
///   {"lambda": 10, "beta": 5, "K": 5, "C": 4, "convention": "literal",
///    "types": [{"r": 0.1, "delta": 100}, {"r": 0.9, "delta": {"num": 25, "den": 1}}]}
///
/// Rates are decimals or {"num", "den"} integer pairs; pairs make the
/// propagation boundary exact. A type may give "tau" instead of "delta"
/// (then delta = beta / tau). "beta" defaults to 1 and "convention" to the
/// type-count default. Throws ConfigError with a readable diagnostic.
PopulationModel parse_model(std::string_view json_text);
PopulationModel load_model(const std::filesystem::path& path);

Convention parse_convention(std::string_view name);

/// Inverse of parse_model; rates that are exact are written as pairs.
std::string model_to_json(const PopulationModel& model);

}  // namespace evopoisson
