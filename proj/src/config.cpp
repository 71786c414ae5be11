#include "evopoisson/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "evopoisson/errors.hpp"

namespace evopoisson {
namespace {

using nlohmann::json;

Rate parse_rate(const json& node, const std::string& where) {
  if (node.is_number_integer()) return Rate::exact(node.get<std::int64_t>(), 1);
  if (node.is_number()) {
    // Shortest round-trip digits recover the literal the user wrote.
    const double v = node.get<double>();
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    try {
      return Rate::exact(Fraction::parse_decimal(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf))));
    } catch (const Error&) {
      return Rate::approx(v);
    }
  }
  if (node.is_object()) {
    if (!node.contains("num") || !node.contains("den") || !node["num"].is_number_integer() ||
        !node["den"].is_number_integer()) {
      throw ConfigError(where + ": rational rates need integer 'num' and 'den'");
    }
    const auto den = node["den"].get<std::int64_t>();
    if (den == 0) throw ConfigError(where + ": zero denominator");
    return Rate::exact(node["num"].get<std::int64_t>(), den);
  }
  throw ConfigError(where + ": expected a number or {num, den}");
}

double parse_real(const json& node, const std::string& where) {
  if (node.is_number()) return node.get<double>();
  if (node.is_object()) return parse_rate(node, where).value();
  throw ConfigError(where + ": expected a number");
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  return obj.at(key);
}

json rate_to_json(const Rate& r) {
  if (r.is_exact()) return json{{"num", r.fraction()->num}, {"den", r.fraction()->den}};
  return r.value();
}

}  // namespace

Convention parse_convention(std::string_view name) {
  if (name == "literal" || name == "LITERAL_EQ2") return Convention::kLiteralEq2;
  if (name == "exclusive" || name == "SELF_EXCLUSIVE") return Convention::kSelfExclusive;
  throw ConfigError("unknown convention '" + std::string(name) + "' (expected literal or exclusive)");
}

PopulationModel parse_model(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed model JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("model JSON must be an object");

  ModelParams p;
  p.lambda = parse_real(require(doc, "lambda", "model"), "lambda");
  p.infection_cost = parse_real(require(doc, "K", "model"), "K");
  p.protection_cost = parse_real(require(doc, "C", "model"), "C");
  p.beta = doc.contains("beta") ? parse_rate(doc["beta"], "beta") : Rate::exact(1, 1);
  if (doc.contains("convention")) {
    if (!doc["convention"].is_string()) throw ConfigError("convention must be a string");
    p.convention = parse_convention(doc["convention"].get<std::string>());
  }

  const json& types = require(doc, "types", "model");
  if (!types.is_array() || types.empty()) throw ConfigError("'types' must be a non-empty array");
  for (std::size_t i = 0; i < types.size(); ++i) {
    const std::string where = "types[" + std::to_string(i) + "]";
    const json& t = types[i];
    if (!t.is_object()) throw ConfigError(where + ": expected an object");
    p.type_dist.push_back(parse_real(require(t, "r", where), where + ".r"));
    if (t.contains("delta") == t.contains("tau")) {
      throw ConfigError(where + ": give exactly one of 'delta' or 'tau'");
    }
    if (t.contains("delta")) {
      p.recovery_rates.push_back(parse_rate(t["delta"], where + ".delta"));
    } else {
      const Rate tau = parse_rate(t["tau"], where + ".tau");
      if (!(tau.value() > 0)) throw ConfigError(where + ".tau must be > 0");
      p.recovery_rates.push_back(p.beta / tau);
    }
  }

  try {
    return PopulationModel(std::move(p));
  } catch (const InvalidParameter& e) {
    throw ConfigError(std::string("invalid model: ") + e.what());
  }
}

PopulationModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

std::string model_to_json(const PopulationModel& model) {
  json doc;
  doc["lambda"] = model.lambda();
  doc["K"] = model.infection_cost();
  doc["C"] = model.protection_cost();
  doc["beta"] = rate_to_json(model.beta());
  doc["convention"] = to_string(model.convention());
  json types = json::array();
  for (std::size_t t = 0; t < model.num_types(); ++t) {
    types.push_back({{"r", model.type_dist()[t]}, {"delta", rate_to_json(model.recovery_rates()[t])}});
  }
  doc["types"] = std::move(types);
  return doc.dump(2);
}

}  // namespace evopoisson
