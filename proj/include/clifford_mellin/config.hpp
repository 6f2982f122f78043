#pragma once

// Run configuration shared by the command-line subcommands, with a canonical
// JSON form: parse_config(emit_config(c)) == c.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "clifford_mellin/algebra.hpp"
#include "clifford_mellin/errors.hpp"
#include "clifford_mellin/roots.hpp"
#include "clifford_mellin/signal.hpp"

namespace clifford_mellin {

inline constexpr double kDefaultTolerance = 1e-10;

/// Roots used when none are given: blade-like in every algebra, so the
/// isometry theorems apply. Only Cl(0,2) has a non-degenerate blade-like pair.
inline std::array<std::array<double, 4>, 2> default_roots(Signature sig) {
  if (sig == Signature::cl20()) return {{{0, 0, 0, 1}, {0, 0, 0, 1}}};
  if (sig == Signature::cl11()) return {{{0, 0, 1, 0}, {0, 0, 1, 0}}};
  return {{{0, 1, 0, 0}, {0, 0, 1, 0}}};
}

struct RunConfig {
  std::string command;
  std::string algebra = "Cl(0,2)";
  std::array<double, 4> f{0.0, 1.0, 0.0, 0.0};
  std::array<double, 4> g{0.0, 0.0, 1.0, 0.0};
  GridGeometry geometry;
  std::vector<std::string> inputs;
  std::string output;
  std::uint64_t seed = 1;
  double tolerance = kDefaultTolerance;
  /// Subcommand-specific switches and values, e.g. {"resolution": 8}.
  std::map<std::string, nlohmann::json> options;

  Signature signature() const { return parse_signature(algebra); }

  RootPair pair() const {
    const Signature sig = signature();
    return RootPair::from(Multivector(sig, f), Multivector(sig, g));
  }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline nlohmann::json to_json_value(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = c.command;
  j["algebra"] = c.algebra;
  j["f"] = c.f;
  j["g"] = c.g;
  j["geometry"] = {{"ns", c.geometry.ns},
                   {"ntheta", c.geometry.ntheta},
                   {"smin", c.geometry.smin},
                   {"smax", c.geometry.smax}};
  j["inputs"] = c.inputs;
  j["output"] = c.output;
  j["seed"] = c.seed;
  j["tolerance"] = c.tolerance;
  j["options"] = nlohmann::json::object();
  for (const auto& [key, value] : c.options) j["options"][key] = value;
  return j;
}

/// Keys sorted, two-space indent, doubles in shortest round-trip form.
inline std::string emit_config(const RunConfig& c) {
  return to_json_value(c).dump(2) + "\n";
}

inline RunConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what(),
                     e.byte);
  }
  RunConfig c;
  try {
    c.command = j.at("command").get<std::string>();
    c.algebra = j.at("algebra").get<std::string>();
    c.f = j.at("f").get<std::array<double, 4>>();
    c.g = j.at("g").get<std::array<double, 4>>();
    const auto& geo = j.at("geometry");
    c.geometry.ns = geo.at("ns").get<std::size_t>();
    c.geometry.ntheta = geo.at("ntheta").get<std::size_t>();
    c.geometry.smin = geo.at("smin").get<double>();
    c.geometry.smax = geo.at("smax").get<double>();
    c.inputs = j.at("inputs").get<std::vector<std::string>>();
    c.output = j.at("output").get<std::string>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.tolerance = j.at("tolerance").get<double>();
    for (const auto& [key, value] : j.at("options").items()) {
      c.options[key] = value;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config field error: ") + e.what(), 0);
  }
  return c;
}

}  // namespace clifford_mellin
