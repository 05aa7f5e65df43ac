// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Settings come from an optional config file
// (key = value lines, or the JSON output of an earlier run) and flags; flags win.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "arraylimits/cli/commands.hpp"

namespace {

constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

int fail(int code, const std::string& kind, const std::string& message) {
  std::cerr << "error: " << kind << ": " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = arraylimits::cli;
  CLI::App app{"Efficiency, gain and feasible-region limits of planar and stacked antenna arrays"};
  app.set_version_flag("--version", arraylimits::kVersion);

  std::string config_path;
  app.add_option("--config", config_path, "config file: key = value lines or a previous JSON output");

  // Every remaining flag maps one-to-one onto a config key.
  const std::map<std::string, std::string> flags{
      {"command", "efficiency2d | efficiency3d | gain | feasible-region | codebook | volume | scan-sweep | "
                  "intensity-map | parseval-check"},
      {"m", "elements along x"},
      {"n", "elements along y"},
      {"dx", "x spacing in wavelengths"},
      {"dy", "y spacing in wavelengths"},
      {"dz", "layer spacing in wavelengths"},
      {"layers", "number of layers"},
      {"wavelength", "reference wavelength (labels only)"},
      {"offset_x", "x stagger of odd layers in wavelengths"},
      {"offset_y", "y stagger of odd layers in wavelengths"},
      {"threshold", "combining threshold t in [0, 2]"},
      {"gamma", "inter-layer phase step in radians"},
      {"theta1", "region polar start in degrees"},
      {"theta2", "region polar end in degrees"},
      {"phi1", "region azimuth start in degrees"},
      {"phi2", "region azimuth end in degrees"},
      {"panels", "quadrature panels per axis"},
      {"nodes", "Gauss-Legendre nodes per panel"},
      {"plane", "scan plane: xz or yz"},
      {"pattern", "element pattern: isotropic or cosine_theta"},
      {"angles", "comma-separated scan angles in degrees"},
      {"grid", "phase-grid cells per axis"},
      {"support", "coupling support |p|, |q| <= support"},
      {"fields", "number of random field pairs"},
      {"seed", "random seed"},
      {"out", "output path (default: standard output)"},
      {"format", "csv, json or svg (default: from the output extension)"}};
  std::map<std::string, std::optional<std::string>> values;
  for (const auto& [key, help] : flags) values[key];
  for (const auto& [key, help] : flags) app.add_option("--" + key, values[key], help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    cli::KeyValues kv;
    if (!config_path.empty()) kv = cli::load_config_file(config_path);
    for (const auto& [key, value] : values)
      if (value) kv[key] = *value;
    cli::run(cli::config_from_kv(kv));
  } catch (const arraylimits::ConfigError& e) {
    return fail(kExitUsage, "config", e.what());
  } catch (const arraylimits::DomainError& e) {
    return fail(kExitNumeric, "domain", e.what());
  } catch (const arraylimits::QuadratureError& e) {
    return fail(kExitNumeric, "quadrature", e.what());
  } catch (const std::exception& e) {
    return fail(kExitNumeric, "internal", e.what());
  }
  return 0;
}
