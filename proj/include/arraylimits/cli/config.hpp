// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "arraylimits/error.hpp"
#include "arraylimits/geometry.hpp"
#include "json.hpp"

namespace arraylimits::cli {

enum class Format { csv, json, svg };

// Every setting of a run. Phases (gamma) are radians; directions (theta,
// phi, scan angles) are degrees.
struct RunConfig {
  std::string command;
  int m = 8;
  int n = 8;
  double dx = 0.5;
  double dy = 0.5;
  double dz = 0.5;
  int layers = 2;
  double wavelength = 1.0;
  double offset_x = 0.0;
  double offset_y = 0.0;
  std::optional<double> threshold;
  double gamma = kPi / 2;
  double theta1 = 0.0;
  double theta2 = 90.0;
  double phi1 = 0.0;
  double phi2 = 90.0;
  int panels = 256;
  int nodes = 4;
  std::string plane = "xz";
  std::string pattern = "cosine_theta";
  std::vector<double> angles{0, 10, 20, 30, 40, 50, 60, 70, 80, 90};
  int grid = 64;
  int support = 3;
  int fields = 1;
  std::uint64_t seed = 1;
  std::string out;  // empty: standard output
  std::optional<Format> format;

  ArrayLattice2D lattice() const { return {m, n, dx, dy, wavelength}; }
  Stack3D stack() const { return {lattice(), dz, layers, {offset_x, offset_y}}; }
  QuadratureSpec quad() const { return {panels, nodes}; }

  Format resolved_format() const {
    if (format) return *format;
    const auto ends_with = [&](const char* ext) {
      const std::string e(ext);
      return out.size() >= e.size() && out.compare(out.size() - e.size(), e.size(), e) == 0;
    };
    if (ends_with(".json")) return Format::json;
    if (ends_with(".svg")) return Format::svg;
    return Format::csv;
  }
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"efficiency2d", "efficiency3d",  "gain",
                                              "feasible-region", "codebook", "volume",
                                              "scan-sweep", "intensity-map", "parseval-check"};
  return names;
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  T value{};
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || s.empty())
    throw ConfigError("invalid value for '" + key + "': '" + text + "'");
  return value;
}

inline std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse_number<double>(key, item));
  }
  if (out.empty()) throw ConfigError("'" + key + "' needs at least one value");
  return out;
}

inline std::string join_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

}  // namespace detail

using KeyValues = std::map<std::string, std::string>;

// Builds a config from key/value pairs. Unknown keys are rejected.
inline RunConfig config_from_kv(const KeyValues& kv) {
  using detail::parse_number;
  RunConfig c;
  for (const auto& [key, value] : kv) {
    if (key == "command") c.command = detail::trim(value);
    else if (key == "m") c.m = parse_number<int>(key, value);
    else if (key == "n") c.n = parse_number<int>(key, value);
    else if (key == "dx") c.dx = parse_number<double>(key, value);
    else if (key == "dy") c.dy = parse_number<double>(key, value);
    else if (key == "dz") c.dz = parse_number<double>(key, value);
    else if (key == "layers") c.layers = parse_number<int>(key, value);
    else if (key == "wavelength") c.wavelength = parse_number<double>(key, value);
    else if (key == "offset_x") c.offset_x = parse_number<double>(key, value);
    else if (key == "offset_y") c.offset_y = parse_number<double>(key, value);
    else if (key == "threshold") c.threshold = parse_number<double>(key, value);
    else if (key == "gamma") c.gamma = parse_number<double>(key, value);
    else if (key == "theta1") c.theta1 = parse_number<double>(key, value);
    else if (key == "theta2") c.theta2 = parse_number<double>(key, value);
    else if (key == "phi1") c.phi1 = parse_number<double>(key, value);
    else if (key == "phi2") c.phi2 = parse_number<double>(key, value);
    else if (key == "panels") c.panels = parse_number<int>(key, value);
    else if (key == "nodes") c.nodes = parse_number<int>(key, value);
    else if (key == "plane") c.plane = detail::trim(value);
    else if (key == "pattern") c.pattern = detail::trim(value);
    else if (key == "angles") c.angles = detail::parse_list(key, value);
    else if (key == "grid") c.grid = parse_number<int>(key, value);
    else if (key == "support") c.support = parse_number<int>(key, value);
    else if (key == "fields") c.fields = parse_number<int>(key, value);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "out") c.out = detail::trim(value);
    else if (key == "format") {
      const std::string f = detail::trim(value);
      if (f == "csv") c.format = Format::csv;
      else if (f == "json") c.format = Format::json;
      else if (f == "svg") c.format = Format::svg;
      else throw ConfigError("format must be csv, json or svg");
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return c;
}

// Range checks that do not depend on the command's numerics.
inline void validate_config(const RunConfig& c) {
  bool known = false;
  for (const auto& name : command_names()) known = known || name == c.command;
  if (!known) throw ConfigError("unknown or missing command '" + c.command + "'");
  if (c.m < 1 || c.n < 1) throw ConfigError("m and n must be >= 1");
  if (!(c.dx > 0) || !(c.dy > 0) || !(c.dz > 0) || !(c.wavelength > 0))
    throw ConfigError("spacings and wavelength must be positive");
  if (c.layers < 1) throw ConfigError("layers must be >= 1");
  if (c.threshold && !(*c.threshold >= 0.0 && *c.threshold <= 2.0))
    throw ConfigError("threshold must lie in [0, 2]");
  if (c.panels < 1 || c.nodes < 1) throw ConfigError("panels and nodes must be >= 1");
  if (c.plane != "xz" && c.plane != "yz") throw ConfigError("plane must be xz or yz");
  if (c.pattern != "isotropic" && c.pattern != "cosine_theta")
    throw ConfigError("pattern must be isotropic or cosine_theta");
  if (c.grid < 2 || c.grid > 4096) throw ConfigError("grid must lie in [2, 4096]");
  if (c.support < 0 || c.fields < 1) throw ConfigError("support must be >= 0 and fields >= 1");
}

// Settings that determine the result, as written into JSON outputs. Output
// location and format are left out so a re-run can target another file.
inline KeyValues config_to_kv(const RunConfig& c) {
  KeyValues kv{{"command", c.command},
               {"m", std::to_string(c.m)},
               {"n", std::to_string(c.n)},
               {"dx", format_double(c.dx)},
               {"dy", format_double(c.dy)},
               {"dz", format_double(c.dz)},
               {"layers", std::to_string(c.layers)},
               {"wavelength", format_double(c.wavelength)},
               {"offset_x", format_double(c.offset_x)},
               {"offset_y", format_double(c.offset_y)},
               {"gamma", format_double(c.gamma)},
               {"theta1", format_double(c.theta1)},
               {"theta2", format_double(c.theta2)},
               {"phi1", format_double(c.phi1)},
               {"phi2", format_double(c.phi2)},
               {"panels", std::to_string(c.panels)},
               {"nodes", std::to_string(c.nodes)},
               {"plane", c.plane},
               {"pattern", c.pattern},
               {"angles", detail::join_list(c.angles)},
               {"grid", std::to_string(c.grid)},
               {"support", std::to_string(c.support)},
               {"fields", std::to_string(c.fields)},
               {"seed", std::to_string(c.seed)}};
  if (c.threshold) kv["threshold"] = format_double(*c.threshold);
  return kv;
}

// key = value lines; '#' starts a comment.
inline KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    kv[detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
  }
  return kv;
}

// A JSON output of a previous run: its "config" object is the run's settings.
inline KeyValues key_values_from_json(const nlohmann::json& doc) {
  const nlohmann::json& cfg = doc.contains("config") ? doc.at("config") : doc;
  if (!cfg.is_object()) throw ConfigError("JSON config must be an object");
  KeyValues kv;
  for (const auto& [key, value] : cfg.items()) kv[key] = value.is_string() ? value.get<std::string>() : value.dump();
  return kv;
}

inline KeyValues load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return key_values_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("invalid JSON config: ") + e.what());
    }
  }
  std::istringstream lines(text);
  return parse_key_values(lines);
}

}  // namespace arraylimits::cli
