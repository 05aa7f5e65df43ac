// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "arraylimits/arraylimits.hpp"
#include "arraylimits/cli/config.hpp"
#include "arraylimits/cli/output.hpp"
#include "json.hpp"

namespace arraylimits::cli {

using nlohmann::json;

// Result of one command: a summary, a table (CSV rows / JSON records) and a
// plot of the main quantity.
struct Dataset {
  json summary = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  std::string svg;
};

namespace detail {

inline double deg(double d) { return d * kPi / 180.0; }

inline std::string csv_cell(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline ElementPattern pattern_of(const RunConfig& c) {
  return {c.pattern == "isotropic" ? ElementPattern::Kind::isotropic : ElementPattern::Kind::cosine_theta};
}

inline Threshold threshold_of(const RunConfig& c) {
  if (!c.threshold) throw ConfigError("this command needs --threshold");
  return {*c.threshold};
}

inline std::vector<double> phase_axis(int count) {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[i] = kPi * (i + 0.5) / count;  // cell centres on [0, pi]
  return v;
}

inline json report_json(const EfficiencyReport& r) {
  json notes = json::array();
  for (const auto& n : r.notes) notes.push_back(n);
  return {{"eta", r.eta}, {"model", to_string(r.model)}, {"notes", notes}};
}

inline std::vector<double> sample_heat(const EfficiencyReport& r, int m, int n) {
  std::vector<double> v(static_cast<std::size_t>(m) * n, 0.0);
  for (const auto& c : r.breakdown) v[static_cast<std::size_t>(c.n) * m + c.m] += c.reflection;
  return v;
}

inline Dataset efficiency2d(const RunConfig& c) {
  const auto lat = c.lattice();
  const auto rep = eta_finite_2d(lat, c.quad());
  Dataset d;
  d.summary["finite"] = report_json(rep);
  d.summary["eta_finite_2d"] = rep.eta;
  if (lat.grating_lobe_free()) d.summary["eta_infinite_2d"] = eta_infinite_2d(lat);
  d.summary["feasible_fraction"] = feasible_fraction_numerical(lat, c.quad());
  d.columns = {"m", "n", "alpha", "beta", "feasible", "reflection", "contribution"};
  for (const auto& s : rep.breakdown)
    d.rows.push_back({s.m, s.n, s.alpha, s.beta, s.feasible, s.reflection, s.value});
  d.svg = svg::heatmap("sampled |R|^2, eta = " + svg::num(rep.eta), "m", "n", static_cast<std::size_t>(c.n),
                       static_cast<std::size_t>(c.m), sample_heat(rep, c.m, c.n));
  return d;
}

inline Dataset efficiency3d(const RunConfig& c) {
  const auto stack = c.stack();
  const auto rep = eta_finite_3d(stack, c.quad());
  Dataset d;
  d.summary["finite"] = report_json(rep);
  d.summary["eta_finite_3d"] = rep.eta;
  d.summary["eta_infinite_3d"] = eta_infinite_3d(stack);
  d.summary["eta_infinite_3d_numerical"] = eta_infinite_3d_numerical(stack, c.quad());
  if (c.m >= 2 && c.n >= 2) d.summary["approx_3d"] = report_json(approx_3d_report(stack));
  d.columns = {"m", "n", "alpha", "beta", "gamma", "feasible", "reflection", "contribution"};
  for (const auto& s : rep.breakdown)
    d.rows.push_back({s.m, s.n, s.alpha, s.beta, s.gamma, s.feasible, s.reflection, s.value});
  auto heat = sample_heat(rep, c.m, c.n);
  for (auto& v : heat) v *= 0.5;
  d.svg = svg::heatmap("gamma-averaged sampled |R|^2, eta = " + svg::num(rep.eta), "m", "n",
                       static_cast<std::size_t>(c.n), static_cast<std::size_t>(c.m), heat);
  return d;
}

inline Dataset gain(const RunConfig& c) {
  const auto ap = apertures_of(c.stack());
  const AngularRegion region{deg(c.theta1), deg(c.theta2), deg(c.phi1), deg(c.phi2)};
  Dataset d;
  d.summary["a_xy"] = ap.a_xy;
  d.summary["a_xz"] = ap.a_xz;
  d.summary["a_yz"] = ap.a_yz;
  if (region.in_first_octant()) {
    d.summary["gain_ratio"] = avg_gain_ratio(ap, region);
    d.summary["gain_ratio_quadrature"] = avg_gain_ratio_quadrature(ap, region, c.quad());
    d.summary["extended"] = false;
  } else {
    const auto g = avg_gain_ratio_extended(ap, region, c.quad());
    d.summary["gain_ratio"] = g.ratio;
    d.summary["extended"] = g.extended;
  }
  // Pointwise area ratio along theta at the middle azimuth.
  const double phi = 0.5 * (region.phi1 + region.phi2);
  d.columns = {"theta_deg", "area_3d", "area_2d"};
  std::vector<double> xs, ratio;
  const int steps = 90;
  for (int i = 0; i <= steps; ++i) {
    const double t = region.theta1 + (region.theta2 - region.theta1) * i / steps;
    const double a2 = ap.a_xy * std::abs(std::cos(t));
    const double st = std::sin(t);
    const double a3 = a2 + ap.a_xz * std::abs(std::sin(phi)) * st + ap.a_yz * std::abs(std::cos(phi)) * st;
    d.rows.push_back({t * 180.0 / kPi, a3, a2});
    xs.push_back(t * 180.0 / kPi);
    ratio.push_back(a2 > 0 ? a3 / a2 : NAN);
  }
  d.svg = svg::line_plot("3D / 2D effective area, average " + svg::num(d.summary["gain_ratio"].get<double>()),
                         "theta (deg)", xs, {{"A_e,3D / A_e,2D", ratio}});
  return d;
}

inline json annulus_json(const FeasibleAnnulus& a) {
  return {{"r_minus", a.r_minus},         {"r_plus", a.r_plus},       {"area", a.area},
          {"residual_area", a.residual_area}, {"case", to_string(a.case_tag)}, {"theta_minus", a.theta_minus},
          {"theta_plus", a.theta_plus}};
}

inline Dataset feasible_region(const RunConfig& c) {
  const auto stack = c.stack();
  const Threshold t = threshold_of(c);
  const double kz = kWavenumber * c.dz;
  const double cos_xi = c.gamma / kz;
  if (!(std::abs(cos_xi) <= 1.0)) throw DomainError("gamma exceeds 2 pi dz: no real cone angle");
  const auto ring = annulus(stack, std::acos(cos_xi), t);
  Dataset d;
  d.summary["annulus"] = annulus_json(ring);
  d.summary["closed_form_area"] = closed_form_area(stack, std::acos(cos_xi), t);
  d.summary["xi"] = std::acos(cos_xi);
  const auto axis = phase_axis(c.grid);
  const auto& lat = stack.layer;
  d.columns = {"alpha", "beta", "combining", "in_annulus"};
  std::vector<double> heat;
  for (std::size_t j = 0; j < axis.size(); ++j) {
    for (std::size_t i = 0; i < axis.size(); ++i) {
      const double a = axis[i], b = axis[j];
      double comb = 0.0;
      if (is_feasible_2d(lat, a, b)) {
        const double x = a / lat.alpha_radius(), y = b / lat.beta_radius();
        comb = combining_factor(c.layers, c.gamma - kz * std::sqrt(std::max(0.0, 1.0 - x * x - y * y)));
      }
      d.rows.push_back({a, b, comb, ring.contains(a, b)});
      heat.push_back(comb);
    }
  }
  d.svg = svg::heatmap("combining factor, t = " + svg::num(t.t) + ", case " + to_string(ring.case_tag), "alpha",
                       "beta", axis.size(), axis.size(), heat);
  return d;
}

inline Dataset codebook(const RunConfig& c) {
  const auto book = build_codebook(c.stack(), threshold_of(c));
  Dataset d;
  d.summary["region_count"] = book.region_count;
  d.summary["threshold"] = book.t.t;
  d.columns = {"p", "xi", "gamma", "theta_minus", "theta_plus", "r_minus", "r_plus", "area", "residual_area", "case"};
  std::vector<double> xs, lo, hi;
  int p = 1;
  for (const auto& e : book.entries) {
    const auto& a = e.annulus;
    d.rows.push_back({p, e.xi, e.gamma, a.theta_minus, a.theta_plus, a.r_minus, a.r_plus, a.area, a.residual_area,
                      to_string(a.case_tag)});
    xs.push_back(p++);
    lo.push_back(a.theta_minus * 180.0 / kPi);
    hi.push_back(std::min(a.theta_plus, kPi / 2) * 180.0 / kPi);
  }
  d.svg = svg::line_plot("codebook theta coverage, P = " + std::to_string(book.region_count), "entry p", xs,
                         {{"theta_minus (deg)", lo}, {"theta_plus (deg)", hi}});
  return d;
}

inline Dataset volume(const RunConfig& c) {
  const auto stack = c.stack();
  std::vector<double> ts;
  if (c.threshold) ts.push_back(*c.threshold);
  else
    for (int i = 0; i <= 8; ++i) ts.push_back(0.25 * i);
  Dataset d;
  d.columns = {"threshold", "volume"};
  std::vector<double> vs;
  for (double t : ts) {
    const double v = feasible_volume(stack, {t}, c.quad());
    d.rows.push_back({t, v});
    vs.push_back(v);
  }
  if (ts.size() == 1) d.summary["volume"] = vs.front();
  d.svg = svg::line_plot("feasible volume", "threshold t", ts, {{"V(t)", vs}});
  return d;
}

inline Dataset scan_sweep(const RunConfig& c) {
  const auto stack = c.stack();
  const auto plane = c.plane == "xz" ? ScanPlane::xz : ScanPlane::yz;
  std::vector<double> rad;
  for (double a : c.angles) rad.push_back(deg(a));
  const auto pattern = pattern_of(c);
  const auto planar = arraylimits::scan_sweep(stack.layer, plane, rad, pattern, c.quad());
  const auto layered = arraylimits::scan_sweep(stack, plane, rad, pattern, c.quad());
  Dataset d;
  d.columns = {"angle_deg", "directivity_2d", "directivity_3d", "ratio", "pattern", "pattern_switched"};
  std::vector<double> d2, d3;
  bool switched = false;
  for (std::size_t i = 0; i < rad.size(); ++i) {
    d.rows.push_back({c.angles[i], planar[i].directivity, layered[i].directivity,
                      layered[i].directivity / planar[i].directivity, to_string(layered[i].pattern_used),
                      layered[i].pattern_switched});
    switched = switched || layered[i].pattern_switched;
    d2.push_back(planar[i].directivity);
    d3.push_back(layered[i].directivity);
  }
  d.summary["pattern_switched_at_grazing"] = switched;
  d.svg = svg::line_plot("directivity versus scan angle", "scan angle (deg)", c.angles, {{"2D", d2}, {"3D", d3}});
  return d;
}

inline Dataset intensity_map(const RunConfig& c) {
  const auto stack = c.stack();
  const auto axis = phase_axis(c.grid);
  const auto map = arraylimits::intensity_map(stack, axis, axis, {c.gamma});
  Dataset d;
  d.columns = {"alpha", "beta", "gamma", "intensity"};
  std::vector<double> heat;
  for (std::size_t b = 0; b < axis.size(); ++b) {
    for (std::size_t a = 0; a < axis.size(); ++a) {
      d.rows.push_back({axis[a], axis[b], c.gamma, map.at(0, a, b)});
      heat.push_back(map.at(0, a, b));
    }
  }
  d.summary["normalization"] = "field amplitude over element count";
  d.svg = svg::heatmap("normalized main-beam intensity, gamma = " + svg::num(c.gamma), "alpha", "beta", axis.size(),
                       axis.size(), heat);
  return d;
}

inline Dataset parseval(const RunConfig& c) {
  std::vector<CouplingField> fields;
  for (int f = 0; f < c.fields; ++f) {
    fields.push_back(make_mirror_symmetric_field(c.support, c.seed + 2 * f, 0));
    if (c.layers >= 2) fields.push_back(make_mirror_symmetric_field(c.support, c.seed + 2 * f + 1, 1));
  }
  const auto r = parseval_check(fields, c.quad());
  Dataset d;
  d.summary["lhs"] = r.lhs;
  d.summary["rhs"] = r.rhs;
  d.summary["abs_difference"] = std::abs(r.lhs - r.rhs);
  d.columns = {"layer_tag", "p", "q", "re", "im"};
  for (const auto& f : fields)
    for (const auto& [pq, v] : f.coefficients) d.rows.push_back({f.layer_tag, pq.first, pq.second, v.real(), v.imag()});
  d.svg = svg::line_plot("Parseval check", "side", {0.0, 1.0}, {{"lhs", {r.lhs, r.lhs}}, {"rhs", {r.rhs, r.rhs}}});
  return d;
}

inline json typed_value(const std::string& s) {
  std::uint64_t u = 0;
  {
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), u);
    if (ec == std::errc() && p == s.data() + s.size()) return u;
  }
  long long i = 0;
  {
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), i);
    if (ec == std::errc() && p == s.data() + s.size()) return i;
  }
  double x = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec == std::errc() && p == s.data() + s.size()) return x;
  return s;
}

}  // namespace detail

inline Dataset compute(const RunConfig& c) {
  if (c.command == "efficiency2d") return detail::efficiency2d(c);
  if (c.command == "efficiency3d") return detail::efficiency3d(c);
  if (c.command == "gain") return detail::gain(c);
  if (c.command == "feasible-region") return detail::feasible_region(c);
  if (c.command == "codebook") return detail::codebook(c);
  if (c.command == "volume") return detail::volume(c);
  if (c.command == "scan-sweep") return detail::scan_sweep(c);
  if (c.command == "intensity-map") return detail::intensity_map(c);
  if (c.command == "parseval-check") return detail::parseval(c);
  throw ConfigError("unknown command '" + c.command + "'");
}

inline std::string render(const RunConfig& c, const Dataset& d) {
  switch (c.resolved_format()) {
    case Format::svg:
      return d.svg;
    case Format::csv: {
      CsvTable t;
      t.header = d.columns;
      for (const auto& r : d.rows) {
        std::vector<std::string> cells;
        for (const auto& v : r) cells.push_back(detail::csv_cell(v));
        t.rows.push_back(std::move(cells));
      }
      return t.str();
    }
    case Format::json: {
      json cfg = json::object();
      for (const auto& [k, v] : config_to_kv(c)) cfg[k] = (k == "angles") ? json(v) : detail::typed_value(v);
      json rows = json::array();
      for (const auto& r : d.rows) {
        json rec = json::object();
        for (std::size_t i = 0; i < d.columns.size() && i < r.size(); ++i) rec[d.columns[i]] = r[i];
        rows.push_back(std::move(rec));
      }
      json doc = {{"software", "arraylimits"},
                  {"version", kVersion},
                  {"config", cfg},
                  {"quadrature", {{"rule", "composite Gauss-Legendre"},
                                  {"panels_per_axis", c.panels},
                                  {"nodes_per_panel", c.nodes}}},
                  {"result", d.summary},
                  {"rows", rows}};
      return doc.dump(2) + "\n";
    }
  }
  return {};
}

// Validates, computes and writes. Errors propagate to the caller.
inline void run(const RunConfig& c) {
  validate_config(c);
  write_output(c.out, render(c, compute(c)));
}

}  // namespace arraylimits::cli
