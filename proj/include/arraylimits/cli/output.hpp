// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "arraylimits/cli/config.hpp"

namespace arraylimits::cli {

// Writes through a temporary sibling file and renames it into place, so a
// reader never sees a partial file. An empty path means standard output.
inline void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write output file '" + path + "'");
    out << content;
    out.flush();
    if (!out) throw ConfigError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ConfigError("cannot move output into place at '" + path + "'");
  }
}

// Header row plus one row per record; numeric cells pre-formatted by the caller.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const {
    std::string s;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
      s += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return s;
  }
};

namespace svg {

// Fixed five-stop ramp from dark blue (minimum) through teal and green to
// yellow (maximum), interpolated linearly in RGB.
inline std::string ramp_color(double u) {
  static constexpr std::array<std::array<int, 3>, 5> stops{{{68, 1, 84}, {59, 82, 139}, {33, 145, 140},
                                                            {94, 201, 98}, {253, 231, 37}}};
  u = std::clamp(std::isfinite(u) ? u : 0.0, 0.0, 1.0) * (stops.size() - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(u), stops.size() - 2);
  const double f = u - i;
  char buf[16];
  int rgb[3];
  for (int k = 0; k < 3; ++k) rgb[k] = static_cast<int>(std::lround(stops[i][k] + f * (stops[i + 1][k] - stops[i][k])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

// values are row-major [row][col]; row 0 is drawn at the bottom.
inline std::string heatmap(const std::string& title, const std::string& x_label, const std::string& y_label,
                           std::size_t rows, std::size_t cols, const std::vector<double>& values) {
  const double lo = values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
  const double hi = values.empty() ? 1.0 : *std::max_element(values.begin(), values.end());
  const double span = hi > lo ? hi - lo : 1.0;
  const double plot = 400.0;
  const double cw = plot / static_cast<double>(std::max<std::size_t>(cols, 1));
  const double ch = plot / static_cast<double>(std::max<std::size_t>(rows, 1));
  const double x0 = 60.0, y0 = 40.0;
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"560\" height=\"500\" viewBox=\"0 0 560 500\">\n";
  s += "<rect width=\"560\" height=\"500\" style=\"fill:#ffffff\"/>\n";
  s += "<text x=\"280\" y=\"24\" style=\"font:14px sans-serif;text-anchor:middle\">" + escape(title) + "</text>\n";
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = values[r * cols + c];
      s += "<rect x=\"" + num(x0 + c * cw) + "\" y=\"" + num(y0 + plot - (r + 1) * ch) + "\" width=\"" +
           num(cw + 0.05) + "\" height=\"" + num(ch + 0.05) + "\" style=\"fill:" + ramp_color((v - lo) / span) +
           "\"/>\n";
    }
  }
  s += "<text x=\"" + num(x0 + plot / 2) + "\" y=\"470\" style=\"font:12px sans-serif;text-anchor:middle\">" +
       escape(x_label) + "</text>\n";
  s += "<text x=\"18\" y=\"" + num(y0 + plot / 2) +
       "\" style=\"font:12px sans-serif;text-anchor:middle\" transform=\"rotate(-90 18 " + num(y0 + plot / 2) +
       ")\">" + escape(y_label) + "</text>\n";
  // Legend: ramp bar with min and max.
  for (int i = 0; i < 20; ++i) {
    s += "<rect x=\"480\" y=\"" + num(y0 + plot - (i + 1) * 20.0) + "\" width=\"20\" height=\"20.05\" style=\"fill:" +
         ramp_color((i + 0.5) / 20.0) + "\"/>\n";
  }
  s += "<text x=\"505\" y=\"" + num(y0 + 10) + "\" style=\"font:11px sans-serif\">max " + num(hi) + "</text>\n";
  s += "<text x=\"505\" y=\"" + num(y0 + plot) + "\" style=\"font:11px sans-serif\">min " + num(lo) + "</text>\n";
  s += "</svg>\n";
  return s;
}

struct Series {
  std::string name;
  std::vector<double> y;
};

inline std::string line_plot(const std::string& title, const std::string& x_label, const std::vector<double>& x,
                             const std::vector<Series>& series) {
  static constexpr std::array<const char*, 4> colors{"#3b528b", "#21918c", "#5ec962", "#440154"};
  double xl = x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
  double xh = x.empty() ? 1.0 : *std::max_element(x.begin(), x.end());
  double yl = 0.0, yh = 0.0;
  bool first = true;
  for (const auto& sr : series) {
    for (double v : sr.y) {
      if (!std::isfinite(v)) continue;
      yl = first ? v : std::min(yl, v);
      yh = first ? v : std::max(yh, v);
      first = false;
    }
  }
  if (xh <= xl) xh = xl + 1.0;
  if (yh <= yl) yh = yl + 1.0;
  const double x0 = 60.0, y0 = 40.0, w = 440.0, h = 360.0;
  auto px = [&](double v) { return x0 + (v - xl) / (xh - xl) * w; };
  auto py = [&](double v) { return y0 + h - (v - yl) / (yh - yl) * h; };
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"560\" height=\"480\" viewBox=\"0 0 560 480\">\n";
  s += "<rect width=\"560\" height=\"480\" style=\"fill:#ffffff\"/>\n";
  s += "<text x=\"280\" y=\"24\" style=\"font:14px sans-serif;text-anchor:middle\">" + escape(title) + "</text>\n";
  s += "<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" + num(w) + "\" height=\"" + num(h) +
       "\" style=\"fill:none;stroke:#000000\"/>\n";
  s += "<text x=\"" + num(x0) + "\" y=\"" + num(y0 + h + 16) + "\" style=\"font:11px sans-serif\">" + num(xl) + "</text>\n";
  s += "<text x=\"" + num(x0 + w) + "\" y=\"" + num(y0 + h + 16) +
       "\" style=\"font:11px sans-serif;text-anchor:end\">" + num(xh) + "</text>\n";
  s += "<text x=\"" + num(x0 - 4) + "\" y=\"" + num(y0 + h) + "\" style=\"font:11px sans-serif;text-anchor:end\">" +
       num(yl) + "</text>\n";
  s += "<text x=\"" + num(x0 - 4) + "\" y=\"" + num(y0 + 10) + "\" style=\"font:11px sans-serif;text-anchor:end\">" +
       num(yh) + "</text>\n";
  s += "<text x=\"" + num(x0 + w / 2) + "\" y=\"" + num(y0 + h + 34) +
       "\" style=\"font:12px sans-serif;text-anchor:middle\">" + escape(x_label) + "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = colors[k % colors.size()];
    std::string pts;
    for (std::size_t i = 0; i < x.size() && i < series[k].y.size(); ++i) {
      if (!std::isfinite(series[k].y[i])) continue;
      pts += num(px(x[i])) + "," + num(py(series[k].y[i])) + " ";
    }
    s += "<polyline points=\"" + pts + "\" style=\"fill:none;stroke:" + color + ";stroke-width:2\"/>\n";
    s += "<text x=\"" + num(x0 + 8) + "\" y=\"" + num(y0 + 16 + 14.0 * k) + "\" style=\"font:11px sans-serif;fill:" +
         color + "\">" + escape(series[k].name) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace svg

}  // namespace arraylimits::cli
