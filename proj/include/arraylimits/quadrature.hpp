// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "arraylimits/geometry.hpp"

namespace arraylimits::quad {

// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * x * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (x * p1 - p2) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

// Cached per n; the rules are immutable once built.
inline const GaussRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

// Composite rule on [a, b] with the panel layout of a QuadratureSpec.
struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * f(x[i]);
    return sum;
  }
};

inline Rule1D composite_rule(double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  const GaussRule& g = gauss_legendre(spec.nodes_per_panel);
  Rule1D r;
  r.x.reserve(spec.nodes_per_axis());
  r.w.reserve(spec.nodes_per_axis());
  const double h = (b - a) / spec.panels_per_axis;
  for (int p = 0; p < spec.panels_per_axis; ++p) {
    const double lo = a + p * h;
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
      r.x.push_back(lo + 0.5 * h * (g.nodes[k] + 1.0));
      r.w.push_back(0.5 * h * g.weights[k]);
    }
  }
  return r;
}

template <class F>
double integrate_1d(F&& f, double a, double b, const QuadratureSpec& spec) {
  return composite_rule(a, b, spec).integrate(std::forward<F>(f));
}

// Tensor-product rule over [a0, a1] x [b0, b1]; f(x, y).
template <class F>
double integrate_2d(F&& f, double a0, double a1, double b0, double b1, const QuadratureSpec& spec) {
  const Rule1D rx = composite_rule(a0, a1, spec);
  const Rule1D ry = composite_rule(b0, b1, spec);
  double sum = 0.0;
  for (std::size_t i = 0; i < rx.x.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < ry.x.size(); ++j) row += ry.w[j] * f(rx.x[i], ry.x[j]);
    sum += rx.w[i] * row;
  }
  return sum;
}

// Integral over the quarter ellipse {x, y >= 0, (x/a)^2 + (y/b)^2 <= 1}.
// Uses x = a sin(t) cos(p), y = b sin(t) sin(p), which keeps integrands that
// depend on sqrt(1 - (x/a)^2 - (y/b)^2) = cos(t) smooth. f(x, y, cos_t).
template <class F>
double integrate_quarter_ellipse(F&& f, double a, double b, const QuadratureSpec& spec) {
  const Rule1D rt = composite_rule(0.0, kPi / 2, spec);
  const Rule1D rp = composite_rule(0.0, kPi / 2, spec);
  std::vector<double> cp(rp.x.size()), sp(rp.x.size());
  for (std::size_t j = 0; j < rp.x.size(); ++j) {
    cp[j] = std::cos(rp.x[j]);
    sp[j] = std::sin(rp.x[j]);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < rt.x.size(); ++i) {
    const double st = std::sin(rt.x[i]);
    const double ct = std::cos(rt.x[i]);
    double row = 0.0;
    for (std::size_t j = 0; j < rp.x.size(); ++j) row += rp.w[j] * f(a * st * cp[j], b * st * sp[j], ct);
    sum += rt.w[i] * row * a * b * st * ct;
  }
  return sum;
}

// Integral over [0, pi]^2 minus the quarter ellipse; requires a, b <= pi.
// The strip x in [0, a] is mapped through x = a sin(u) so the curved lower
// boundary y = b cos(u) stays smooth.
template <class F>
double integrate_quarter_ellipse_complement(F&& f, double a, double b, const QuadratureSpec& spec) {
  if (a > kPi + 1e-12 || b > kPi + 1e-12)
    throw DomainError("ellipse exceeds the phase square (grating-lobe regime)");
  const Rule1D ru = composite_rule(0.0, kPi / 2, spec);
  const Rule1D rs = composite_rule(0.0, 1.0, spec);
  double sum = 0.0;
  for (std::size_t i = 0; i < ru.x.size(); ++i) {
    const double x = a * std::sin(ru.x[i]);
    const double y0 = b * std::cos(ru.x[i]);
    const double span = kPi - y0;
    double row = 0.0;
    for (std::size_t j = 0; j < rs.x.size(); ++j) row += rs.w[j] * f(x, y0 + span * rs.x[j]);
    sum += ru.w[i] * row * span * a * std::cos(ru.x[i]);
  }
  if (a < kPi) {
    sum += integrate_2d([&](double x, double y) { return f(x, y); }, a, kPi, 0.0, kPi, spec);
  }
  return sum;
}

// Nodes of a rule for integrals over x in [0, min(a, pi)] of g(x, h(x)), where
// h(x) is the height of the ellipse (x/a)^2 + (y/b)^2 <= 1 clipped to the
// phase square: h(x) = min(b sqrt(1 - (x/a)^2), pi). g usually carries the
// inner y-integral in closed form. The x-range is split where the clip becomes
// active, and x = a sin(u) removes the square-root endpoint singularity.
struct StripNode {
  double x;
  double h;
  double w;
};

inline std::vector<StripNode> clipped_ellipse_strip_nodes(double a, double b, const QuadratureSpec& spec) {
  const double u_end = (a <= kPi) ? kPi / 2 : std::asin(kPi / a);
  const double u_clip = (b > kPi) ? std::min(std::acos(kPi / b), u_end) : 0.0;
  std::vector<StripNode> nodes;
  for (auto [u0, u1] : {std::pair{0.0, u_clip}, std::pair{u_clip, u_end}}) {
    if (u1 <= u0) continue;
    const Rule1D r = composite_rule(u0, u1, spec);
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      const double u = r.x[i];
      nodes.push_back({a * std::sin(u), std::min(b * std::cos(u), kPi), r.w[i] * a * std::cos(u)});
    }
  }
  return nodes;
}

template <class G>
double integrate_clipped_ellipse_strips(G&& g, double a, double b, const QuadratureSpec& spec) {
  double sum = 0.0;
  for (const auto& n : clipped_ellipse_strip_nodes(a, b, spec)) sum += n.w * g(n.x, n.h);
  return sum;
}

}  // namespace arraylimits::quad
