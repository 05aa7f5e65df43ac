// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

// Reference computations used by the tests. Each one reaches the library's
// result through a different route (closed forms, brute-force grids, naive
// sums), so agreement is evidence rather than repetition.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <vector>

namespace oracle {

constexpr double pi = std::numbers::pi;

// Integral of cos(k x) cos(l y) over the quarter ellipse x, y >= 0,
// (x/a)^2 + (y/b)^2 <= 1, via the polar Bessel identity.
inline double quarter_ellipse_cosine(int k, int l, double a, double b) {
  const double rho = std::hypot(k * a, l * b);
  if (rho == 0.0) return pi * a * b / 4.0;
  return pi * a * b / 2.0 * std::cyl_bessel_j(1.0, rho) / rho;
}

// Cosine coefficient of the 0/1 mask for an ellipse inside the phase square.
inline double mask_coefficient(int k, int l, double dx, double dy) {
  const double a = 2 * pi * dx, b = 2 * pi * dy;
  return (k == 0 && l == 0 ? 1.0 : 0.0) - quarter_ellipse_cosine(k, l, a, b) / (pi * pi);
}

// Mask through the M x N Fejer kernel, from the Bessel coefficients.
inline double smoothed_mask(int m, int n, double dx, double dy, double alpha, double beta) {
  double sum = 0.0;
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < n; ++l) {
      const double w = (k ? 2.0 : 1.0) * (l ? 2.0 : 1.0) * (1.0 - double(k) / m) * (1.0 - double(l) / n);
      sum += w * mask_coefficient(k, l, dx, dy) * std::cos(k * alpha) * std::cos(l * beta);
    }
  }
  return sum;
}

// Midpoint rule on an n x n grid over [x0, x1] x [y0, y1].
inline double midpoint_2d(const std::function<double(double, double)>& f, double x0, double x1, double y0,
                          double y1, int n) {
  const double hx = (x1 - x0) / n, hy = (y1 - y0) / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sum += f(x0 + (i + 0.5) * hx, y0 + (j + 0.5) * hy);
  return sum * hx * hy;
}

// Simpson's rule with n (even) intervals, in long double.
inline long double simpson(const std::function<long double(long double)>& f, long double a, long double b, int n) {
  const long double h = (b - a) / n;
  long double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(a + i * h);
  return s * h / 3.0L;
}

// J(kappa) = integral_0^1 c e^{-j kappa c} dc.
inline std::complex<double> j_moment(double kappa) {
  if (std::abs(kappa) < 1e-4) return {0.5 - kappa * kappa / 8.0, -kappa / 3.0};
  const std::complex<double> s{0.0, -kappa};
  return std::exp(s) * (1.0 / s - 1.0 / (s * s)) + 1.0 / (s * s);
}

// Gamma-slice average of the two-layer analytic reflection, closed form.
inline double mean_reflection_two_layer(double dx, double dy, double dz, double gamma) {
  const double hannan = pi * dx * dy;
  return 1.0 - hannan / 2.0 - hannan * std::real(std::polar(1.0, gamma) * j_moment(2 * pi * dz));
}

// |sum_l e^{j l phi}| by direct summation.
inline double combining(int layers, double phi) {
  std::complex<double> s{0.0, 0.0};
  for (int l = 1; l <= layers; ++l) s += std::polar(1.0, l * phi);
  return std::abs(s);
}

// Number of codebook regions by laying rings down one after another until
// the cos(theta) window passes below zero (the horizon).
inline int tiling_count(double dz, double t) {
  const double delta = std::acos((t * t - 2.0) / 2.0) / (2 * pi * dz);
  int p = 1;
  double lower = 1.0 - 2.0 * delta;
  while (!(lower < 0.0)) {
    ++p;
    lower -= 2.0 * delta;
  }
  return p;
}

}  // namespace oracle
