// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "arraylimits/combining.hpp"
#include "arraylimits/geometry.hpp"
#include "arraylimits/parallel.hpp"
#include "arraylimits/quadrature.hpp"

namespace arraylimits {

// Minimum acceptable two-layer combining amplitude, |1 + e^{j phi}| >= t.
struct Threshold {
  double t = std::numbers::sqrt2;

  void validate() const {
    if (!(t >= 0.0 && t <= 2.0)) throw DomainError("threshold must lie in [0, 2]");
  }
  // Largest tolerated mismatch |phi|: acos((t^2 - 2) / 2).
  double margin() const {
    validate();
    return std::acos(std::clamp((t * t - 2.0) / 2.0, -1.0, 1.0));
  }
};

enum class AnnulusCase { around_z, medium, around_xy };

inline const char* to_string(AnnulusCase c) {
  switch (c) {
    case AnnulusCase::around_z: return "around_z";
    case AnnulusCase::medium: return "medium";
    case AnnulusCase::around_xy: return "around_xy";
  }
  return "unknown";
}

// Quarter ring r_minus <= sqrt(alpha^2 + beta^2) <= r_plus of (alpha, beta)
// settings whose beam clears the threshold at a fixed gamma.
struct FeasibleAnnulus {
  double r_minus = 0.0;
  double r_plus = 0.0;
  double area = 0.0;  // steerable ring area in the first phase quadrant
  // Below-horizon band folded back by symmetry when the ring would extend past
  // theta = pi/2. Counted separately: its beam direction is not controllable.
  double residual_area = 0.0;
  AnnulusCase case_tag = AnnulusCase::medium;
  double theta_minus = 0.0;
  double theta_plus = 0.0;

  bool contains(double alpha, double beta) const {
    const double r = std::hypot(alpha, beta);
    return r >= r_minus && r <= r_plus;
  }
};

// Two-layer mismatch for a beam steered to cone xi, observed at polar angle theta.
inline double phase_mismatch(const Stack3D& stack, double xi, double theta) {
  return kWavenumber * stack.dz * (std::cos(xi) - std::cos(theta));
}

namespace detail {

// cos(theta) range [c_plus, c_minus] before clamping.
inline std::pair<double, double> raw_cos_bounds(double dz, double cos_xi, const Threshold& t) {
  const double delta = t.margin() / (kWavenumber * dz);
  return {cos_xi - delta, cos_xi + delta};
}

}  // namespace detail

// Polar angles bounding the beams that clear the threshold.
inline std::pair<double, double> theta_bounds(const Stack3D& stack, double xi, const Threshold& t) {
  if (!(stack.dz > 0.0)) throw DomainError("inter-layer spacing must be positive");
  const auto [c_plus, c_minus] = detail::raw_cos_bounds(stack.dz, std::cos(xi), t);
  return {std::acos(std::clamp(c_minus, -1.0, 1.0)), std::acos(std::clamp(c_plus, -1.0, 1.0))};
}

namespace detail {

inline double require_upa(const Stack3D& stack) {
  stack.validate();
  const auto& l = stack.layer;
  if (l.dx != l.dy) throw DomainError("annulus radii need equal x and y spacing");
  if (l.dx > 0.5) throw DomainError("annulus radii need d <= lambda/2");
  return l.dx;
}

// Ring for the cos(theta) window [c_plus, c_minus] centred on cos_xi.
inline FeasibleAnnulus annulus_from_bounds(const Stack3D& stack, double cos_xi, double c_plus, double c_minus,
                                           const Threshold& t) {
  const double d = require_upa(stack);
  const double radius = kWavenumber * d;
  const double lo = std::clamp(c_plus, 0.0, 1.0);
  const double hi = std::clamp(c_minus, 0.0, 1.0);

  FeasibleAnnulus a;
  a.theta_minus = std::acos(std::clamp(c_minus, -1.0, 1.0));
  a.theta_plus = std::acos(std::clamp(c_plus, -1.0, 1.0));
  a.r_plus = radius * std::sqrt(1.0 - lo * lo);
  a.r_minus = radius * std::sqrt(1.0 - hi * hi);
  if (c_plus < 0.0) {
    a.case_tag = AnnulusCase::around_xy;
    a.residual_area = kPi / 4 * radius * radius * std::min(c_plus * c_plus, 1.0);
  } else if (c_minus > 1.0) {
    a.case_tag = AnnulusCase::around_z;
  } else {
    a.case_tag = AnnulusCase::medium;
  }
  if (a.case_tag == AnnulusCase::medium) {
    a.area = 2.0 * kPi * kPi * d * d / stack.dz * cos_xi * t.margin();
  } else {
    a.area = kPi / 4 * (a.r_plus * a.r_plus - a.r_minus * a.r_minus);
  }
  return a;
}

inline FeasibleAnnulus annulus_from_cos(const Stack3D& stack, double cos_xi, const Threshold& t) {
  const auto [c_plus, c_minus] = raw_cos_bounds(stack.dz, cos_xi, t);
  return annulus_from_bounds(stack, cos_xi, c_plus, c_minus, t);
}

}  // namespace detail

inline FeasibleAnnulus annulus(const Stack3D& stack, double xi, const Threshold& t) {
  return detail::annulus_from_cos(stack, std::cos(xi), t);
}

// Unclamped ring area (2 pi^2 d^2 / dz) cos(xi) acos((t^2 - 2) / 2). Agrees
// with annulus().area only in the medium case.
inline double closed_form_area(const Stack3D& stack, double xi, const Threshold& t) {
  const double d = detail::require_upa(stack);
  return 2.0 * kPi * kPi * d * d / stack.dz * std::cos(xi) * t.margin();
}

// Fraction of the (alpha, beta, gamma) cube [0, pi]^3 whose beam clears the
// threshold: (1/pi^3) * integral of the steerable ring area over gamma, with
// cos(xi) = gamma / (2 pi dz). Gamma beyond 2 pi dz maps to no real cone and
// is excluded.
inline double feasible_volume(const Stack3D& stack, const Threshold& t, const QuadratureSpec& spec = {}) {
  detail::require_upa(stack);
  t.validate();
  const double kz = kWavenumber * stack.dz;
  const double g_max = std::min(kPi, kz);
  const double delta = t.margin() / kz;
  // The area is piecewise quadratic in gamma; split at the clamp onsets.
  std::vector<double> cuts{0.0, g_max};
  for (double g : {kz * (1.0 - delta), kz * delta})
    if (g > 0.0 && g < g_max) cuts.push_back(g);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<double, double>> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) pieces.push_back({cuts[i], cuts[i + 1]});
  const auto parts = parallel_map(pieces.size(), [&](std::size_t i) {
    return quad::integrate_1d(
        [&](double g) { return detail::annulus_from_cos(stack, g / kz, t).area; }, pieces[i].first,
        pieces[i].second, spec);
  });
  double sum = 0.0;
  for (double p : parts) sum += p;
  return sum / (kPi * kPi * kPi);
}

struct CodebookEntry {
  double xi = 0.0;
  double gamma = 0.0;
  FeasibleAnnulus annulus;
};

struct Codebook {
  std::vector<CodebookEntry> entries;
  Threshold t;
  int region_count = 0;
};

// Smallest set of inter-layer phases whose rings tile theta in [0, pi/2]:
// cos(xi_p) = 1 - (2p - 1) delta with delta = acos((t^2 - 2)/2) / (2 pi dz).
inline Codebook build_codebook(const Stack3D& stack, const Threshold& t) {
  stack.validate();
  t.validate();
  if (!(t.t > 0.0 && t.t < 2.0)) throw DomainError("codebook needs 0 < t < 2");
  const double kz = kWavenumber * stack.dz;
  const double margin = t.margin();
  const double delta = margin / kz;
  Codebook book;
  book.t = t;
  book.region_count = static_cast<int>(std::floor(kPi * stack.dz / margin)) + 1;
  for (int p = 1; p <= book.region_count; ++p) {
    const double c_raw = 1.0 - (2.0 * p - 1.0) * delta;
    const double c = (p == book.region_count) ? std::clamp(c_raw, -1.0, 1.0) : c_raw;
    CodebookEntry e;
    e.xi = std::acos(c);
    e.gamma = kz * c;
    // Window edges from the tiling grid itself, so neighbours share them exactly.
    e.annulus = detail::annulus_from_bounds(stack, c_raw, 1.0 - 2.0 * p * delta, 1.0 - (2.0 * p - 2.0) * delta, t);
    book.entries.push_back(e);
  }
  return book;
}

}  // namespace arraylimits
