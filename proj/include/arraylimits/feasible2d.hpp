// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "arraylimits/geometry.hpp"
#include "arraylimits/quadrature.hpp"

namespace arraylimits {

// (alpha, beta) produces a real propagating direction: the x and y phase
// cones intersect. The boundary counts as feasible.
inline bool is_feasible_2d(const ArrayLattice2D& lattice, double alpha, double beta) {
  const double x = alpha / lattice.alpha_radius();
  const double y = beta / lattice.beta_radius();
  return x * x + y * y <= 1.0;
}

struct SamplePoint {
  int m = 0;
  int n = 0;
  double alpha = 0.0;  // 2 pi m / M wrapped to (-pi, pi]
  double beta = 0.0;
  bool feasible = false;
};

// DFT sampling grid of a finite M x N array.
struct SampleGrid {
  ArrayLattice2D lattice;
  std::vector<SamplePoint> points;  // row-major in (m, n)

  std::size_t feasible_count() const {
    std::size_t c = 0;
    for (const auto& p : points) c += p.feasible ? 1 : 0;
    return c;
  }
};

inline SampleGrid build_sample_grid(const ArrayLattice2D& lattice) {
  lattice.validate();
  SampleGrid grid{lattice, {}};
  grid.points.reserve(static_cast<std::size_t>(lattice.element_count()));
  for (int m = 0; m < lattice.m_count; ++m) {
    for (int n = 0; n < lattice.n_count; ++n) {
      SamplePoint p;
      p.m = m;
      p.n = n;
      p.alpha = wrap_phase(kTwoPi * m / lattice.m_count);
      p.beta = wrap_phase(kTwoPi * n / lattice.n_count);
      p.feasible = is_feasible_2d(lattice, p.alpha, p.beta);
      grid.points.push_back(p);
    }
  }
  return grid;
}

// Fraction of the phase square covered by the visible ellipse, pi dx dy.
// Only valid without grating lobes.
inline double feasible_fraction_infinite(const ArrayLattice2D& lattice) {
  lattice.validate();
  if (!lattice.grating_lobe_free())
    throw DomainError("closed-form feasible fraction requires dx, dy <= lambda/2; "
                      "use feasible_fraction_numerical");
  return kPi * lattice.dx * lattice.dy;
}

// Area of (visible ellipse) ∩ (phase square) over the square area, by
// quadrature. Valid for any spacing.
inline double feasible_fraction_numerical(const ArrayLattice2D& lattice,
                                          const QuadratureSpec& spec = {}) {
  lattice.validate();
  const double area = quad::integrate_clipped_ellipse_strips(
      [](double, double h) { return h; }, lattice.alpha_radius(), lattice.beta_radius(), spec);
  return area / (kPi * kPi);
}

}  // namespace arraylimits
