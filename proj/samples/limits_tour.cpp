// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

// Prints the main limits for a half-wavelength 8 x 8 array and its two-layer
// stack at 0.75 wavelength layer spacing.

#include <cstdio>

#include "arraylimits/arraylimits.hpp"

int main() {
  using namespace arraylimits;
  const ArrayLattice2D lattice{8, 8, 0.5, 0.5, 1.0};
  const Stack3D stack{lattice, 0.75, 2, {0.0, 0.0}};

  std::printf("infinite planar limit     %.6f\n", eta_infinite_2d(lattice));
  std::printf("finite 8x8 bound          %.6f\n", eta_finite_2d(lattice).eta);
  std::printf("infinite two-layer limit  %.6f\n", eta_infinite_3d(stack));
  std::printf("finite two-layer bound    %.6f\n", eta_finite_3d(stack).eta);

  const ApertureSet ap = apertures_of(stack);
  std::printf("octant gain ratio         %.6f\n", avg_gain_ratio(ap, AngularRegion{}));

  const Threshold t{1.5};
  const Codebook book = build_codebook(stack, t);
  std::printf("codebook size at t = 1.5  %d\n", book.region_count);
  for (const auto& e : book.entries)
    std::printf("  xi = %6.2f deg  gamma = %+.4f rad  rings %.3f..%.3f  (%s)\n", e.xi * 180.0 / kPi, e.gamma,
                e.annulus.r_minus, e.annulus.r_plus, to_string(e.annulus.case_tag));
  std::printf("feasible volume at t=1.5  %.6f\n", feasible_volume(stack, t));
  return 0;
}
