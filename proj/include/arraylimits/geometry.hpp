// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "arraylimits/error.hpp"

namespace arraylimits {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// All lengths are expressed in wavelengths, so the free-space wavenumber is 2*pi.
inline constexpr double kWavenumber = kTwoPi;

// Wraps a phase into (-pi, pi].
inline double wrap_phase(double x) {
  double y = std::remainder(x, kTwoPi);  // [-pi, pi]
  if (y <= -kPi) y += kTwoPi;
  return y;
}

// Planar uniform lattice: m_count x n_count elements with spacings dx, dy.
struct ArrayLattice2D {
  int m_count = 1;
  int n_count = 1;
  double dx = 0.5;
  double dy = 0.5;
  // Reference wavelength, only used to label outputs.
  double wavelength = 1.0;

  void validate() const {
    if (m_count < 1 || n_count < 1) throw DomainError("lattice element counts must be >= 1");
    if (!(dx > 0.0) || !(dy > 0.0)) throw DomainError("lattice spacings must be positive");
    if (!(wavelength > 0.0)) throw DomainError("wavelength must be positive");
  }

  int element_count() const { return m_count * n_count; }

  // Semi-axes of the visible-region ellipse in the (alpha, beta) phase plane.
  double alpha_radius() const { return kWavenumber * dx; }
  double beta_radius() const { return kWavenumber * dy; }

  // True when the visible ellipse fits inside the [-pi, pi]^2 phase square.
  bool grating_lobe_free() const { return dx <= 0.5 && dy <= 0.5; }
};

// Parallel copies of one lattice stacked along z.
struct Stack3D {
  ArrayLattice2D layer;
  double dz = 0.5;
  int layer_count = 2;
  // Horizontal stagger applied to every odd layer, in wavelengths.
  std::array<double, 2> layer_offset{0.0, 0.0};

  void validate() const {
    layer.validate();
    if (!(dz > 0.0)) throw DomainError("inter-layer spacing must be positive");
    if (layer_count < 2) throw DomainError("a stack needs at least two layers");
  }

  int element_count() const { return layer_count * layer.element_count(); }
};

// Linear phase progressions along x, y and z (radians per element step).
struct PhaseSet {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  PhaseSet canonical() const { return {wrap_phase(alpha), wrap_phase(beta), wrap_phase(gamma)}; }
};

// Angles between the in-phase direction and the x, y, z axes.
struct ConeAngles {
  double mu = kPi / 2;
  double nu = kPi / 2;
  double xi = kPi / 2;
};

struct SphericalDirection {
  double theta = 0.0;   // polar angle from +z
  double phi_az = 0.0;  // azimuth from +x, in [0, 2pi)

  double ux() const { return std::sin(theta) * std::cos(phi_az); }
  double uy() const { return std::sin(theta) * std::sin(phi_az); }
  double uz() const { return std::cos(theta); }
};

// theta in [theta1, theta2], phi in [phi1, phi2].
struct AngularRegion {
  double theta1 = 0.0;
  double theta2 = kPi / 2;
  double phi1 = 0.0;
  double phi2 = kPi / 2;

  bool in_first_octant(double tol = 1e-12) const {
    return theta1 >= -tol && theta1 <= theta2 && theta2 <= kPi / 2 + tol && phi1 >= -tol &&
           phi1 <= phi2 && phi2 <= kPi / 2 + tol;
  }
};

// Composite Gauss-Legendre rule: fixed panels, fixed nodes per panel.
struct QuadratureSpec {
  int panels_per_axis = 256;
  int nodes_per_panel = 4;

  void validate() const {
    if (panels_per_axis < 1 || nodes_per_panel < 1)
      throw QuadratureError("quadrature spec needs at least one panel and one node");
  }
  int nodes_per_axis() const { return panels_per_axis * nodes_per_panel; }
};

namespace detail {

inline double checked_acos(double c, const char* what) {
  if (!(std::abs(c) <= 1.0 + 1e-12))
    throw DomainError(std::string(what) + ": phase step too large for the element spacing");
  return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace detail

// Cone angles of the in-phase directions produced by a phase set. Cosines are
// taken from the phase magnitudes (cos mu = |alpha| / (2 pi dx), etc.), so all
// three angles lie in [0, pi/2]; downstream formulas only use these cosines.
inline ConeAngles phase_to_cone(const ArrayLattice2D& lattice, double dz, const PhaseSet& phases) {
  lattice.validate();
  if (!(dz > 0.0)) throw DomainError("inter-layer spacing must be positive");
  return {detail::checked_acos(std::abs(phases.alpha) / lattice.alpha_radius(), "alpha"),
          detail::checked_acos(std::abs(phases.beta) / lattice.beta_radius(), "beta"),
          detail::checked_acos(std::abs(phases.gamma) / (kWavenumber * dz), "gamma")};
}

// Phase set whose cones are the given angles (inverse of phase_to_cone).
inline PhaseSet cone_to_phase(const ArrayLattice2D& lattice, double dz, const ConeAngles& cones) {
  return {lattice.alpha_radius() * std::cos(cones.mu), lattice.beta_radius() * std::cos(cones.nu),
          kWavenumber * dz * std::cos(cones.xi)};
}

// Intersection of the x and y cones: cos^2 mu + cos^2 nu = sin^2 theta.
inline SphericalDirection cone_to_direction(const ConeAngles& cones) {
  const double cm = std::cos(cones.mu);
  const double cn = std::cos(cones.nu);
  const double s2 = cm * cm + cn * cn;
  if (s2 > 1.0 + 1e-12) throw DomainError("cones do not intersect: cos^2(mu) + cos^2(nu) > 1");
  const double theta = std::asin(std::sqrt(std::min(s2, 1.0)));
  double phi = std::atan2(cn, cm);
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi) phi -= kTwoPi;
  return {theta, phi};
}

}  // namespace arraylimits
