// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

#include "arraylimits/geometry.hpp"
#include "arraylimits/quadrature.hpp"

namespace arraylimits {

// Projected apertures of a stack on the three coordinate planes, in
// square wavelengths.
struct ApertureSet {
  double a_xy = 0.0;
  double a_xz = 0.0;
  double a_yz = 0.0;

  void validate() const {
    if (!(a_xy >= 0.0) || !(a_xz >= 0.0) || !(a_yz >= 0.0)) throw DomainError("apertures must be >= 0");
  }
};

// Apertures spanned by the element positions: (count - 1) x spacing along
// each axis. A single row or column therefore has zero broadside aperture.
inline ApertureSet apertures_of(const Stack3D& stack) {
  stack.validate();
  const auto& l = stack.layer;
  const double lx = (l.m_count - 1) * l.dx;
  const double ly = (l.n_count - 1) * l.dy;
  const double lz = (stack.layer_count - 1) * stack.dz;
  return {lx * ly, lx * lz, ly * lz};
}

// Projected area seen from a first-octant direction.
inline double effective_area(const ApertureSet& ap, const SphericalDirection& dir) {
  constexpr double tol = 1e-12;
  if (dir.theta < -tol || dir.theta > kPi / 2 + tol || dir.phi_az < -tol || dir.phi_az > kPi / 2 + tol)
    throw DomainError("effective_area is defined for first-octant directions only");
  const double st = std::sin(dir.theta);
  return ap.a_xy * std::cos(dir.theta) + ap.a_xz * std::sin(dir.phi_az) * st + ap.a_yz * std::cos(dir.phi_az) * st;
}

namespace detail {

inline void require_octant_region(const ApertureSet& ap, const AngularRegion& r) {
  ap.validate();
  if (!r.in_first_octant()) throw DomainError("region must lie in the first octant");
  if (!(r.theta2 > r.theta1)) throw DomainError("region needs theta1 < theta2");
  if (!(ap.a_xy > 0.0)) throw DomainError("gain ratio needs a_xy > 0");
}

// x - sin(x) without cancellation for small x.
inline double x_minus_sin(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return x * x2 * (1.0 / 6 - x2 * (1.0 / 120 - x2 / 5040));
  }
  return x - std::sin(x);
}

}  // namespace detail

// Region-averaged ratio of 3D to 2D effective area. For a proper solid-angle
// region the average is sin(theta)-weighted. A zero-width azimuth range is a
// planar cut, averaged along its arc.
inline double avg_gain_ratio(const ApertureSet& ap, const AngularRegion& r) {
  detail::require_octant_region(ap, r);
  const double dphi = r.phi2 - r.phi1;
  const double phi_mid = 0.5 * (r.phi1 + r.phi2);
  const double dth = r.theta2 - r.theta1;
  const double th_sum = r.theta1 + r.theta2;
  const double vertical = ap.a_xz * std::sin(phi_mid) + ap.a_yz * std::cos(phi_mid);
  if (dphi == 0.0) {
    // (cos t1 - cos t2) / (sin t2 - sin t1) via half-angle products.
    return 1.0 + vertical * std::sin(0.5 * th_sum) / (ap.a_xy * std::cos(0.5 * th_sum));
  }
  // (cos p1 - cos p2) = 2 sin(pm) sin(dp/2); divided by dp this tends to sin(pm).
  const double phi_shape = 2.0 * std::sin(0.5 * dphi) / dphi;
  const double c = std::cos(th_sum);
  const double upper = dth * (1.0 - c) + c * detail::x_minus_sin(dth);  // dt - (sin 2t2 - sin 2t1)/2
  const double lower = std::sin(th_sum) * std::sin(dth);                  // (cos 2t1 - cos 2t2)/2
  if (!(lower > 0.0)) throw DomainError("broadside aperture integral vanishes over the region");
  return 1.0 + vertical * phi_shape * upper / (ap.a_xy * lower);
}

// Same ratio by direct quadrature of the effective-area integrals.
inline double avg_gain_ratio_quadrature(const ApertureSet& ap, const AngularRegion& r,
                                        const QuadratureSpec& spec = {}) {
  detail::require_octant_region(ap, r);
  if (r.phi2 == r.phi1) {
    const double num = quad::integrate_1d(
        [&](double t) { return effective_area(ap, {t, r.phi1}); }, r.theta1, r.theta2, spec);
    const double den = quad::integrate_1d([&](double t) { return ap.a_xy * std::cos(t); }, r.theta1, r.theta2, spec);
    return num / den;
  }
  const double num = quad::integrate_2d(
      [&](double t, double p) { return effective_area(ap, {t, p}) * std::sin(t); }, r.theta1, r.theta2, r.phi1,
      r.phi2, spec);
  const double den = quad::integrate_2d(
      [&](double t, double) { return ap.a_xy * std::cos(t) * std::sin(t); }, r.theta1, r.theta2, r.phi1, r.phi2,
      spec);
  return num / den;
}

struct ExtendedGain {
  double ratio = 0.0;
  bool extended = false;  // region left the first octant; projections taken in magnitude
};

// Ratio over an arbitrary region theta in [0, pi], phi in [0, 2 pi], using
// |projection| for every plane. Quadrature only.
inline ExtendedGain avg_gain_ratio_extended(const ApertureSet& ap, const AngularRegion& r,
                                            const QuadratureSpec& spec = {}) {
  ap.validate();
  if (!(r.theta1 >= 0.0 && r.theta1 < r.theta2 && r.theta2 <= kPi && r.phi1 >= 0.0 && r.phi1 <= r.phi2 &&
        r.phi2 <= kTwoPi))
    throw DomainError("extended region needs 0 <= theta1 < theta2 <= pi and 0 <= phi1 <= phi2 <= 2 pi");
  auto area = [&](double t, double p) {
    const double st = std::sin(t);
    return ap.a_xy * std::abs(std::cos(t)) + ap.a_xz * std::abs(std::sin(p)) * st + ap.a_yz * std::abs(std::cos(p)) * st;
  };
  double num = 0.0, den = 0.0;
  if (r.phi1 == r.phi2) {
    num = quad::integrate_1d([&](double t) { return area(t, r.phi1); }, r.theta1, r.theta2, spec);
    den = quad::integrate_1d([&](double t) { return ap.a_xy * std::abs(std::cos(t)); }, r.theta1, r.theta2, spec);
  } else {
    num = quad::integrate_2d([&](double t, double p) { return area(t, p) * std::sin(t); }, r.theta1, r.theta2,
                             r.phi1, r.phi2, spec);
    den = quad::integrate_2d([&](double t, double) { return ap.a_xy * std::abs(std::cos(t)) * std::sin(t); },
                             r.theta1, r.theta2, r.phi1, r.phi2, spec);
  }
  if (!(den > 0.0)) throw DomainError("broadside aperture integral vanishes over the region");
  return {num / den, !r.in_first_octant()};
}

// Maximum effective aperture of an antenna with directivity d0.
inline double max_effective_aperture(double d0, double wavelength = 1.0) {
  if (!(d0 > 0.0)) throw DomainError("directivity must be positive");
  if (!(wavelength > 0.0)) throw DomainError("wavelength must be positive");
  return wavelength * wavelength * d0 / (4.0 * kPi);
}

}  // namespace arraylimits
