// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "arraylimits/feasible2d.hpp"
#include "arraylimits/geometry.hpp"
#include "arraylimits/parallel.hpp"
#include "arraylimits/quadrature.hpp"

namespace arraylimits {

// Idealized element power patterns. cosine_theta radiates into the upper
// hemisphere only and has directivity 4.
struct ElementPattern {
  enum class Kind { isotropic, cosine_theta };
  Kind kind = Kind::isotropic;

  double power(double theta) const {
    if (kind == Kind::isotropic) return 1.0;
    return std::max(std::cos(theta), 0.0);
  }
};

inline const char* to_string(ElementPattern::Kind k) {
  return k == ElementPattern::Kind::isotropic ? "isotropic" : "cosine_theta";
}

// A single lattice is treated as a one-layer stack throughout this module.
inline Stack3D as_stack(const ArrayLattice2D& lattice) { return Stack3D{lattice, 1.0, 1, {0.0, 0.0}}; }

namespace detail {

inline void validate_sim_geometry(const Stack3D& s) {
  s.layer.validate();
  if (!(s.dz > 0.0)) throw DomainError("inter-layer spacing must be positive");
  if (s.layer_count < 1) throw DomainError("layer_count must be >= 1");
}

// sum_{i=0}^{count-1} e^{j i psi} = e^{j (count-1) psi/2} sin(count psi/2) / sin(psi/2)
inline std::complex<double> geometric_sum(int count, double psi) {
  const double s = std::sin(0.5 * psi);
  if (std::abs(s) < 1e-6) {
    std::complex<double> sum{0.0, 0.0};
    for (int i = 0; i < count; ++i) sum += std::polar(1.0, i * psi);
    return sum;
  }
  return std::polar(std::sin(0.5 * count * psi) / s, 0.5 * (count - 1) * psi);
}

}  // namespace detail

// Far-field sum over all elements of e^{j(m alpha + n beta + l gamma - k r.u)}.
// The sign puts the beam of (alpha, beta) at u_x = alpha / (2 pi dx), and
// makes the inter-layer mismatch gamma - 2 pi dz cos(theta). Odd layers are
// shifted horizontally by layer_offset.
inline std::complex<double> array_factor_naive(const Stack3D& stack, const PhaseSet& ph,
                                               const SphericalDirection& dir) {
  detail::validate_sim_geometry(stack);
  const auto& l = stack.layer;
  const double ux = dir.ux(), uy = dir.uy(), uz = dir.uz();
  std::complex<double> sum{0.0, 0.0};
  for (int layer = 0; layer < stack.layer_count; ++layer) {
    const double ox = (layer % 2) ? stack.layer_offset[0] : 0.0;
    const double oy = (layer % 2) ? stack.layer_offset[1] : 0.0;
    for (int m = 0; m < l.m_count; ++m) {
      for (int n = 0; n < l.n_count; ++n) {
        const double x = m * l.dx + ox, y = n * l.dy + oy, z = layer * stack.dz;
        const double arg = m * ph.alpha + n * ph.beta + layer * ph.gamma - kWavenumber * (x * ux + y * uy + z * uz);
        sum += std::polar(1.0, arg);
      }
    }
  }
  return sum;
}

// Same sum; factorizes per axis when the layers are aligned.
inline std::complex<double> array_factor(const Stack3D& stack, const PhaseSet& ph, const SphericalDirection& dir) {
  if (stack.layer_count > 1 && (stack.layer_offset[0] != 0.0 || stack.layer_offset[1] != 0.0))
    return array_factor_naive(stack, ph, dir);
  detail::validate_sim_geometry(stack);
  const auto& l = stack.layer;
  return detail::geometric_sum(l.m_count, ph.alpha - kWavenumber * l.dx * dir.ux()) *
         detail::geometric_sum(l.n_count, ph.beta - kWavenumber * l.dy * dir.uy()) *
         detail::geometric_sum(stack.layer_count, ph.gamma - kWavenumber * stack.dz * dir.uz());
}

inline std::complex<double> array_factor(const ArrayLattice2D& lattice, const PhaseSet& ph,
                                         const SphericalDirection& dir) {
  return array_factor(as_stack(lattice), ph, dir);
}

// Upper-hemisphere direction the planar phases (alpha, beta) steer to.
inline SphericalDirection steered_direction(const ArrayLattice2D& lattice, double alpha, double beta) {
  if (!is_feasible_2d(lattice, alpha, beta)) throw DomainError("(alpha, beta) does not steer to a real direction");
  const double ux = alpha / lattice.alpha_radius();
  const double uy = beta / lattice.beta_radius();
  const double s = std::min(std::hypot(ux, uy), 1.0);
  double phi = std::atan2(uy, ux);
  if (phi < 0.0) phi += kTwoPi;
  return {std::asin(s), phi};
}

namespace detail {

inline int search_resolution(const Stack3D& s) {
  const double extent = std::max({s.layer.m_count * s.layer.dx, s.layer.n_count * s.layer.dy,
                                  s.layer_count * s.dz});
  return 32 + static_cast<int>(std::ceil(16.0 * extent));
}

}  // namespace detail

// |array factor| at the steered direction over the element count. For phases
// outside the visible region, the maximum over a spherical search grid.
inline double main_beam_intensity(const Stack3D& stack, const PhaseSet& ph) {
  detail::validate_sim_geometry(stack);
  const double count = stack.element_count();
  const double alpha = wrap_phase(ph.alpha);
  const double beta = wrap_phase(ph.beta);
  if (is_feasible_2d(stack.layer, alpha, beta)) {
    const auto dir = steered_direction(stack.layer, alpha, beta);
    return std::min(std::abs(array_factor(stack, ph, dir)) / count, 1.0);
  }
  const int nt = detail::search_resolution(stack);
  const int np = 2 * nt;
  const auto rows = parallel_map(static_cast<std::size_t>(nt + 1), [&](std::size_t i) {
    const double theta = kPi * static_cast<double>(i) / nt;
    double best = 0.0;
    for (int j = 0; j < np; ++j)
      best = std::max(best, std::abs(array_factor(stack, ph, {theta, kTwoPi * j / np})));
    return best;
  });
  return std::min(*std::max_element(rows.begin(), rows.end()) / count, 1.0);
}

namespace detail {

// Gauss-Legendre in theta with a panel edge at pi/2 (where cosine_theta has
// its kink), periodic trapezoid in phi.
struct SphereRule {
  quad::Rule1D theta;
  std::vector<double> phi;
  double phi_weight = 0.0;
};

inline SphereRule sphere_rule(const Stack3D& s, const QuadratureSpec& spec) {
  spec.validate();
  const double extent = std::max({s.layer.m_count * s.layer.dx, s.layer.n_count * s.layer.dy,
                                  s.layer_count * s.dz});
  if (spec.nodes_per_axis() < 8.0 * extent)
    throw QuadratureError("sphere under-resolved: nodes_per_axis must be >= 8 x largest array dimension");
  QuadratureSpec half = spec;
  half.panels_per_axis = std::max(1, (spec.panels_per_axis + 1) / 2);
  SphereRule r;
  r.theta = quad::composite_rule(0.0, kPi / 2, half);
  const quad::Rule1D lower = quad::composite_rule(kPi / 2, kPi, half);
  r.theta.x.insert(r.theta.x.end(), lower.x.begin(), lower.x.end());
  r.theta.w.insert(r.theta.w.end(), lower.w.begin(), lower.w.end());
  const int np = spec.nodes_per_axis();
  r.phi.resize(static_cast<std::size_t>(np));
  for (int j = 0; j < np; ++j) r.phi[j] = kTwoPi * j / np;
  r.phi_weight = kTwoPi / np;
  return r;
}

}  // namespace detail

// Total radiated power, the integral of |AF|^2 * element power over the sphere.
inline double radiated_power(const Stack3D& stack, const PhaseSet& ph, const ElementPattern& pattern,
                             const QuadratureSpec& spec = {}) {
  detail::validate_sim_geometry(stack);
  const auto rule = detail::sphere_rule(stack, spec);
  const auto rows = parallel_map(rule.theta.x.size(), [&](std::size_t i) {
    const double theta = rule.theta.x[i];
    const double ep = pattern.power(theta);
    if (ep == 0.0) return 0.0;
    double row = 0.0;
    for (double phi : rule.phi) row += std::norm(array_factor(stack, ph, {theta, phi}));
    return row * ep * std::sin(theta) * rule.phi_weight;
  });
  double total = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) total += rule.theta.w[i] * rows[i];
  return total;
}

// 4 pi |F(steered)|^2 / total power, F = array factor x element field.
inline double directivity(const Stack3D& stack, const PhaseSet& ph, const ElementPattern& pattern,
                          const QuadratureSpec& spec = {}) {
  const auto dir = steered_direction(stack.layer, wrap_phase(ph.alpha), wrap_phase(ph.beta));
  const double peak = std::norm(array_factor(stack, ph, dir)) * pattern.power(dir.theta);
  const double power = radiated_power(stack, ph, pattern, spec);
  if (!(power > 0.0)) throw QuadratureError("radiated power integral vanished");
  return 4.0 * kPi * peak / power;
}

inline double directivity(const ArrayLattice2D& lattice, const PhaseSet& ph, const ElementPattern& pattern,
                          const QuadratureSpec& spec = {}) {
  return directivity(as_stack(lattice), ph, pattern, spec);
}

enum class ScanPlane { xz, yz };

struct ScanPoint {
  double angle = 0.0;  // radians from broadside
  double directivity = 0.0;
  ElementPattern::Kind pattern_used = ElementPattern::Kind::isotropic;
  bool pattern_switched = false;  // cosine_theta replaced at grazing incidence
};

// Phases steering a stack to the given angle in the scan plane, layers matched.
inline PhaseSet scan_phases(const Stack3D& stack, ScanPlane plane, double angle) {
  const double s = std::sin(angle);
  const double c = std::cos(angle);
  PhaseSet ph;
  if (plane == ScanPlane::xz) ph.alpha = stack.layer.alpha_radius() * s;
  else ph.beta = stack.layer.beta_radius() * s;
  ph.gamma = kWavenumber * stack.dz * c;
  return ph;
}

// Directivity versus scan angle. At exactly 90 degrees the cosine_theta
// pattern has a null in the steered direction; isotropic elements are used
// there instead and the point is flagged.
inline std::vector<ScanPoint> scan_sweep(const Stack3D& stack, ScanPlane plane, const std::vector<double>& angles,
                                         const ElementPattern& pattern, const QuadratureSpec& spec = {}) {
  detail::validate_sim_geometry(stack);
  std::vector<ScanPoint> out;
  for (double a : angles) {
    if (a < -1e-12 || a > kPi / 2 + 1e-12) throw DomainError("scan angles must lie in [0, 90] degrees");
    ScanPoint p;
    p.angle = a;
    ElementPattern used = pattern;
    if (pattern.kind == ElementPattern::Kind::cosine_theta && std::abs(a - kPi / 2) < 1e-12) {
      used.kind = ElementPattern::Kind::isotropic;
      p.pattern_switched = true;
    }
    p.pattern_used = used.kind;
    p.directivity = directivity(stack, scan_phases(stack, plane, a), used, spec);
    out.push_back(p);
  }
  return out;
}

inline std::vector<ScanPoint> scan_sweep(const ArrayLattice2D& lattice, ScanPlane plane,
                                         const std::vector<double>& angles, const ElementPattern& pattern,
                                         const QuadratureSpec& spec = {}) {
  return scan_sweep(as_stack(lattice), plane, angles, pattern, spec);
}

// Normalized main-beam field amplitude over an (alpha, beta, gamma) grid.
struct IntensityMap {
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<double> gammas;
  std::vector<double> values;  // index [g][a][b]

  double at(std::size_t g, std::size_t a, std::size_t b) const {
    return values[(g * alphas.size() + a) * betas.size() + b];
  }
};

inline IntensityMap intensity_map(const Stack3D& stack, std::vector<double> alphas, std::vector<double> betas,
                                  std::vector<double> gammas) {
  IntensityMap map{std::move(alphas), std::move(betas), std::move(gammas), {}};
  const std::size_t na = map.alphas.size(), nb = map.betas.size();
  map.values = parallel_map(map.gammas.size() * na * nb, [&](std::size_t idx) {
    const std::size_t g = idx / (na * nb);
    const std::size_t a = (idx / nb) % na;
    const std::size_t b = idx % nb;
    return main_beam_intensity(stack, {map.alphas[a], map.betas[b], map.gammas[g]});
  });
  return map;
}

}  // namespace arraylimits
