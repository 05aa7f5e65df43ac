// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <shared_mutex>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "arraylimits/combining.hpp"
#include "arraylimits/feasible2d.hpp"
#include "arraylimits/geometry.hpp"
#include "arraylimits/parallel.hpp"
#include "arraylimits/quadrature.hpp"

namespace arraylimits {

// Coupling coefficients C_pq relative to a reference element. layer_tag 0 is
// the same-layer field, 1 the cross-layer field of a two-layer stack.
struct CouplingField {
  std::map<std::pair<int, int>, std::complex<double>> coefficients;
  int layer_tag = 0;
};

// Random field with the mirror symmetry of an infinite rectangular lattice,
// C_pq = C_{-p,q} = C_{p,-q}, support |p|, |q| <= support. Magnitudes are
// scaled so that sum |C_pq|^2 stays well below one.
inline CouplingField make_mirror_symmetric_field(int support, std::uint64_t seed, int layer_tag = 0) {
  if (support < 0) throw DomainError("coupling support must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  CouplingField field;
  field.layer_tag = layer_tag;
  const double scale = 0.25 / (support + 1.0);
  for (int p = 0; p <= support; ++p) {
    for (int q = 0; q <= support; ++q) {
      const std::complex<double> c{scale * uni(rng), scale * uni(rng)};
      for (int sp : {1, -1}) {
        for (int sq : {1, -1}) field.coefficients[{sp * p, sq * q}] = c;
      }
    }
  }
  return field;
}

// Infinite-array reflection |R|^2: 0 inside the feasible ellipse, 1 outside.
inline double mask_reflection(const ArrayLattice2D& lattice, double alpha, double beta) {
  return is_feasible_2d(lattice, wrap_phase(alpha), wrap_phase(beta)) ? 0.0 : 1.0;
}

// Fejer kernel sin^2(M x / 2) / (M sin^2(x / 2)); unit mean over a period.
inline double fejer_1d(int m, double x) {
  const double s = std::sin(0.5 * x);
  if (std::abs(s) < 1e-9) return static_cast<double>(m);
  const double t = std::sin(0.5 * m * x);
  return t * t / (m * s * s);
}

// |A^(MN)(rho, zeta; alpha, beta)|^2 for a uniformly excited M x N block.
inline double fejer_weight(int m, int n, double alpha, double beta, double rho, double zeta) {
  if (m < 1 || n < 1) throw DomainError("fejer_weight needs M, N >= 1");
  return fejer_1d(m, alpha - rho) * fejer_1d(n, beta - zeta);
}

// Cosine coefficients c_kl of a reflection field |R(rho, zeta)|^2 that is even
// in both arguments: |R|^2 = sum_{k,l} eps_k eps_l c_kl cos(k rho) cos(l zeta),
// eps_0 = 1, eps_k = 2.
struct ReflectionSpectrum {
  int k_count = 0;
  int l_count = 0;
  std::vector<double> coeff;  // row-major [k][l]

  double at(int k, int l) const { return coeff[static_cast<std::size_t>(k) * l_count + l]; }

  // Field convolved with the normalized M x N Fejer product kernel. The kernel
  // has Fourier weights (1 - |k|/M), so the convolution is a finite sum.
  double smoothed(int m, int n, double alpha, double beta) const {
    if (m > k_count || n > l_count) throw DomainError("spectrum too short for the requested kernel");
    std::vector<double> cb(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) cb[l] = (l == 0 ? 1.0 : 2.0) * (1.0 - static_cast<double>(l) / n) * std::cos(l * beta);
    double sum = 0.0;
    for (int k = 0; k < m; ++k) {
      double row = 0.0;
      for (int l = 0; l < n; ++l) row += at(k, l) * cb[l];
      sum += (k == 0 ? 1.0 : 2.0) * (1.0 - static_cast<double>(k) / m) * std::cos(k * alpha) * row;
    }
    return std::clamp(sum, 0.0, 1.0);
  }
};

namespace detail {

// Mask coefficients from the strip integral
// c_kl = delta_k0 delta_l0 - (1/pi^2) int_0^{x_max} cos(k x) int_0^{h(x)} cos(l y) dy dx.
inline ReflectionSpectrum compute_mask_spectrum(const ArrayLattice2D& lattice, int k_count,
                                                int l_count, const QuadratureSpec& spec) {
  const auto nodes =
      quad::clipped_ellipse_strip_nodes(lattice.alpha_radius(), lattice.beta_radius(), spec);
  ReflectionSpectrum s;
  s.k_count = k_count;
  s.l_count = l_count;
  s.coeff.assign(static_cast<std::size_t>(k_count) * l_count, 0.0);
  std::vector<double> inner(static_cast<std::size_t>(l_count));
  for (const auto& node : nodes) {
    for (int l = 0; l < l_count; ++l) inner[l] = (l == 0) ? node.h : std::sin(l * node.h) / l;
    for (int k = 0; k < k_count; ++k) {
      const double wk = node.w * std::cos(k * node.x);
      double* row = &s.coeff[static_cast<std::size_t>(k) * l_count];
      for (int l = 0; l < l_count; ++l) row[l] += wk * inner[l];
    }
  }
  for (auto& c : s.coeff) c = -c / (kPi * kPi);
  s.coeff[0] += 1.0;
  return s;
}

struct MaskKey {
  double dx, dy;
  int panels, nodes;
  auto operator<=>(const MaskKey&) const = default;
};

}  // namespace detail

// Cosine spectrum of the infinite-array mask, cached per lattice spacing and
// quadrature. Concurrent readers share a lock; population takes it exclusively.
inline std::shared_ptr<const ReflectionSpectrum> mask_spectrum(const ArrayLattice2D& lattice, int k_count,
                                                               int l_count, const QuadratureSpec& spec) {
  static std::shared_mutex mutex;
  static std::map<detail::MaskKey, std::shared_ptr<const ReflectionSpectrum>> cache;
  const detail::MaskKey key{lattice.dx, lattice.dy, spec.panels_per_axis, spec.nodes_per_panel};
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end() && it->second->k_count >= k_count && it->second->l_count >= l_count)
      return it->second;
  }
  auto fresh = std::make_shared<const ReflectionSpectrum>(
      detail::compute_mask_spectrum(lattice, k_count, l_count, spec));
  std::unique_lock lock(mutex);
  auto& slot = cache[key];
  if (!slot || slot->k_count < k_count || slot->l_count < l_count) slot = fresh;
  return slot;
}

namespace detail {

inline void require_kernel_resolution(int m, int n, const QuadratureSpec& spec) {
  spec.validate();
  if (m < 1 || n < 1) throw DomainError("finite excitation needs M, N >= 1");
  if (spec.panels_per_axis < 4 * std::max(m, n))
    throw QuadratureError("panels_per_axis must be at least 4 * max(M, N) to resolve the kernel main lobe");
}

}  // namespace detail

// |R^(MN)(alpha, beta)|^2: the infinite-array mask seen through a finite
// M x N uniform excitation (mask convolved with the Fejer product kernel).
// Evaluated through the mask's cosine spectrum.
inline double finite_excitation_reflection(const ArrayLattice2D& lattice, int m, int n, double alpha,
                                           double beta, const QuadratureSpec& spec = {}) {
  lattice.validate();
  detail::require_kernel_resolution(m, n, spec);
  return mask_spectrum(lattice, m, n, spec)->smoothed(m, n, alpha, beta);
}

// Same quantity by direct 2D quadrature of mask x kernel over the full period.
// Independent of the spectral path; used to cross-check it.
inline double finite_excitation_reflection_quadrature(const ArrayLattice2D& lattice, int m, int n,
                                                      double alpha, double beta,
                                                      const QuadratureSpec& spec = {}) {
  lattice.validate();
  detail::require_kernel_resolution(m, n, spec);
  if (!lattice.grating_lobe_free()) throw DomainError("direct kernel quadrature requires dx, dy <= lambda/2");
  const double a = lattice.alpha_radius();
  const double b = lattice.beta_radius();
  double sum = 0.0;
  // The mask is even in both arguments: fold the period onto four quadrants.
  for (double sx : {1.0, -1.0}) {
    for (double sy : {1.0, -1.0}) {
      auto integrand = [&](double rho, double zeta) {
        return mask_reflection(lattice, sx * rho, sy * zeta) * fejer_weight(m, n, alpha, beta, sx * rho, sy * zeta);
      };
      sum += quad::integrate_quarter_ellipse(
          [&](double rho, double zeta, double) { return integrand(rho, zeta); }, a, b, spec);
      sum += quad::integrate_quarter_ellipse_complement(integrand, a, b, spec);
    }
  }
  return sum / (4.0 * kPi * kPi);
}

// Two-layer (or L-layer) analytic reflection: inside the feasible region the
// layers add with mismatch varphi = gamma - 2 pi dz cos(theta); the share that
// fails to add coherently is reflected. Outside the region everything is.
inline double analytic_reflection_3d(const Stack3D& stack, const PhaseSet& phases) {
  const double alpha = wrap_phase(phases.alpha);
  const double beta = wrap_phase(phases.beta);
  const auto& lat = stack.layer;
  if (!is_feasible_2d(lat, alpha, beta)) return 1.0;
  const double x = alpha / lat.alpha_radius();
  const double y = beta / lat.beta_radius();
  const double cos_theta = std::sqrt(std::max(0.0, 1.0 - x * x - y * y));
  const double varphi = phases.gamma - kWavenumber * stack.dz * cos_theta;
  const double f = combining_factor(stack.layer_count, varphi) / stack.layer_count;
  return std::clamp(1.0 - f * f, 0.0, 1.0);
}

// Average of analytic_reflection_3d over [0, pi]^2 at fixed gamma:
// 1 - (1/pi^2) * integral over the feasible region of the coherent share.
// For two layers this is 1 - pi dx dy / 2 - (1/pi^2) ∬_D cos(varphi) / 2.
inline double mean_reflection_3d(const Stack3D& stack, double gamma, const QuadratureSpec& spec = {}) {
  stack.validate();
  const auto& lat = stack.layer;
  if (!lat.grating_lobe_free()) throw DomainError("mean_reflection_3d requires dx, dy <= lambda/2");
  const double kz = kWavenumber * stack.dz;
  const double a = lat.alpha_radius();
  const double b = lat.beta_radius();
  if (stack.layer_count == 2) {
    const double cos_term = quad::integrate_quarter_ellipse(
        [&](double, double, double cos_theta) { return 0.5 * std::cos(gamma - kz * cos_theta); }, a, b, spec);
    return 1.0 - kPi * lat.dx * lat.dy / 2.0 - cos_term / (kPi * kPi);
  }
  const double lz = stack.layer_count;
  const double coherent = quad::integrate_quarter_ellipse(
      [&](double, double, double cos_theta) {
        const double f = combining_factor(stack.layer_count, gamma - kz * cos_theta) / lz;
        return f * f;
      },
      a, b, spec);
  return 1.0 - coherent / (kPi * kPi);
}

// Cosine spectrum of a gamma-slice of the analytic 3D reflection,
// |R|^2 = 1 - 1_D * coherent(cos theta). Over the quarter ellipse the angular
// integral of cos(k rho) cos(l zeta) collapses to (pi/2) J0(s * rho_kl), which
// leaves one radial integral per coefficient.
inline ReflectionSpectrum slice_spectrum_3d(const Stack3D& stack, double gamma, int k_count, int l_count,
                                            const QuadratureSpec& spec = {}) {
  stack.validate();
  const auto& lat = stack.layer;
  if (!lat.grating_lobe_free()) throw DomainError("3D slice spectrum requires dx, dy <= lambda/2");
  const double a = lat.alpha_radius();
  const double b = lat.beta_radius();
  const double kz = kWavenumber * stack.dz;
  const double lz = stack.layer_count;
  const quad::Rule1D rule = quad::composite_rule(0.0, kPi / 2, spec);
  std::vector<double> sin_t(rule.x.size()), weight(rule.x.size());
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double st = std::sin(rule.x[i]);
    const double ct = std::cos(rule.x[i]);
    const double f = combining_factor(stack.layer_count, gamma - kz * ct) / lz;
    sin_t[i] = st;
    weight[i] = rule.w[i] * f * f * st * ct;
  }
  ReflectionSpectrum s;
  s.k_count = k_count;
  s.l_count = l_count;
  s.coeff.assign(static_cast<std::size_t>(k_count) * l_count, 0.0);
  const double scale = a * b * (kPi / 2) / (kPi * kPi);
  for (int k = 0; k < k_count; ++k) {
    for (int l = 0; l < l_count; ++l) {
      const double rho = std::hypot(k * a, l * b);
      double sum = 0.0;
      for (std::size_t i = 0; i < sin_t.size(); ++i) sum += weight[i] * std::cyl_bessel_j(0.0, rho * sin_t[i]);
      s.coeff[static_cast<std::size_t>(k) * l_count + l] = ((k == 0 && l == 0) ? 1.0 : 0.0) - scale * sum;
    }
  }
  return s;
}

// Fourier synthesis R(alpha, beta, gamma) = sum C0_pq e^{j(p a + q b)} + C1_pq e^{j(p a + q b + gamma)}.
inline std::complex<double> reflection_from_coupling(std::span<const CouplingField> fields, const PhaseSet& phases) {
  std::complex<double> sum{0.0, 0.0};
  for (const auto& field : fields) {
    for (const auto& [pq, c] : field.coefficients) {
      const double arg = pq.first * phases.alpha + pq.second * phases.beta + field.layer_tag * phases.gamma;
      sum += c * std::polar(1.0, arg);
    }
  }
  return sum;
}

struct ParsevalResult {
  double lhs = 0.0;  // (1/pi^2) ∬_[0,pi]^2 |R|^2, averaged over gamma in {0, pi} when layered
  double rhs = 0.0;  // sum of |C_pq|^2 over all fields
};

// Energy identity between reflection and coupling coefficients. The
// cross-layer correlation terms cancel in the gamma in {0, pi} average.
inline ParsevalResult parseval_check(std::span<const CouplingField> fields, const QuadratureSpec& spec = {}) {
  ParsevalResult out;
  bool layered = false;
  for (const auto& f : fields) {
    layered = layered || f.layer_tag != 0;
    for (const auto& [pq, c] : f.coefficients) out.rhs += std::norm(c);
  }
  std::vector<double> gammas{0.0};
  if (layered) gammas.push_back(kPi);

  const quad::Rule1D rule = quad::composite_rule(0.0, kPi, spec);
  const std::size_t nodes = rule.x.size();
  for (double gamma : gammas) {
    // Merge all fields into D_pq = sum_fields C_pq e^{j tag gamma}, grouped by p.
    std::map<int, std::vector<std::pair<int, std::complex<double>>>> by_p;
    for (const auto& f : fields) {
      const auto phase = std::polar(1.0, f.layer_tag * gamma);
      for (const auto& [pq, c] : f.coefficients) by_p[pq.first].push_back({pq.second, c * phase});
    }
    if (by_p.empty()) continue;
    std::vector<int> ps;
    for (const auto& [p, _] : by_p) ps.push_back(p);
    // e^{j p alpha} table
    std::vector<std::complex<double>> ep(ps.size() * nodes);
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t a = 0; a < nodes; ++a) ep[i * nodes + a] = std::polar(1.0, ps[i] * rule.x[a]);
    const auto rows = parallel_map(nodes, [&](std::size_t bi) {
      const double beta = rule.x[bi];
      std::vector<std::complex<double>> h(ps.size());
      for (std::size_t i = 0; i < ps.size(); ++i) {
        std::complex<double> acc{0.0, 0.0};
        for (const auto& [q, d] : by_p.at(ps[i])) acc += d * std::polar(1.0, q * beta);
        h[i] = acc;
      }
      double row = 0.0;
      for (std::size_t a = 0; a < nodes; ++a) {
        std::complex<double> r{0.0, 0.0};
        for (std::size_t i = 0; i < ps.size(); ++i) r += h[i] * ep[i * nodes + a];
        row += rule.w[a] * std::norm(r);
      }
      return row;
    });
    double total = 0.0;
    for (std::size_t bi = 0; bi < nodes; ++bi) total += rule.w[bi] * rows[bi];
    out.lhs += total / (kPi * kPi) / static_cast<double>(gammas.size());
  }
  return out;
}

// A reflection model bound to its geometry, evaluable anywhere in phase space.
struct ReflectionField {
  enum class Model { infinite_mask, finite_excitation, analytic_3d };

  Model model = Model::infinite_mask;
  ArrayLattice2D lattice;
  int m = 1;  // finite_excitation block size
  int n = 1;
  QuadratureSpec quad;
  double dz = 0.5;  // analytic_3d stack
  int layer_count = 2;

  double operator()(double alpha, double beta, double gamma = 0.0) const {
    switch (model) {
      case Model::infinite_mask:
        return mask_reflection(lattice, alpha, beta);
      case Model::finite_excitation:
        return finite_excitation_reflection(lattice, m, n, alpha, beta, quad);
      case Model::analytic_3d:
        return analytic_reflection_3d(Stack3D{lattice, dz, layer_count, {0.0, 0.0}}, {alpha, beta, gamma});
    }
    return 1.0;
  }
};

}  // namespace arraylimits
