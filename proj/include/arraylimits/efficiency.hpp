// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "arraylimits/feasible2d.hpp"
#include "arraylimits/gain.hpp"
#include "arraylimits/parallel.hpp"
#include "arraylimits/reflection.hpp"

namespace arraylimits {

enum class EfficiencyModel { infinite_2d, finite_2d, infinite_3d, finite_3d, approx_3d };

inline const char* to_string(EfficiencyModel m) {
  switch (m) {
    case EfficiencyModel::infinite_2d: return "infinite_2d";
    case EfficiencyModel::finite_2d: return "finite_2d";
    case EfficiencyModel::infinite_3d: return "infinite_3d";
    case EfficiencyModel::finite_3d: return "finite_3d";
    case EfficiencyModel::approx_3d: return "approx_3d";
  }
  return "unknown";
}

// One term of 1 - eta. Sample terms carry their DFT indices and phases;
// aggregate terms leave m = n = -1.
struct Contribution {
  int m = -1;
  int n = -1;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  bool feasible = false;
  double reflection = 0.0;  // |R|^2 at the sample
  double value = 0.0;       // share of 1 - eta
};

struct EfficiencyReport {
  double eta = 0.0;
  EfficiencyModel model = EfficiencyModel::infinite_2d;
  std::vector<Contribution> breakdown;
  std::vector<std::string> notes;
};

inline double eta_infinite_2d(const ArrayLattice2D& lattice) { return feasible_fraction_infinite(lattice); }

// Theorem-1 style bound for a finite M x N array: feasible DFT samples
// reflect nothing; infeasible ones reflect the finite-excitation estimate.
inline EfficiencyReport eta_finite_2d(const ArrayLattice2D& lattice, const QuadratureSpec& spec = {}) {
  const SampleGrid grid = build_sample_grid(lattice);
  const int m = lattice.m_count;
  const int n = lattice.n_count;
  const double mn = static_cast<double>(lattice.element_count());
  EfficiencyReport rep;
  rep.model = EfficiencyModel::finite_2d;
  if (grid.feasible_count() < grid.points.size()) {
    detail::require_kernel_resolution(m, n, spec);
    mask_spectrum(lattice, m, n, spec);  // populate once before the parallel pass
  }
  rep.breakdown = parallel_map(grid.points.size(), [&](std::size_t i) {
    const SamplePoint& p = grid.points[i];
    Contribution c{p.m, p.n, p.alpha, p.beta, 0.0, p.feasible, 0.0, 0.0};
    if (!p.feasible) {
      c.reflection = finite_excitation_reflection(lattice, m, n, p.alpha, p.beta, spec);
      c.value = c.reflection / mn;
    }
    return c;
  });
  double lost = 0.0;
  for (const auto& c : rep.breakdown) lost += c.value;
  rep.eta = 1.0 - lost;
  return rep;
}

namespace detail {

inline void require_two_layer_stack(const Stack3D& stack) {
  stack.validate();
  if (stack.layer_count != 2) throw DomainError("the gamma in {0, pi} average needs exactly two layers");
  if (!stack.layer.grating_lobe_free()) throw DomainError("3D efficiency requires dx, dy <= lambda/2");
}

}  // namespace detail

// Half the planar limit: two layers share the same visible region.
inline double eta_infinite_3d(const Stack3D& stack) {
  detail::require_two_layer_stack(stack);
  return kPi * stack.layer.dx * stack.layer.dy / 2.0;
}

// 1 - (R_hat(0) + R_hat(pi)) / 2 evaluated by quadrature.
inline double eta_infinite_3d_numerical(const Stack3D& stack, const QuadratureSpec& spec = {}) {
  detail::require_two_layer_stack(stack);
  return 1.0 - 0.5 * (mean_reflection_3d(stack, 0.0, spec) + mean_reflection_3d(stack, kPi, spec));
}

// Finite two-layer bound: DFT sampling of the analytic reflection at gamma = 0
// and gamma = pi, each slice weighted 1 / (2 M N). Infeasible samples see the
// slice through the finite-excitation kernel.
inline EfficiencyReport eta_finite_3d(const Stack3D& stack, const QuadratureSpec& spec = {}) {
  detail::require_two_layer_stack(stack);
  const auto& lat = stack.layer;
  const SampleGrid grid = build_sample_grid(lat);
  const int m = lat.m_count;
  const int n = lat.n_count;
  const double weight = 1.0 / (2.0 * lat.element_count());
  const bool any_infeasible = grid.feasible_count() < grid.points.size();
  if (any_infeasible) detail::require_kernel_resolution(m, n, spec);

  EfficiencyReport rep;
  rep.model = EfficiencyModel::finite_3d;
  for (double gamma : {0.0, kPi}) {
    ReflectionSpectrum slice;
    if (any_infeasible) slice = slice_spectrum_3d(stack, gamma, m, n, spec);
    auto terms = parallel_map(grid.points.size(), [&](std::size_t i) {
      const SamplePoint& p = grid.points[i];
      Contribution c{p.m, p.n, p.alpha, p.beta, gamma, p.feasible, 0.0, 0.0};
      c.reflection = p.feasible ? analytic_reflection_3d(stack, {p.alpha, p.beta, gamma})
                                : slice.smoothed(m, n, p.alpha, p.beta);
      c.value = c.reflection * weight;
      return c;
    });
    rep.breakdown.insert(rep.breakdown.end(), terms.begin(), terms.end());
  }
  double lost = 0.0;
  for (const auto& c : rep.breakdown) lost += c.value;
  rep.eta = 1.0 - lost;
  return rep;
}

// Projection estimate (1/Lz) (1 + (A_xz + A_yz) / A_xy) eta_2D. Reported with
// a warning at small layer spacing, where element patterns distort and the
// estimate is known to break down.
inline EfficiencyReport approx_3d_report(const Stack3D& stack) {
  const ApertureSet ap = apertures_of(stack);
  if (!(ap.a_xy > 0.0)) throw DomainError("projection estimate needs a_xy > 0 (M, N >= 2)");
  EfficiencyReport rep;
  rep.model = EfficiencyModel::approx_3d;
  rep.eta = (1.0 + (ap.a_xz + ap.a_yz) / ap.a_xy) * eta_infinite_2d(stack.layer) / stack.layer_count;
  rep.breakdown.push_back({-1, -1, 0.0, 0.0, 0.0, false, 0.0, 1.0 - rep.eta});
  if (stack.dz <= 0.25)
    rep.notes.push_back("unreliable: inter-layer spacing <= 0.25 lambda distorts element patterns");
  return rep;
}

inline double eta_approx_3d(const Stack3D& stack) { return approx_3d_report(stack).eta; }

}  // namespace arraylimits
