// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "arraylimits/combining.hpp"
#include "arraylimits/feasible3d.hpp"
#include "oracles.hpp"

using namespace arraylimits;

namespace {
Stack3D stack_with(double dz, double d = 0.5) { return {{16, 16, d, d, 1.0}, dz, 2, {0, 0}}; }
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

TEST(Combining, PinnedExamples) {
  EXPECT_NEAR(combining_factor(2, 0.0), 2.0, 1e-15);
  EXPECT_NEAR(combining_factor(2, kPi), 0.0, 1e-15);
  EXPECT_NEAR(combining_factor(3, 2 * kPi / 3), 0.0, 1e-15);
  for (double phi : {0.1, 1.0, 2.5})
    EXPECT_NEAR(combining_factor(2, phi), std::sqrt(2 + 2 * std::cos(phi)), 1e-14);
  for (int l : {1, 2, 3, 5})
    for (double phi : {0.0, 0.3, 1.7}) EXPECT_NEAR(combining_factor(l, phi), oracle::combining(l, phi), 1e-13);
  EXPECT_THROW(combining_factor(0, 0.0), DomainError);
}

TEST(PhaseMismatch, PinnedExamples) {
  EXPECT_EQ(phase_mismatch(stack_with(0.5), 0.4, 0.4), 0.0);
  EXPECT_NEAR(phase_mismatch(stack_with(0.5), kPi / 2, 0.0), -kPi, 1e-15);
  EXPECT_NEAR(phase_mismatch(stack_with(0.75), kPi / 3, kPi / 2), 0.75 * kPi, 1e-14);
}

TEST(ThetaBounds, PinnedExamples) {
  auto [lo, hi] = theta_bounds(stack_with(0.5), kPi / 3, {kSqrt2});
  EXPECT_NEAR(lo, 0.0, 1e-7);
  EXPECT_NEAR(hi, kPi / 2, 1e-15);
  std::tie(lo, hi) = theta_bounds(stack_with(0.5), kPi / 2, {kSqrt2});
  EXPECT_NEAR(lo, kPi / 3, 1e-15);
  EXPECT_NEAR(hi, 2 * kPi / 3, 1e-15);
  for (double xi : {0.2, 0.9, 1.4}) {
    std::tie(lo, hi) = theta_bounds(stack_with(0.6), xi, {2.0});
    EXPECT_NEAR(lo, xi, 1e-7);
    EXPECT_NEAR(hi, xi, 1e-7);
  }
}

TEST(Annulus, PinnedExamples) {
  const auto full = annulus(stack_with(0.5), kPi / 3, {kSqrt2});
  EXPECT_NEAR(full.r_minus, 0.0, 1e-6);
  EXPECT_NEAR(full.r_plus, kPi, 1e-15);
  const auto thin = annulus(stack_with(0.5), 1.0, {2.0});
  EXPECT_NEAR(thin.r_minus, thin.r_plus, 1e-7);
  EXPECT_NEAR(thin.area, 0.0, 1e-12);
  // Unclamped ring area at t = 1, cos(xi) = 1/2.
  EXPECT_NEAR(closed_form_area(stack_with(0.5), kPi / 3, {1.0}), std::pow(kPi, 3) / 3, 1e-12);
  EXPECT_THROW(annulus({{4, 4, 0.6, 0.6, 1.0}, 0.5, 2, {0, 0}}, 1.0, {1.0}), DomainError);
  EXPECT_THROW(annulus({{4, 4, 0.5, 0.4, 1.0}, 0.5, 2, {0, 0}}, 1.0, {1.0}), DomainError);
}

TEST(Annulus, CaseTagsFollowClampEvents) {
  const auto s = stack_with(0.5);
  EXPECT_EQ(annulus(s, std::acos(0.5), {1.8}).case_tag, AnnulusCase::medium);
  EXPECT_EQ(annulus(s, std::acos(0.95), {1.8}).case_tag, AnnulusCase::around_z);
  EXPECT_EQ(annulus(s, std::acos(0.05), {1.8}).case_tag, AnnulusCase::around_xy);
  const auto m = annulus(s, std::acos(0.5), {1.8});
  EXPECT_NEAR(m.area, kPi / 4 * (m.r_plus * m.r_plus - m.r_minus * m.r_minus), 1e-12);
  EXPECT_EQ(m.residual_area, 0.0);
  const auto xy = annulus(s, std::acos(0.05), {1.8});
  EXPECT_GT(xy.residual_area, 0.0);
  EXPECT_NEAR(xy.r_plus, kPi, 1e-15);
}

TEST(Annulus, InvariantsOverRandomInputs) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double d = 0.2 + 0.3 * u(rng);
    const auto s = stack_with(0.2 + u(rng), d);
    const auto a = annulus(s, u(rng) * kPi / 2, {2 * u(rng)});
    EXPECT_LE(a.r_minus, a.r_plus);
    EXPECT_GE(a.r_minus, 0.0);
    EXPECT_LE(a.r_plus, kTwoPi * d * std::sqrt(2.0));
    EXPECT_GE(a.area, -1e-12);
    EXPECT_LE(a.area, kPi / 4 * a.r_plus * a.r_plus + 1e-9);
    EXPECT_LE(a.theta_minus, a.theta_plus);
  }
}

// Cells of [0, pi]^2 (n x n midpoints) where the annulus and the direct
// combining test disagree, as a fraction of the square.
double disagreement(const Stack3D& s, double cos_xi, double t, int n) {
  const auto ring = annulus(s, std::acos(cos_xi), {t});
  const double kz = kTwoPi * s.dz, r = kTwoPi * s.layer.dx;
  int bad = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = kPi * (i + 0.5) / n, b = kPi * (j + 0.5) / n;
      const double rho2 = (a * a + b * b) / (r * r);
      bool direct = false;
      if (rho2 <= 1) direct = oracle::combining(2, kz * cos_xi - kz * std::sqrt(1 - rho2)) >= t;
      bad += (direct != ring.contains(a, b)) ? 1 : 0;
    }
  }
  return double(bad) / (double(n) * n);
}

TEST(Annulus, AgreesWithCombiningGrid) {
  for (double t : {1.0, kSqrt2, 1.8})
    for (double c : {0.25, 0.5, 0.75}) EXPECT_LT(disagreement(stack_with(0.5), c, t, 256), 0.02) << t << " " << c;
}

TEST(Annulus, InnerRadiusNearlyLinearInThreshold) {
  const auto s = stack_with(0.5);
  std::vector<double> ts, rs;
  for (int i = 0; i <= 20; ++i) {
    ts.push_back(1.5 + 0.5 * i / 20);
    rs.push_back(annulus(s, std::acos(0.25), {ts.back()}).r_minus);
  }
  double mt = 0, mr = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) mt += ts[i] / ts.size(), mr += rs[i] / rs.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxy += (ts[i] - mt) * (rs[i] - mr);
    sxx += (ts[i] - mt) * (ts[i] - mt);
    syy += (rs[i] - mr) * (rs[i] - mr);
  }
  EXPECT_GT(sxy * sxy / (sxx * syy), 0.98);
}

double grid_volume(const Stack3D& s, double t, int n) {
  const double kz = kTwoPi * s.dz, r = kTwoPi * s.layer.dx;
  long hits = 0;
  for (int k = 0; k < n; ++k) {
    const double g = kPi * (k + 0.5) / n;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double a = kPi * (i + 0.5) / n, b = kPi * (j + 0.5) / n;
        const double rho2 = (a * a + b * b) / (r * r);
        if (rho2 <= 1 && oracle::combining(2, g - kz * std::sqrt(1 - rho2)) >= t) ++hits;
      }
    }
  }
  return double(hits) / (double(n) * n * n);
}

TEST(Volume, MatchesGridCount) {
  const auto s = stack_with(0.5);
  for (double t : {0.0, 0.5, 1.0, kSqrt2}) EXPECT_NEAR(feasible_volume(s, {t}), grid_volume(s, t, 64), 1e-2) << t;
  EXPECT_EQ(feasible_volume(s, {2.0}), 0.0);
  EXPECT_NEAR(feasible_volume(s, {0.0}), kPi / 4, 1e-12);
}

TEST(Volume, NonIncreasingInThreshold) {
  for (double dz : {0.3, 0.5, 0.9}) {
    double prev = 1.0;
    for (int i = 1; i <= 7; ++i) {
      const double v = feasible_volume(stack_with(dz), {0.25 * i});
      EXPECT_LE(v, prev + 1e-12);
      EXPECT_GE(v, 0.0);
      prev = v;
    }
  }
}

TEST(Codebook, PinnedExamples) {
  const auto book = build_codebook(stack_with(0.5), {kSqrt2});
  ASSERT_EQ(book.region_count, 2);
  ASSERT_EQ(book.entries.size(), 2u);
  EXPECT_NEAR(std::cos(book.entries[0].xi), 0.5, 1e-15);
  EXPECT_NEAR(book.entries[0].xi, kPi / 3, 1e-15);
  EXPECT_NEAR(std::cos(book.entries[1].xi), -0.5, 1e-15);
  EXPECT_EQ(build_codebook(stack_with(1.0), {kSqrt2}).region_count, 3);
  EXPECT_EQ(build_codebook(stack_with(0.75), {kSqrt2}).region_count, 2);
  EXPECT_THROW(build_codebook(stack_with(0.5), {2.0}), DomainError);
  EXPECT_THROW(build_codebook(stack_with(0.5), {0.0}), DomainError);
}

TEST(Codebook, CountAndTilingAgainstSequentialLoop) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double dz = 0.3 + 1.2 * u(rng);
    const double t = 0.6 + 1.3 * u(rng);
    const auto book = build_codebook(stack_with(dz), {t});
    EXPECT_EQ(book.region_count, oracle::tiling_count(dz, t)) << dz << " " << t;
    EXPECT_NEAR(book.entries.front().annulus.theta_minus, 0.0, 1e-12);
    EXPECT_GE(book.entries.back().annulus.theta_plus, kPi / 2);
    for (std::size_t p = 1; p < book.entries.size(); ++p)
      EXPECT_NEAR(book.entries[p - 1].annulus.theta_plus, book.entries[p].annulus.theta_minus, 1e-12);
    for (const auto& e : book.entries) EXPECT_NEAR(e.gamma, kTwoPi * dz * std::cos(e.xi), 1e-12);
  }
}

TEST(Codebook, EveryUpperDirectionClearsThresholdForSomeEntry) {
  const auto s = stack_with(0.75);
  const Threshold t{1.6};
  const auto book = build_codebook(s, t);
  for (int i = 0; i <= 900; ++i) {
    const double theta = 0.5 * kPi * i / 900;
    double best = 0.0;
    for (const auto& e : book.entries)
      best = std::max(best, combining_factor(2, phase_mismatch(s, e.xi, theta)));
    EXPECT_GE(best, t.t - 1e-9) << theta;
  }
}
