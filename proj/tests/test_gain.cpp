// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "arraylimits/gain.hpp"
#include "oracles.hpp"

using namespace arraylimits;

TEST(Apertures, HullConvention) {
  const auto ap = apertures_of({{5, 5, 0.5, 0.5, 1.0}, 0.75, 2, {0, 0}});
  EXPECT_DOUBLE_EQ(ap.a_xy, 4.0);
  EXPECT_DOUBLE_EQ(ap.a_xz, 1.5);
  EXPECT_DOUBLE_EQ(ap.a_yz, 1.5);
}

TEST(EffectiveArea, PinnedExamples) {
  const ApertureSet ap{4.0, 1.5, 1.5};
  EXPECT_DOUBLE_EQ(effective_area(ap, {0.0, 0.3}), 4.0);
  EXPECT_NEAR(effective_area(ap, {kPi / 2, kPi / 2}), 1.5, 1e-15);
  EXPECT_NEAR(effective_area(ap, {kPi / 4, kPi / 4}), 2 * std::sqrt(2.0) + 1.5, 1e-14);
  EXPECT_THROW(effective_area(ap, {2.0, 0.1}), DomainError);
  EXPECT_THROW(effective_area(ap, {0.5, 3.0}), DomainError);
}

TEST(AvgGain, HeadlineNumbers) {
  EXPECT_EQ(avg_gain_ratio({4.0, 1.5, 0.0}, {0.0, kPi / 2, kPi / 2, kPi / 2}), 1.375);
  EXPECT_EQ(avg_gain_ratio({4.0, 1.5, 1.5}, {0.0, kPi / 2, kPi / 2, kPi / 2}), 1.375);
  const ApertureSet ap{4.0, 1.5, 1.2};
  EXPECT_NEAR(avg_gain_ratio(ap, AngularRegion{}), 1 + 2.7 / 4, 1e-15);
  EXPECT_EQ(avg_gain_ratio({3.0, 0.0, 0.0}, {0.2, 1.0, 0.1, 0.4}), 1.0);
}

TEST(AvgGain, ClosedFormMatchesQuadratureOnRandomRegions) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    double t1 = u(rng) * kPi / 2, t2 = u(rng) * kPi / 2, p1 = u(rng) * kPi / 2, p2 = u(rng) * kPi / 2;
    if (t1 > t2) std::swap(t1, t2);
    if (p1 > p2) std::swap(p1, p2);
    const ApertureSet ap{0.5 + 4 * u(rng), 3 * u(rng), 3 * u(rng)};
    const AngularRegion r{t1, t2, p1, p2};
    const double closed = avg_gain_ratio(ap, r);
    const double quadv = avg_gain_ratio_quadrature(ap, r, QuadratureSpec{64, 8});
    EXPECT_NEAR(closed / quadv - 1.0, 0.0, 1e-9) << i;
    EXPECT_GE(closed, 1.0);
    // Long-double Simpson of the same integrals, separable form.
    const long double num_t =
        oracle::simpson([](long double t) { return std::sin(t) * std::sin(t); }, t1, t2, 4000);
    const long double den_t =
        oracle::simpson([](long double t) { return std::cos(t) * std::sin(t); }, t1, t2, 4000);
    const long double vert =
        oracle::simpson([&](long double p) { return ap.a_xz * std::sin(p) + ap.a_yz * std::cos(p); }, p1, p2, 4000);
    const long double ref = 1.0L + vert * num_t / (ap.a_xy * (p2 - p1) * den_t);
    EXPECT_NEAR(closed / static_cast<double>(ref) - 1.0, 0.0, 1e-9) << i;
  }
}

TEST(AvgGain, DegenerateAzimuthIsPlanarCut) {
  const ApertureSet ap{4.0, 1.5, 0.7};
  const AngularRegion cut{0.2, 1.3, 0.6, 0.6};
  EXPECT_NEAR(avg_gain_ratio(ap, cut), avg_gain_ratio_quadrature(ap, cut), 1e-12);
  EXPECT_THROW(avg_gain_ratio(ap, {0.5, 0.5, 0.0, 1.0}), DomainError);
  EXPECT_THROW(avg_gain_ratio({0.0, 1.0, 1.0}, AngularRegion{}), DomainError);
}

TEST(AvgGain, ExtendedRegionsUseMagnitudes) {
  const ApertureSet ap{4.0, 1.5, 1.5};
  const auto in_octant = avg_gain_ratio_extended(ap, AngularRegion{});
  EXPECT_FALSE(in_octant.extended);
  EXPECT_NEAR(in_octant.ratio, 1.75, 1e-12);
  // The full upper hemisphere repeats the octant by symmetry.
  const auto hemi = avg_gain_ratio_extended(ap, {0.0, kPi / 2, 0.0, kTwoPi});
  EXPECT_TRUE(hemi.extended);
  EXPECT_NEAR(hemi.ratio, 1.75, 1e-12);
}

TEST(MaxEffectiveAperture, Identities) {
  EXPECT_NEAR(max_effective_aperture(4 * kPi, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(max_effective_aperture(1.0, 1.0), 0.0795774715459477, 1e-15);
  EXPECT_NEAR(max_effective_aperture(1.0, 2.0), 4 * 0.0795774715459477, 1e-15);
  EXPECT_THROW(max_effective_aperture(0.0), DomainError);
}
