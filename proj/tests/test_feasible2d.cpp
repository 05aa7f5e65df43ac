// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "arraylimits/feasible2d.hpp"
#include "oracles.hpp"

using namespace arraylimits;

TEST(IsFeasible, PinnedExamples) {
  const ArrayLattice2D lat{};
  EXPECT_TRUE(is_feasible_2d(lat, 0.0, 0.0));
  EXPECT_FALSE(is_feasible_2d(lat, kPi, kPi));
  EXPECT_TRUE(is_feasible_2d(lat, kPi, 0.0));
}

TEST(IsFeasible, MirrorSymmetric) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  const ArrayLattice2D lat{1, 1, 0.4, 0.3, 1.0};
  for (int i = 0; i < 5000; ++i) {
    const double a = u(rng), b = u(rng);
    const bool f = is_feasible_2d(lat, a, b);
    EXPECT_EQ(f, is_feasible_2d(lat, -a, b));
    EXPECT_EQ(f, is_feasible_2d(lat, a, -b));
  }
}

TEST(SampleGrid, SmallGrids) {
  auto g = build_sample_grid({1, 1, 0.5, 0.5, 1.0});
  ASSERT_EQ(g.points.size(), 1u);
  EXPECT_TRUE(g.points[0].feasible);
  g = build_sample_grid({2, 2, 0.5, 0.5, 1.0});
  ASSERT_EQ(g.points.size(), 4u);
  EXPECT_EQ(g.feasible_count(), 3u);
  for (const auto& p : g.points) EXPECT_EQ(p.feasible, !(p.m == 1 && p.n == 1));
}

TEST(SampleGrid, CountsMatchBruteForceDisk) {
  for (int m : {3, 10, 17}) {
    const auto g = build_sample_grid({m, m, 0.5, 0.5, 1.0});
    std::size_t count = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        // Signed index nearest zero, i.e. the wrapped sample.
        const int si = (2 * i > m) ? i - m : i;
        const int sj = (2 * j > m) ? j - m : j;
        const double a = 2 * oracle::pi * si / m, b = 2 * oracle::pi * sj / m;
        count += (a * a + b * b <= oracle::pi * oracle::pi) ? 1 : 0;
      }
    }
    EXPECT_EQ(g.feasible_count(), count) << m;
  }
}

TEST(SampleGrid, FractionApproachesHannan) {
  const double target = kPi / 4;
  double prev_gap = 1.0;
  for (int m : {8, 16, 32, 64}) {
    const auto g = build_sample_grid({m, m, 0.5, 0.5, 1.0});
    const double gap = std::abs(double(g.feasible_count()) / (m * m) - target);
    EXPECT_LE(gap, prev_gap + 2.0 / m) << m;
    prev_gap = gap;
  }
  EXPECT_LT(prev_gap, 0.05);
}

TEST(FeasibleFraction, ClosedForm) {
  EXPECT_NEAR(feasible_fraction_infinite({1, 1, 0.5, 0.5, 1.0}), 0.785398163397448, 1e-15);
  EXPECT_NEAR(feasible_fraction_infinite({1, 1, 0.25, 0.25, 1.0}), kPi / 16, 1e-15);
  EXPECT_NEAR(feasible_fraction_infinite({1, 1, 0.5, 0.25, 1.0}), kPi / 8, 1e-15);
  EXPECT_THROW(feasible_fraction_infinite({1, 1, 0.6, 0.5, 1.0}), DomainError);
}

TEST(FeasibleFraction, NumericalMatchesClosedFormAndGrid) {
  const ArrayLattice2D lat{1, 1, 0.5, 0.35, 1.0};
  EXPECT_NEAR(feasible_fraction_numerical(lat), feasible_fraction_infinite(lat), 1e-12);
  // Grating regime: compare with a fine grid count of ellipse ∩ square.
  const ArrayLattice2D wide{1, 1, 0.7, 0.55, 1.0};
  const double a = 2 * oracle::pi * 0.7, b = 2 * oracle::pi * 0.55;
  const double grid = oracle::midpoint_2d(
      [&](double x, double y) { return (x / a) * (x / a) + (y / b) * (y / b) <= 1 ? 1.0 : 0.0; }, 0, oracle::pi, 0,
      oracle::pi, 2000) / (oracle::pi * oracle::pi);
  EXPECT_NEAR(feasible_fraction_numerical(wide), grid, 3e-4);
}
