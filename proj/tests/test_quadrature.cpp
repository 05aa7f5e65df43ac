// Copyright The arraylimits Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "arraylimits/parallel.hpp"
#include "arraylimits/quadrature.hpp"
#include "oracles.hpp"

using namespace arraylimits;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (int n = 1; n <= 12; ++n) {
    const auto& g = quad::gauss_legendre(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += g.weights[i] * std::pow(g.nodes[i], p);
      const double exact = (p % 2) ? 0.0 : 2.0 / (p + 1);
      EXPECT_NEAR(s, exact, 1e-14) << "n=" << n << " p=" << p;
    }
  }
}

TEST(CompositeRule, SmoothIntegrals) {
  const QuadratureSpec spec{16, 4};
  EXPECT_NEAR(quad::integrate_1d([](double x) { return std::sin(x); }, 0.0, kPi, spec), 2.0, 1e-13);
  EXPECT_NEAR(quad::integrate_2d([](double x, double y) { return std::exp(x + y); }, 0, 1, 0, 1, spec),
              (std::exp(1.0) - 1) * (std::exp(1.0) - 1), 1e-13);
}

TEST(CompositeRule, Deterministic) {
  const QuadratureSpec spec{};
  auto f = [](double x) { return std::cos(17 * x) * std::exp(-x); };
  const double a = quad::integrate_1d(f, 0, 3, spec);
  const double b = quad::integrate_1d(f, 0, 3, spec);
  EXPECT_EQ(a, b);
}

TEST(QuarterEllipse, AreaAndBesselMoments) {
  const QuadratureSpec spec{64, 4};
  const double a = 2.0, b = 3.0;
  EXPECT_NEAR(quad::integrate_quarter_ellipse([](double, double, double) { return 1.0; }, a, b, spec),
              kPi * a * b / 4, 1e-13);
  for (int k : {0, 1, 3}) {
    for (int l : {0, 2, 5}) {
      const double got = quad::integrate_quarter_ellipse(
          [&](double x, double y, double) { return std::cos(k * x) * std::cos(l * y); }, a, b, spec);
      EXPECT_NEAR(got, oracle::quarter_ellipse_cosine(k, l, a, b), 1e-11) << k << "," << l;
    }
  }
}

TEST(QuarterEllipseComplement, CompletesThePhaseSquare) {
  const QuadratureSpec spec{64, 4};
  const double a = kPi, b = kPi / 2;
  const double inside = quad::integrate_quarter_ellipse([](double, double, double) { return 1.0; }, a, b, spec);
  const double outside = quad::integrate_quarter_ellipse_complement([](double, double) { return 1.0; }, a, b, spec);
  EXPECT_NEAR(inside + outside, kPi * kPi, 1e-12);
  EXPECT_THROW(quad::integrate_quarter_ellipse_complement([](double, double) { return 1.0; }, 4.0, 1.0, spec),
               DomainError);
}

TEST(ClippedStrips, EllipseLargerThanSquare) {
  // Ellipse with a = b = 1.2 pi: area inside [0, pi]^2 against a fine grid count.
  const QuadratureSpec spec{128, 4};
  const double r = 1.2 * kPi;
  const double area = quad::integrate_clipped_ellipse_strips([](double, double h) { return h; }, r, r, spec);
  const double grid = oracle::midpoint_2d(
      [&](double x, double y) { return x * x + y * y <= r * r ? 1.0 : 0.0; }, 0, kPi, 0, kPi, 2000);
  EXPECT_NEAR(area, grid, 2e-4);
  // Analytic: pi^2 minus the corner outside the circle.
  const double corner_x = std::sqrt(r * r - kPi * kPi);
  const double exact = corner_x * kPi +
                       oracle::simpson([&](long double x) { return std::sqrt(r * r - x * x); }, corner_x, kPi, 20000);
  EXPECT_NEAR(area, exact, 1e-9);
}

TEST(ParallelMap, OrderedAndExceptionSafe) {
  const auto v = parallel_map(1000, [](std::size_t i) { return static_cast<double>(i) * 0.5; });
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], 0.5 * i);
  EXPECT_THROW(parallel_map(10, [](std::size_t i) -> int { if (i == 7) throw DomainError("x"); return 0; }),
               DomainError);
}
