// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <numbers>

#include "airytau/airy.hpp"
#include "check.hpp"
#include "maclaurin.hpp"

using namespace airytau;
using airytau::testing::cx;
using airytau::testing::log10_rel;

namespace {
BigComplex inv_pi(Bits b) { return BigComplex(1 / BigReal::pi(b)); }
}  // namespace

TEST(AiryPair, Origin) {
  auto a = airy_pair(cx(0, 0), PrecisionContext{}).value;
  EXPECT_EQ(a.ai.re.to_decimal(8), "3.5502805e-1");
  EXPECT_EQ(a.bi.re.to_decimal(8), "6.1492663e-1");
  EXPECT_LT(log10_rel(a.wronskian(), inv_pi(256)), -70);
}

TEST(AiryPair, MinusFiveAgainstSeries) {
  auto a = airy_pair(cx(-5, 0), PrecisionContext{}).value;
  auto s = airytau::testing::maclaurin_airy(cx(-5, 0, 512), 512);
  EXPECT_EQ(a.ai.re.to_decimal(8), "3.5076101e-1");
  EXPECT_LT(log10_rel(a.ai, s.ai), -30);
  EXPECT_LT(log10_rel(a.bi, s.bi), -30);
  EXPECT_LT(log10_rel(a.ai_prime, s.ai_prime), -30);
  EXPECT_LT(log10_rel(a.bi_prime, s.bi_prime), -30);
}

TEST(AiryPair, WronskianAtRandomPoints) {
  auto g = airytau::testing::rng();
  std::uniform_real_distribution<double> u(-1, 1);
  PrecisionContext c;
  const double digits = -c.target_rel_tol.log2_abs() * std::log10(2.0);
  for (int i = 0; i < 50; ++i) {
    double re = 10 * u(g), im = 10 * u(g);
    if (re * re + im * im > 100) {
      --i;
      continue;
    }
    auto a = airy_pair(cx(re, im), c).value;
    EXPECT_LT(airytau::testing::log10_abs(a.wronskian() - inv_pi(256)), -0.9 * digits) << re << "," << im;
  }
}

TEST(AiryPair, ComplexPointsAgainstSeries) {
  auto g = airytau::testing::rng(11);
  std::uniform_real_distribution<double> u(-8, 8);
  for (int i = 0; i < 20; ++i) {
    BigComplex x = cx(u(g), u(g));
    auto a = airy_pair_at(x, 256);
    auto s = airytau::testing::maclaurin_airy(x.rounded_to(1024), 1024);
    EXPECT_LT(log10_rel(a.ai, s.ai), -70) << x;
    EXPECT_LT(log10_rel(a.bi_prime, s.bi_prime), -70) << x;
  }
}

TEST(AiryPair, RecessiveSideKeepsRelativeAccuracy) {
  // Ai(30) ~ 1e-49 while Bi(30) ~ 1e47; the continuation must still deliver Ai to full relative precision.
  auto a = airy_pair_at(cx(30, 0), 200);
  auto s = airytau::testing::maclaurin_airy(cx(30, 0, 1200), 1200);
  EXPECT_LT(log10_rel(a.ai, s.ai), -55);
  EXPECT_LT(log10_rel(a.ai_prime, s.ai_prime), -55);
}

TEST(AiryPair, ConnectionFormula) {
  // Bi(x) = e^{-pi i/6} Ai(e^{-2pi i/3} x) + e^{pi i/6} Ai(e^{2pi i/3} x)
  auto g = airytau::testing::rng(5);
  std::uniform_real_distribution<double> u(-6, 6);
  const Bits b = 256;
  auto wm = BigComplex::unit_root(-2, 3, b), wp = BigComplex::unit_root(2, 3, b);
  auto em = BigComplex::unit_root(-1, 6, b), ep = BigComplex::unit_root(1, 6, b);
  for (int i = 0; i < 20; ++i) {
    BigComplex x = cx(u(g), u(g), b);
    auto lhs = airy_pair_at(x, b).bi;
    auto rhs = em * airy_pair_at(wm * x, b).ai + ep * airy_pair_at(wp * x, b).ai;
    EXPECT_LT(log10_rel(rhs, lhs), -70) << x;
  }
}

TEST(DerivativeTable, LowOrders) {
  auto x = cx(1.25, -0.5);
  auto a = airy_pair_at(x, 256);
  auto t = derivative_table(x, a.ai, a.ai_prime, 3);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[2], x * a.ai);
  EXPECT_LT(log10_rel(t[3], x * a.ai_prime + a.ai), -75);
  EXPECT_EQ(derivative_table(x, a.ai, a.ai_prime, 0).size(), 1u);
  EXPECT_THROW(derivative_table(x, a.ai, a.ai_prime, -1), DomainError);
}

TEST(DerivativeTable, MatchesFiniteDifferences) {
  // Central differences of Ai' at x = 1 with step 1e-8 give Ai^(m+1) to O(h^2) ~ 1e-16.
  const Bits b = 256;
  BigComplex x = cx(1, 0, b);
  auto a = airy_pair_at(x, b);
  auto t = derivative_table(x, a.ai, a.ai_prime, 7);
  BigReal h = BigReal::from_decimal("1e-8", b);
  auto tp = [&](const BigReal& dx) {
    BigComplex xs = x + dx;
    auto ap = airy_pair_at(xs, b);
    return derivative_table(xs, ap.ai, ap.ai_prime, 6);
  };
  auto up = tp(h), dn = tp(-h);
  for (int m = 0; m <= 6; ++m) {
    BigComplex fd = (up[m] - dn[m]) / (2 * h);
    EXPECT_LT(log10_rel(fd, t[m + 1]), -12) << m;
  }
}

TEST(SeedDerivatives, ChainRule) {
  SeedSpec ai(1.0, 0.0);
  PrecisionContext c;
  auto t0 = seed_derivatives(cx(0, 0), ai, 0, c).value;
  EXPECT_LT(log10_rel(t0.values[0], airy_pair_at(cx(0, 0), 256).ai), -70);

  BigComplex z = cx(1.5, 0.75);
  auto t = seed_derivatives(z, ai, 1, c).value;
  BigReal k = pow2_ratio(-1, 3, 256);
  auto a = airy_pair_at(-(z * k), 256);
  EXPECT_LT(log10_rel(t.values[1], -(a.ai_prime * k)), -70);
}

TEST(SeedDerivatives, CombinationCancellationIsRecovered) {
  // At z = -20, Ai(x) ~ 3e-20 is recessive and a 1e-38 Bi admixture is comparable to it.
  const Bits b = 256;
  SeedSpec s(cx(1, 0, b), BigComplex(BigReal::from_decimal("1e-38", b)));
  BigComplex z = cx(-20, 0, b);
  auto t = seed_derivatives_at(z, s, 2, b);
  BigReal k = pow2_ratio(-1, 3, 1024);
  auto m = airytau::testing::maclaurin_airy(-(z.rounded_to(1024) * k), 1400);
  BigComplex phi = m.ai + BigComplex(BigReal::from_decimal("1e-38", 1400)) * m.bi;
  EXPECT_LT(log10_rel(t.values[0], phi), -70);
}

TEST(SeedDerivatives, RejectsNegativeOrderAndZeroSeed) {
  EXPECT_THROW(seed_derivatives_at(cx(1, 0), SeedSpec(1.0, 0.0), -1, 128), DomainError);
  EXPECT_THROW(SeedSpec(0.0, 0.0), DomainError);
}
