// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <numbers>

#include "airytau/functions.hpp"
#include "airytau/tau.hpp"
#include "check.hpp"
#include "maclaurin.hpp"

using namespace airytau;
using airytau::testing::cx;
using airytau::testing::log10_rel;

namespace {

const SeedSpec kAi(1.0, 0.0);

// phi and derivatives for C = (1, 0) straight from the Maclaurin series at high precision.
struct Phi {
  BigComplex f, f1, f2;
};
Phi phi_series(const BigComplex& z, Bits bits) {
  BigReal k = pow2_ratio(-1, 3, bits);
  BigComplex x = -(z.rounded_to(bits) * k);
  auto m = airytau::testing::maclaurin_airy(x, bits);
  return Phi{m.ai, -(m.ai_prime * k), x * m.ai * k * k};
}

BigComplex sigma_c20(int n, const BigComplex& z, Bits b) {
  BigReal rt2 = sqrt(BigReal(2, b));
  return principal_negz_power(z, Rational(1, 2)) * n / rt2 - BigComplex(BigReal(n * n, b)) / (z * 4L) -
         BigComplex(rt2 * (n * (4 * n * n + 1))) / (principal_negz_power(z, Rational(5, 2)) * 32L);
}

}  // namespace

TEST(Tau, OrderZeroIsOne) {
  auto r = tau(0, cx(5, 2), kAi, PrecisionContext{});
  EXPECT_EQ(r.value, cx(1, 0));
  EXPECT_TRUE(r.err_est.is_zero());
  EXPECT_TRUE(sigma(0, cx(5, 2), kAi, PrecisionContext{}).is_zero());
}

TEST(Tau, OrderOneAtOriginIsAi0) {
  auto r = tau(1, cx(0, 0), kAi, PrecisionContext{});
  EXPECT_EQ(r.value.re.to_decimal(8), "3.5502805e-1");
  EXPECT_LT(log10_rel(r.value, phi_series(cx(0, 0), 512).f), -70);
  EXPECT_LE(r.err_est, PrecisionContext{}.target_rel_tol * abs(r.value));
}

TEST(Tau, OrderTwoMatchesHandFormula) {
  auto p = phi_series(cx(1, 0, 512), 512);
  BigComplex hand = p.f * p.f2 - p.f1 * p.f1;
  auto r = tau(2, cx(1, 0), kAi, PrecisionContext{});
  EXPECT_LT(log10_rel(r.value, hand), -30);
}

TEST(Tau, RejectsNegativeOrder) {
  EXPECT_THROW(tau(-1, cx(0, 0), kAi, PrecisionContext{}), DomainError);
  EXPECT_THROW(tau_derivative(0, cx(0, 0), kAi, 1, PrecisionContext{}), DomainError);
}

TEST(BumpExpansion, Structure) {
  auto one = bump_expansion(2, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].orders, (std::vector<int>{0, 2}));
  auto two = bump_expansion(2, 2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].orders, (std::vector<int>{0, 3}));
  EXPECT_EQ(two[1].orders, (std::vector<int>{1, 2}));
  EXPECT_EQ(two[0].coeff, 1);
  EXPECT_EQ(two[1].coeff, 1);
  // n = 1 reduces to plain differentiation.
  auto d4 = bump_expansion(1, 4);
  ASSERT_EQ(d4.size(), 1u);
  EXPECT_EQ(d4[0].orders, (std::vector<int>{4}));
}

TEST(TauDerivative, OrderOneOfTauOneIsPhiPrime) {
  BigComplex z = cx(0.7, -1.1);
  auto d = tau_derivative(1, z, kAi, 1, PrecisionContext{});
  EXPECT_LT(log10_rel(d, phi_series(z, 512).f1), -30);
}

TEST(TauDerivative, AgainstFiniteDifferences) {
  PrecisionContext c = PrecisionContext::with(512, 1e-60);
  BigComplex z = cx(1.3, 0.4, 512);
  BigReal h = BigReal::from_decimal("1e-10", 512);
  SeedSpec s(cx(1, 0, 512), cx(0.5, 0.25, 512));
  for (int n : {2, 3}) {
    auto up = tau(n, z + h, s, c).value, mid = tau(n, z, s, c).value, dn = tau(n, z - h, s, c).value;
    BigComplex d1 = (up - dn) / (2 * h);
    BigComplex d2 = (up - mid * 2L + dn) / (h * h);
    EXPECT_LT(log10_rel(tau_derivative(n, z, s, 1, c), d1), -12) << n;
    EXPECT_LT(log10_rel(tau_derivative(n, z, s, 2, c), d2), -12) << n;
  }
}

TEST(Sigma, OrderOneIsLogDerivativeOfAi) {
  BigComplex z = cx(-2.5, 1.0);
  auto p = phi_series(z, 512);
  EXPECT_LT(log10_rel(sigma(1, z, kAi, PrecisionContext{}), p.f1 / p.f), -30);
}

TEST(Sigma, NonOscillatoryExpansionAtMinusTen) {
  BigComplex z = cx(-10, 0);
  auto s = sigma(2, z, kAi, PrecisionContext{});
  // Remainder is O((-z)^-4); the constant is modest.
  double err = std::pow(10.0, airytau::testing::log10_abs(s - sigma_c20(2, z, 256)));
  EXPECT_LT(err, 0.5 * std::pow(10.0, -4.0) * 10.0);
}

TEST(Sigma, PoleIsDetected) {
  // First zero of Ai by Newton at 400 bits, then z = -2^{1/3} a1.
  const Bits b = 400;
  BigComplex a(BigReal(-2.338107410459767, b));
  for (int i = 0; i < 12; ++i) {
    auto m = airy_pair_at(a, b);
    a -= m.ai / m.ai_prime;
  }
  BigComplex z = -(a * pow2_ratio(1, 3, b));
  EXPECT_THROW(sigma(1, z, kAi, PrecisionContext{}), NearPoleError);
  EXPECT_THROW(q_fn(1, z, kAi, PrecisionContext{}), NearPoleError);
  // Slightly away from the zero sigma is large but fine.
  EXPECT_NO_THROW(sigma(1, z + BigReal::from_decimal("1e-20", b), kAi, PrecisionContext{}));
}

TEST(PFn, OrderOneViaToda) {
  BigComplex z = cx(0.3, 0.9);
  PrecisionContext c;
  auto t1 = tau(1, z, kAi, c).value, t2 = tau(2, z, kAi, c).value;
  EXPECT_LT(log10_rel(p_fn(1, z, kAi, c), t2 / (t1 * t1) * -2L), -28);
}

TEST(PFn, RoutesAgree) {
  SeedSpec s(1.0, 1.0);
  BigComplex z = cx(1, 1);
  PrecisionContext c;
  EXPECT_LT(log10_rel(p_fn(2, z, s, c, PRoute::Toda), p_fn(2, z, s, c, PRoute::LogDerivative)), -20);
}

TEST(PFn, NonOscillatoryExpansionAtMinusTwenty) {
  const Bits b = 256;
  BigComplex z = cx(-20, 0);
  BigReal rt2 = sqrt(BigReal(2, b));
  int n = 1;
  BigComplex lead = BigComplex(BigReal(n, b)) / (principal_negz_power(z, Rational(1, 2)) * rt2) -
                    BigComplex(BigReal(n * n, b)) / (z * z * 2L) +
                    BigComplex(rt2 * (5 * n * (4 * n * n + 1))) / (principal_negz_power(z, Rational(7, 2)) * 32L);
  auto p = p_fn(n, z, kAi, PrecisionContext{});
  double err = std::pow(10.0, airytau::testing::log10_abs(p - lead));
  EXPECT_LT(err, 10.0 * std::pow(20.0, -5.0));
}

TEST(QFn, OrderOneIsMinusSigma) {
  BigComplex z = cx(2, -1);
  PrecisionContext c;
  EXPECT_LT(log10_rel(q_fn(1, z, kAi, c), -sigma(1, z, kAi, c)), -30);
}

TEST(QFn, SolvesPainleveTwoByFiniteDifferences) {
  PrecisionContext c = PrecisionContext::with(512, 1e-80);
  BigComplex z = cx(1, 1, 512);
  BigReal h = BigReal::from_decimal("1e-30", 512);
  auto q = q_fn(1, z, kAi, c), qu = q_fn(1, z + h, kAi, c), qd = q_fn(1, z - h, kAi, c);
  BigComplex q2 = (qu - q * 2L + qd) / (h * h);
  BigComplex res = q2 - z * q - q * q * q * 2L - BigComplex(BigReal::ratio(1, 2, 512));
  EXPECT_LT(airytau::testing::log10_abs(res), -20);
}

TEST(QFn, NonOscillatoryExpansionGeneralSeed) {
  const Bits b = 256;
  SeedSpec s(1.0, 1.0);
  BigComplex z = cx(-15, 0);
  int n = 2;
  BigReal rt2 = sqrt(BigReal(2, b));
  BigComplex lead = principal_negz_power(z, Rational(1, 2)) / rt2 + BigComplex(BigReal(2 * n - 1, b)) / (z * 4L) -
                    BigComplex(rt2 * (12 * n * n - 12 * n + 5)) / (principal_negz_power(z, Rational(5, 2)) * 32L);
  auto q = q_fn(n, z, s, PrecisionContext{});
  double err = std::pow(10.0, airytau::testing::log10_abs(q - lead));
  EXPECT_LT(err, 10.0 * std::pow(15.0, -4.0));
}

TEST(PainleveTriple, ConsistentWithSingles) {
  SeedSpec s(1.0, 0.5);
  BigComplex z = cx(-1.5, 2.5);
  PrecisionContext c;
  auto t = painleve_triple(3, z, s, c);
  EXPECT_LT(log10_rel(t.sigma, sigma(3, z, s, c)), -28);
  EXPECT_LT(log10_rel(t.p, p_fn(3, z, s, c)), -28);
  EXPECT_LT(log10_rel(t.q, q_fn(3, z, s, c)), -28);
}

TEST(RotateSeed, Examples) {
  const Bits b = 256;
  auto r = rotate_seed(SeedSpec(1.0, 0.0), 1);
  EXPECT_LT(log10_rel(r.c1, BigComplex::unit_root(1, 3, b) / 2L), -70);
  EXPECT_LT(log10_rel(r.c2, BigComplex::unit_root(-1, 6, b) / 2L), -70);
  auto q = rotate_seed(SeedSpec(0.0, 1.0), 1);
  EXPECT_LT(log10_rel(q.c1, BigComplex::unit_root(-1, 6, b) * 3L / 2L), -70);
  EXPECT_LT(log10_rel(q.c2, BigComplex::unit_root(1, 3, b) / 2L), -70);
  EXPECT_THROW(rotate_seed(SeedSpec(1.0, 0.0), 0), DomainError);
}

TEST(Rotation, DirectionPinnedAtN1to4) {
  // tau_n[C](e^{2 pi i d/3} z) = e^{-2 pi i d n(n-1)/3} tau_n[C~d](z) for both directions d.
  auto g = airytau::testing::rng(17);
  std::uniform_real_distribution<double> u(-3, 3);
  PrecisionContext c;
  SeedSpec s(cx(0.8, 0.1), cx(-0.3, 0.6));
  for (int i = 0; i < 4; ++i) {
    BigComplex z = cx(u(g), u(g));
    for (int d : {1, -1}) {
      SeedSpec sd = rotate_seed(s, d);
      BigComplex zr = BigComplex::unit_root(2 * d, 3, 256) * z;
      for (int n = 1; n <= 4; ++n) {
        auto lhs = tau(n, zr, s, c).value;
        auto rhs = rotation_phase(n, d, 256) * tau(n, z, sd, c).value;
        EXPECT_LT(log10_rel(lhs, rhs), -25) << "n=" << n << " d=" << d << " z=" << z;
      }
    }
  }
}

TEST(Toda, HoldsForSmallN) {
  auto g = airytau::testing::rng(23);
  std::uniform_real_distribution<double> u(-5, 5);
  PrecisionContext c;
  SeedSpec s(1.0, 1.0);
  for (int i = 0; i < 4; ++i) {
    BigComplex z = cx(u(g), u(g));
    for (int n = 1; n <= 5; ++n) {
      auto jets = tau_jets({{n - 1, 0}, {n, 2}, {n + 1, 0}}, z, s, c);
      const auto& t = jets.of(n).d;
      BigComplex toda = jets.of(n + 1).value() * jets.of(n - 1).value() / (t[0] * t[0]);
      BigComplex logpp = (t[2] * t[0] - t[1] * t[1]) / (t[0] * t[0]);
      EXPECT_LT(log10_rel(logpp, toda), -20) << n << " " << z;
    }
  }
}
