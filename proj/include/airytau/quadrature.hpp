// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bigfloat.hpp"
#include "context.hpp"
#include "errors.hpp"

namespace airytau {

/// Tanh-sinh nodes and weights on [0, 1].
struct TanhSinhRule {
  int level = 0;
  std::vector<BigReal> x;
  std::vector<BigReal> w;
};

inline TanhSinhRule tanh_sinh_rule(int level, Bits bits) {
  if (level < 0 || level > 20) throw DomainError("tanh_sinh_rule: level out of range");
  TanhSinhRule r;
  r.level = level;
  BigReal h = ldexp(BigReal(1, bits), -level);
  BigReal half_pi = BigReal::pi(bits) / 2;
  // Weights fall like exp(-pi/2 e^t); stop once they are below 2^-bits.
  double tmax = std::log(2.0 * static_cast<double>(bits) * std::numbers::ln2 / std::numbers::pi) + 1.0;
  long kmax = static_cast<long>(std::ceil(tmax * std::ldexp(1.0, level)));
  for (long k = -kmax; k <= kmax; ++k) {
    BigReal t = h * k;
    BigReal u = half_pi * sinh(t);
    BigReal e = exp(-2 * abs(u));
    // x = 1 / (1 + e^{-2u}); sech^2(u) = 4 e^{-2|u|} / (1 + e^{-2|u|})^2
    BigReal x = u.sign() >= 0 ? 1 / (1 + e) : e / (1 + e);
    BigReal one_e = 1 + e;
    BigReal sech2 = 4 * e / (one_e * one_e);
    BigReal w = h * half_pi * cosh(t) * sech2 / 2;
    if (w.is_zero() || x.is_zero()) continue;
    r.x.push_back(std::move(x));
    r.w.push_back(std::move(w));
  }
  return r;
}

enum class ContourKind { Ai, Bi };

/// Ai joins infinity e^{-pi i/3} to infinity e^{pi i/3}; Bi is the sum of the two legs from
/// -infinity to infinity e^{-+pi i/3}. Both are built from the three rays at angles pi/3, -pi/3, pi.
struct ContourSpec {
  ContourKind kind = ContourKind::Ai;
  double radius = 0;  // 0: chosen from the integrand decay
  int level = 0;      // 0: adaptive
};

/// One quadrature node on a contour: t and the full weight dt * (leg multiplicity) * w(t, z).
struct ContourNode {
  BigComplex t;
  BigComplex weight;
};

namespace detail {

/// e^{i pi num/den}; the three ray directions are exact in BigComplex::unit_root.
struct Leg {
  long num, den;
  long mult;
};

inline std::vector<Leg> legs(ContourKind k) {
  if (k == ContourKind::Ai) return {{1, 3, 1}, {-1, 3, -1}};
  return {{1, 3, 1}, {-1, 3, 1}, {1, 1, -2}};
}

/// Radius beyond which |t^m w(t, z)| on every leg is below 2^-bits times its peak.
inline double truncation_radius(const BigComplex& c, int m, Bits bits) {
  double a = std::hypot(c.re.to_double(), c.im.to_double());
  auto f = [&](double r) { return -r * r * r / 3 + a * r + (m > 0 ? m * std::log(r) : 0.0); };
  double peak = -1e300;
  for (double r = 0.01; r < 4 + 2 * std::sqrt(a) + std::cbrt(3.0 * m); r += 0.01) peak = std::max(peak, f(r));
  double drop = static_cast<double>(bits) * std::numbers::ln2 + 20;
  double R = std::max(1.0, std::sqrt(a));
  while (f(R) > peak - drop) R *= 1.05;
  return R;
}

}  // namespace detail

/// Nodes of the rule on the given contour for weight w(t, z) = exp(t^3/3 + 2^{-1/3} z t).
inline std::vector<ContourNode> contour_nodes(ContourKind kind, const BigComplex& z, double radius,
                                              const TanhSinhRule& rule, Bits bits) {
  BigComplex c = z.rounded_to(bits) * pow2_ratio(-1, 3, bits);
  BigReal R(radius, bits);
  std::vector<ContourNode> out;
  for (const auto& leg : detail::legs(kind)) {
    BigComplex dir = BigComplex::unit_root(leg.num, leg.den, bits);
    BigComplex cd = c * dir;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      BigReal r = R * rule.x[i];
      BigReal r3 = r * r * r / 3;
      // t^3 = -r^3 on each of the three rays.
      BigComplex w = exp(cd * r - r3);
      out.push_back({dir * r, w * dir * (R * rule.w[i] * leg.mult)});
    }
  }
  return out;
}

/// Contour integrals of t^m w(t, z), m = 0..mmax, without the 1/(2 pi i) or 1/(2 pi) prefactor.
inline std::vector<BigComplex> raw_moments(ContourKind kind, int mmax, const BigComplex& z, double radius,
                                           const TanhSinhRule& rule, Bits bits) {
  std::vector<BigComplex> m(static_cast<std::size_t>(mmax + 1), BigComplex(bits));
  for (const auto& nd : contour_nodes(kind, z, radius, rule, bits)) {
    BigComplex p = nd.weight;
    for (int k = 0; k <= mmax; ++k) {
      m[static_cast<std::size_t>(k)] += p;
      if (k < mmax) p *= nd.t;
    }
  }
  return m;
}

struct MomentResult {
  std::vector<BigComplex> values;  // prefactor included
  int level = 0;
  double radius = 0;
};

/// Moments mu_0..mu_mmax on one contour with the 1/(2 pi i) (Ai) or 1/(2 pi) (Bi) prefactor,
/// refining the tanh-sinh level until two levels agree to target_rel_tol.
inline MomentResult moments(int mmax, const BigComplex& z, const ContourSpec& spec, const PrecisionContext& ctx) {
  if (mmax < 0) throw DomainError("moment order must be >= 0");
  const Bits bits = ctx.working_bits + 32;
  double R = spec.radius > 0 ? spec.radius
                             : detail::truncation_radius(z * pow2_ratio(-1, 3, 64), mmax, ctx.working_bits);
  BigComplex pref = spec.kind == ContourKind::Ai ? BigComplex(BigReal(0, bits), -1 / (2 * BigReal::pi(bits)))
                                                 : BigComplex(1 / (2 * BigReal::pi(bits)));
  auto eval = [&](int level) {
    auto m = raw_moments(spec.kind, mmax, z, R, tanh_sinh_rule(level, bits), bits);
    for (auto& v : m) v *= pref;
    return m;
  };
  if (spec.level > 0) return MomentResult{eval(spec.level), spec.level, R};
  auto prev = eval(3);
  for (int level = 4; level <= 12; ++level) {
    auto cur = eval(level);
    bool ok = true;
    for (std::size_t k = 0; k < cur.size() && ok; ++k) ok = abs(cur[k] - prev[k]) <= ctx.target_rel_tol * abs(cur[k]);
    if (ok) {
      for (auto& v : cur) v = v.rounded_to(ctx.working_bits);
      return MomentResult{std::move(cur), level, R};
    }
    prev = std::move(cur);
  }
  throw QuadratureError("contour moments did not converge by tanh-sinh level 12");
}

inline BigComplex moment(int m, const BigComplex& z, const ContourSpec& spec, const PrecisionContext& ctx) {
  return moments(m, z, spec, ctx).values.back();
}

}  // namespace airytau
