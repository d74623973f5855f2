// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bigfloat.hpp"
#include "context.hpp"
#include "errors.hpp"
#include "functions.hpp"
#include "seed.hpp"
#include "tau.hpp"

namespace airytau {

enum class RegimeTag { NonOscillatory, Oscillatory, StokesCorrected };

struct Regime {
  RegimeTag tag = RegimeTag::NonOscillatory;
  int sector = 0;

  std::string to_string() const {
    switch (tag) {
      case RegimeTag::NonOscillatory: return "nonosc(" + std::to_string(sector) + ")";
      case RegimeTag::Oscillatory: return "osc";
      case RegimeTag::StokesCorrected: return "stokes(" + std::to_string(sector) + ")";
    }
    return "?";
  }
};

/// Multiplicative forms (tau, Stokes) are compared relatively; additive Painleve
/// expansions carry an absolute remainder.
enum class ErrorMeasure { Relative, Absolute };

struct ExpansionEval {
  BigComplex value;
  int n = 0;
  int terms_retained = 0;
  Rational predicted_error_order;
  Regime regime;
  ErrorMeasure measure = ErrorMeasure::Relative;
};

enum class PainleveFn { Sigma, P, Q };

inline std::string to_string(PainleveFn f) {
  return f == PainleveFn::Sigma ? "sigma" : f == PainleveFn::P ? "p" : "q";
}

namespace detail {

inline Bits asym_bits(const BigComplex& z, const SeedSpec& s, Bits bits) {
  if (bits > 0) return bits;
  return std::max({z.precision(), s.c1.precision(), s.c2.precision()});
}

/// z^k with 0^0 = 1.
inline BigComplex ipow(const BigComplex& z, long k, Bits bits) {
  if (k == 0) return BigComplex(BigReal(1, bits));
  return pow(z.rounded_to(bits), k);
}

inline long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline BigReal arg_negz(const BigComplex& z) {
  if (z.is_zero()) throw DomainError("asymptotic forms are undefined at z = 0");
  return arg(-z);
}

inline void require_nonosc_sector(const BigComplex& z, const SeedSpec& seed) {
  BigReal a = abs(arg_negz(z));
  BigReal pi = BigReal::pi(a.precision());
  if (seed.c2_zero()) {
    if (!(a < pi)) throw SectorError("C2 = 0 expansion needs |arg(-z)| < pi");
  } else if (!(a < pi / 3)) {
    throw SectorError("non-oscillatory expansion needs |arg(-z)| < pi/3 when C2 != 0");
  }
}

inline BigReal require_positive_real(const BigComplex& z) {
  if (!z.im.is_zero() || z.re.sign() <= 0) throw SectorError("oscillatory expansion needs real z > 0");
  return z.re;
}

/// Ratio (-b sin psi + d cos psi) / (b cos psi + d sin psi), refusing psi within 0.1 of a zero of the denominator.
inline BigComplex cot_ratio(const BigComplex& b, const BigComplex& d, const BigReal& psi) {
  BigReal c = cos(psi), s = sin(psi);
  BigComplex den = b * c + d * s;
  BigReal scale = sqrt(norm(b) + norm(d));
  if (scale.is_zero() || abs(den) < scale * sin(BigReal::ratio(1, 10, psi.precision())))
    throw NearDenominatorZeroError("psi within 0.1 of a zero of the leading denominator");
  return (d * c - b * s) / den;
}

}  // namespace detail

/// K_n = 2^{-3n^2/4 - n/6} / pi^{n/2}.
inline BigReal K_n(int n, Bits bits = kDefaultBits) {
  if (n < 1) throw DomainError("K_n: n must be >= 1");
  long e12 = -9L * n * n - 2L * n;
  return pow2_ratio(e12, 12, bits) / pow(sqrt(BigReal::pi(bits)), static_cast<long>(n));
}

/// Leading coefficient of the r-th exponential level in the non-oscillatory sector.
inline BigComplex a0(int n, int r, const SeedSpec& seed, Bits bits = kDefaultBits) {
  if (n < 1 || r < 0 || r > n) throw DomainError("a0: need 0 <= r <= n, n >= 1");
  BigReal c = pow2_ratio(static_cast<long>(n - r) * (5L * r + 2), 2, bits) * barnes_g(r + 1, bits) *
              barnes_g(n - r + 1, bits);
  if ((r / 2) % 2) c = -c;
  return detail::ipow(seed.c1, r, bits) * detail::ipow(seed.c2, n - r, bits) * c;
}

/// Non-oscillatory leading form of tau_n; include_r selects the exponential levels kept (empty: all).
inline ExpansionEval tau_asym_nonosc(int n, const BigComplex& z, const SeedSpec& seed,
                                     std::vector<int> include_r = {}, Bits bits = 0) {
  if (n < 1) throw DomainError("tau_asym_nonosc: n must be >= 1");
  detail::require_nonosc_sector(z, seed);
  bits = detail::asym_bits(z, seed, bits);
  if (seed.c2_zero()) {
    include_r = {n};
  } else if (include_r.empty()) {
    for (int r = 0; r <= n; ++r) include_r.push_back(r);
  }
  BigComplex zz = z.rounded_to(bits);
  BigComplex w3 = principal_negz_power(zz, Rational(3, 2));
  BigReal k = sqrt(BigReal(2, bits)) / 3;
  BigComplex sum(bits);
  for (int r : include_r) {
    if (r < 0 || r > n) throw DomainError("tau_asym_nonosc: r out of range");
    BigComplex t = a0(n, r, seed, bits) * principal_negz_power(zz, Rational(3L * r * (n - r), 2)) *
                   exp(w3 * (k * static_cast<long>(n - 2 * r)));
    sum += t;
  }
  BigComplex v = principal_negz_power(zz, Rational(-static_cast<long>(n) * n, 4)) * sum * K_n(n, bits);
  return ExpansionEval{std::move(v), n, static_cast<int>(include_r.size()), Rational(-3, 2),
                       Regime{RegimeTag::NonOscillatory, 0}, ErrorMeasure::Relative};
}

/// psi_{n,r}(z) = (n - 2r)(sqrt2 z^{3/2}/3 + n pi/4), z > 0.
inline BigReal psi(int n, int r, const BigReal& z) {
  if (z.sign() <= 0) throw DomainError("psi: z must be > 0");
  Bits b = z.precision();
  BigReal base = sqrt(BigReal(2, b)) * z * sqrt(z) / 3 + BigReal::pi(b) * static_cast<long>(n) / 4;
  return base * static_cast<long>(n - 2 * r);
}

inline BigReal M_coeff(int n, int r, Bits bits = kDefaultBits) {
  if (n < 0 || r < 0 || r > n) throw DomainError("M_coeff: need 0 <= r <= n");
  long m = static_cast<long>(r) * (n - r);
  BigReal v = pow2_ratio(5 * m, 2, bits) * barnes_g(r + 1, bits) * barnes_g(n - r + 1, bits);
  return m % 2 ? -v : v;
}

inline long H_coeff(int n, int r, int p) {
  if (n < 0 || r < 0 || r > n || p < 0 || p > n) throw DomainError("H_coeff: need 0 <= r, p <= n");
  long h = 0;
  for (int q = std::max(0, p - r); q <= std::min(p, n - r); ++q) {
    long t = detail::binomial(r, p - q) * detail::binomial(n - r, q);
    h += q % 2 ? -t : t;
  }
  return h;
}

inline BigComplex b0(int n, int r, const SeedSpec& seed, Bits bits = kDefaultBits) {
  BigComplex s(bits);
  for (int p = 0; p <= n / 2; ++p) {
    long h = H_coeff(n, r, 2 * p);
    if (h == 0) continue;
    BigComplex t = detail::ipow(seed.c1, 2 * p, bits) * detail::ipow(seed.c2, n - 2 * p, bits) * h;
    s += p % 2 ? -t : t;
  }
  return s;
}

/// Upper limit floor((n-1)/2): the last index with a non-negative C2 power.
inline BigComplex d0(int n, int r, const SeedSpec& seed, Bits bits = kDefaultBits) {
  BigComplex s(bits);
  for (int p = 0; p <= (n - 1) / 2; ++p) {
    long h = H_coeff(n, r, 2 * p + 1);
    if (h == 0) continue;
    BigComplex t = detail::ipow(seed.c1, 2 * p + 1, bits) * detail::ipow(seed.c2, n - 2 * p - 1, bits) * h;
    s += p % 2 ? t : -t;
  }
  return s;
}

/// Oscillatory leading form of tau_n on z > 0 (j = 0 coefficients only).
inline ExpansionEval tau_asym_osc(int n, const BigReal& z, const SeedSpec& seed, Bits bits = 0) {
  if (n < 1) throw DomainError("tau_asym_osc: n must be >= 1");
  if (z.sign() <= 0) throw DomainError("tau_asym_osc: z must be > 0");
  bits = detail::asym_bits(BigComplex(z), seed, bits);
  BigReal x = z.rounded_to(bits);
  BigReal rz = sqrt(x);
  auto B = [&](int r) {
    return b0(n, r, seed, bits) * M_coeff(n, r, bits) * pow(rz, 3L * r * (n - r));
  };
  auto D = [&](int r) {
    return d0(n, r, seed, bits) * M_coeff(n, r, bits) * pow(rz, 3L * r * (n - r));
  };
  const int s = (n + 1) / 2;
  BigComplex sum(bits);
  for (int r = 0; r < s; ++r) {
    BigReal ps = psi(n, r, x);
    sum += B(r) * cos(ps) + D(r) * sin(ps);
  }
  sum *= 2L;
  if (n % 2 == 0) sum += B(s);
  BigComplex v = sum * K_n(n, bits) * exp(log(x) * BigReal::ratio(-static_cast<long>(n) * n, 4, bits));
  return ExpansionEval{std::move(v), n, n % 2 ? s : s + 1, Rational(-3, 2), Regime{RegimeTag::Oscillatory, 0},
                       ErrorMeasure::Relative};
}

/// Printed multi-term expansions of sigma_n, p_n, q_n in the non-oscillatory sector or on z > 0.
inline ExpansionEval painleve_asym(int n, const BigComplex& z, const SeedSpec& seed, PainleveFn fn, RegimeTag regime,
                                   Bits bits = 0) {
  if (n < 0 || (n == 0 && fn != PainleveFn::Sigma)) throw DomainError("painleve_asym: n out of range");
  bits = detail::asym_bits(z, seed, bits);
  BigComplex zz = z.rounded_to(bits);
  BigReal rt2 = sqrt(BigReal(2, bits));
  const long N = n;
  ExpansionEval e;
  e.n = n;
  e.measure = ErrorMeasure::Absolute;
  if (regime == RegimeTag::NonOscillatory) {
    detail::require_nonosc_sector(zz, seed);
    e.regime = Regime{RegimeTag::NonOscillatory, 0};
    e.terms_retained = 3;
    if (n == 0) {
      e.value = BigComplex(bits);
      e.predicted_error_order = Rational(-4);
      return e;
    }
    // The recessive (C2 = 0) branch flips the signs of the half-integer powers.
    const long sg = seed.c2_zero() ? 1 : -1;
    BigComplex w = principal_negz_power(zz, Rational(1, 2));
    BigComplex w5 = pow(w, 5);
    switch (fn) {
      case PainleveFn::Sigma:
        e.value = w * sg * N / rt2 - BigComplex(BigReal(N * N, bits)) / (zz * 4L) -
                  BigComplex(rt2 * (sg * N * (4 * N * N + 1))) / (w5 * 32L);
        e.predicted_error_order = Rational(-4);
        break;
      case PainleveFn::P:
        e.value = BigComplex(BigReal(sg * N, bits)) / (w * rt2) - BigComplex(BigReal(N * N, bits)) / (zz * zz * 2L) +
                  BigComplex(rt2 * (5 * sg * N * (4 * N * N + 1))) / (w5 * w * w * 32L);
        e.predicted_error_order = Rational(-5);
        break;
      case PainleveFn::Q:
        e.value = w * (-sg) / rt2 + BigComplex(BigReal(2 * N - 1, bits)) / (zz * 4L) +
                  BigComplex(rt2 * (sg * (12 * N * N - 12 * N + 5))) / (w5 * 32L);
        e.predicted_error_order = Rational(-4);
        break;
    }
    return e;
  }
  if (regime != RegimeTag::Oscillatory) throw DomainError("painleve_asym: use stokes_painleve for Stokes forms");
  BigReal x = detail::require_positive_real(zz);
  e.regime = Regime{RegimeTag::Oscillatory, 0};
  e.terms_retained = 1;
  if (n == 0) {
    e.value = BigComplex(bits);
    e.predicted_error_order = Rational(-5, 2);
    return e;
  }
  BigReal rz2 = sqrt(x / 2);
  if (fn == PainleveFn::Q) {
    const int s = (n + 1) / 2;
    BigComplex t = detail::cot_ratio(b0(2 * s - 1, s - 1, seed, bits), d0(2 * s - 1, s - 1, seed, bits),
                                     psi(2 * s - 1, s - 1, x));
    e.value = t * rz2;
    if (n % 2) e.value = -e.value;
    e.predicted_error_order = Rational(-1);
    return e;
  }
  if (n % 2 == 0) {
    const int s = n / 2;
    BigComplex bs = b0(n, s, seed, bits), b1 = b0(n, s - 1, seed, bits), d1 = d0(n, s - 1, seed, bits);
    if (bs.is_zero()) throw NearDenominatorZeroError("b_{2s,s} vanishes for this seed");
    BigReal ps = psi(n, s - 1, x);
    if (fn == PainleveFn::Sigma) {
      BigReal lead = BigReal(static_cast<long>(s) * s, bits) / (2 * x);
      e.value = BigComplex(lead) + (b1 * sin(ps) - d1 * cos(ps)) / bs * (BigReal(s, bits) / (2 * x));
      e.terms_retained = 2;
      e.predicted_error_order = Rational(-5, 2);
    } else {
      e.value = -((b1 * cos(ps) + d1 * sin(ps)) / bs * (rt2 * static_cast<long>(s) / sqrt(x)));
      e.predicted_error_order = Rational(-2);
    }
    return e;
  }
  const int s = (n + 1) / 2;
  BigComplex t = detail::cot_ratio(b0(n, s - 1, seed, bits), d0(n, s - 1, seed, bits), psi(n, s - 1, x));
  if (fn == PainleveFn::Sigma) {
    e.value = t * rz2;
    e.predicted_error_order = Rational(-1);
  } else {
    e.value = (t * t + BigReal(1, bits)) * x;
    e.predicted_error_order = Rational(-1, 2);
  }
  return e;
}

namespace detail {

/// +1 for 0 < arg z < 2pi/3, -1 for the mirror sector -2pi/3 < arg z < 0.
inline int stokes_sector(const BigComplex& z, const SeedSpec& seed) {
  if (!seed.c2_zero()) throw DomainError("Stokes forms apply to C2 = 0 seeds only");
  if (z.is_zero()) throw DomainError("Stokes forms are undefined at z = 0");
  BigReal a = arg(z);
  BigReal lim = BigReal::pi(a.precision()) * 2 / 3;
  if (a.sign() > 0 && a < lim) return 1;
  if (a.sign() < 0 && a > -lim) return -1;
  throw SectorError("Stokes forms need 0 < |arg z| < 2pi/3");
}

/// e^{(2 sqrt2/3)(-z)^{3/2}}: the subdominant/dominant exponential ratio.
inline BigComplex stokes_exponential(const BigComplex& z, Bits bits) {
  return exp(principal_negz_power(z, Rational(3, 2)) * (sqrt(BigReal(2, bits)) * 2 / 3));
}

}  // namespace detail

/// tau_n for C2 = 0 near the rays arg z = +-2pi/3, with the first subdominant exponential when two_term is set.
inline ExpansionEval stokes_tau(int n, const BigComplex& z, const SeedSpec& seed, bool two_term = true, Bits bits = 0) {
  if (n < 1) throw DomainError("stokes_tau: n must be >= 1");
  int sec = detail::stokes_sector(z, seed);
  bits = detail::asym_bits(z, seed, bits);
  BigComplex zz = z.rounded_to(bits);
  BigComplex w3 = principal_negz_power(zz, Rational(3, 2));
  BigReal c = K_n(n, bits) * barnes_g(n + 1, bits);
  if ((n / 2) % 2) c = -c;
  BigComplex v = principal_negz_power(zz, Rational(-static_cast<long>(n) * n, 4)) *
                 exp(w3 * (sqrt(BigReal(2, bits)) * static_cast<long>(-n) / 3)) * c *
                 detail::ipow(seed.c1, n, bits);
  if (two_term) {
    BigReal k = pow2_ratio(5L * n - 5, 2, bits) / gamma(BigReal(n, bits));
    if (n % 2) k = -k;
    BigComplex corr = BigComplex(BigReal(0, bits), k * static_cast<long>(sec)) *
                      principal_negz_power(zz, Rational(3L * (n - 1), 2)) * detail::stokes_exponential(zz, bits);
    v = v * (corr + BigReal(1, bits));
  }
  return ExpansionEval{std::move(v), n, two_term ? 2 : 1, Rational(-3, 2), Regime{RegimeTag::StokesCorrected, sec},
                       ErrorMeasure::Relative};
}

/// sigma_n, p_n, q_n for C2 = 0 with the first subdominant exponential (leading algebraic term only).
inline ExpansionEval stokes_painleve(int n, const BigComplex& z, const SeedSpec& seed, PainleveFn fn,
                                     bool two_term = true, Bits bits = 0) {
  if (n < 1) throw DomainError("stokes_painleve: n must be >= 1");
  int sec = detail::stokes_sector(z, seed);
  bits = detail::asym_bits(z, seed, bits);
  BigComplex zz = z.rounded_to(bits);
  BigReal rt2 = sqrt(BigReal(2, bits));
  BigComplex w = principal_negz_power(zz, Rational(1, 2));
  const long N = n;
  BigComplex lead(bits);
  BigReal k(bits);
  Rational pw;
  switch (fn) {
    case PainleveFn::Sigma:
      lead = w * N / rt2;
      k = pow2_ratio(5 * N - 3, 2, bits) / gamma(BigReal(N + 1, bits));
      pw = Rational(3 * (N - 1), 2);
      break;
    case PainleveFn::P:
      lead = BigComplex(BigReal(N, bits)) / (w * rt2);
      k = pow2_ratio(5 * N, 2, bits) / gamma(BigReal(N + 1, bits));
      pw = Rational(3 * N, 2);
      break;
    case PainleveFn::Q:
      lead = -(w / rt2);
      k = pow2_ratio(5 * N - 3, 2, bits) / gamma(BigReal(N, bits));
      pw = Rational(3 * (N - 1), 2);
      break;
  }
  if (two_term) {
    if (n % 2 == 0) k = -k;
    BigComplex corr = BigComplex(BigReal(0, bits), k * static_cast<long>(sec)) * principal_negz_power(zz, pw) *
                      detail::stokes_exponential(zz, bits);
    lead = lead * (corr + BigReal(1, bits));
  }
  return ExpansionEval{std::move(lead), n, two_term ? 2 : 1, Rational(-3, 2), Regime{RegimeTag::StokesCorrected, sec},
                       ErrorMeasure::Relative};
}

/// z = e^{2 pi i k/3} z_base with |arg(-z_base)| <= pi/3, and the matching seed.
struct BaseRotation {
  BigComplex z_base;
  int k = 0;
  SeedSpec seed_base;

  /// tau_n[C](z) = phase(n) * tau_n[seed_base](z_base).
  BigComplex phase(int n, Bits bits) const {
    return k == 0 ? BigComplex(BigReal(1, bits)) : rotation_phase(n, k, bits);
  }
};

inline BaseRotation rotate_to_base(const BigComplex& z, const SeedSpec& seed) {
  BigReal a = detail::arg_negz(z);
  double t = std::round(a.to_double() * 3 / (2 * std::numbers::pi));
  int k = static_cast<int>(std::clamp(t, -1.0, 1.0));
  if (k == 0) return BaseRotation{z, 0, seed};
  BigComplex zb = BigComplex::unit_root(-2L * k, 3, z.precision()) * z;
  return BaseRotation{std::move(zb), k, rotate_seed(seed, k)};
}

/// Non-oscillatory tau asymptotics anywhere off the three oscillatory rays, via sector rotation.
inline ExpansionEval tau_asym_full_plane(int n, const BigComplex& z, const SeedSpec& seed, Bits bits = 0) {
  bits = detail::asym_bits(z, seed, bits);
  auto rot = rotate_to_base(z.rounded_to(bits), seed);
  auto e = tau_asym_nonosc(n, rot.z_base, rot.seed_base, {}, bits);
  e.value = e.value * rot.phase(n, bits);
  e.regime.sector = rot.k;
  return e;
}

}  // namespace airytau
