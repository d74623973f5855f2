// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bigfloat.hpp"
#include "context.hpp"
#include "seed.hpp"

namespace airytau {

struct AiryPair {
  BigComplex ai, ai_prime, bi, bi_prime;

  std::vector<BigComplex> components() const { return {ai, ai_prime, bi, bi_prime}; }
  BigComplex wronskian() const { return ai * bi_prime - ai_prime * bi; }
};

namespace detail {

inline AiryPair airy_at_origin(Bits p) {
  BigReal three(3, p);
  BigReal c3 = cbrt(three);
  BigReal g13 = gamma(BigReal::ratio(1, 3, p));
  BigReal g23 = gamma(BigReal::ratio(2, 3, p));
  BigReal s6 = sqrt(c3);
  AiryPair a;
  a.ai = BigComplex(1 / (c3 * c3) / g23);
  a.ai_prime = BigComplex(-(1 / c3) / g13);
  a.bi = BigComplex(1 / s6 / g23);
  a.bi_prime = BigComplex(s6 / g13);
  return a;
}

/// Bits lost to the recessive Ai on the straight path from 0 to x: 2 Re(2/3 x^{3/2}) / ln 2.
inline double airy_recessive_loss(double xr, double xi) {
  std::complex<double> zeta = 2.0 / 3.0 * std::pow(std::complex<double>(xr, xi), 1.5);
  return std::max(0.0, 2.0 * zeta.real()) * std::numbers::log2e;
}

inline long mag2(const BigComplex& c) {
  long a = c.re.exponent(), b = c.im.exponent();
  return std::max(a, b);
}

/// c <- (A c0 + B cm1) / den, all at the precision of c.
inline void airy_term(BigComplex& c, const BigComplex& A, const BigComplex& c0, const BigComplex& B,
                      const BigComplex& cm1, unsigned long den, BigReal& t) {
  mpfr_fmms(c.re.raw(), A.re.raw(), c0.re.raw(), A.im.raw(), c0.im.raw(), MPFR_RNDN);
  mpfr_fmms(t.raw(), B.re.raw(), cm1.re.raw(), B.im.raw(), cm1.im.raw(), MPFR_RNDN);
  mpfr_add(c.re.raw(), c.re.raw(), t.raw(), MPFR_RNDN);
  mpfr_div_ui(c.re.raw(), c.re.raw(), den, MPFR_RNDN);
  mpfr_fmma(c.im.raw(), A.re.raw(), c0.im.raw(), A.im.raw(), c0.re.raw(), MPFR_RNDN);
  mpfr_fmma(t.raw(), B.re.raw(), cm1.im.raw(), B.im.raw(), cm1.re.raw(), MPFR_RNDN);
  mpfr_add(c.im.raw(), c.im.raw(), t.raw(), MPFR_RNDN);
  mpfr_div_ui(c.im.raw(), c.im.raw(), den, MPFR_RNDN);
}

inline void swap_complex(BigComplex& a, BigComplex& b) {
  mpfr_swap(a.re.raw(), b.re.raw());
  mpfr_swap(a.im.raw(), b.im.raw());
}

/// Real-axis variant of airy_taylor_step.
inline void airy_taylor_step_real(const BigReal& x0, const BigReal& h, BigComplex (&w)[2], BigComplex (&dw)[2],
                                  Bits wp, double s_eff) {
  BigReal h2 = h * h;
  BigReal A = h2 * x0;
  BigReal B = h2 * h;
  BigReal t(wp);
  const long kmin = static_cast<long>(2.0 * s_eff) + 4;
  for (int j = 0; j < 2; ++j) {
    BigReal cm1(wp), c0 = w[j].re.rounded_to(wp), c1 = dw[j].re * h, cn(wp);
    BigReal sum = c0 + c1;
    BigReal dsum = c1;
    long top = std::max(c0.exponent(), c1.exponent());
    int tiny = 0;
    for (unsigned long m = 2;; ++m) {
      mpfr_mul(cn.raw(), A.raw(), c0.raw(), MPFR_RNDN);
      mpfr_mul(t.raw(), B.raw(), cm1.raw(), MPFR_RNDN);
      mpfr_add(cn.raw(), cn.raw(), t.raw(), MPFR_RNDN);
      mpfr_div_ui(cn.raw(), cn.raw(), m * (m - 1), MPFR_RNDN);
      mpfr_add(sum.raw(), sum.raw(), cn.raw(), MPFR_RNDN);
      mpfr_mul_ui(t.raw(), cn.raw(), m, MPFR_RNDN);
      mpfr_add(dsum.raw(), dsum.raw(), t.raw(), MPFR_RNDN);
      long e = cn.exponent();
      top = std::max(top, e);
      long cut = top - static_cast<long>(wp) - 16 - static_cast<long>(std::log2(static_cast<double>(m)) + 1);
      if (e == LONG_MIN || e < cut) ++tiny;
      else tiny = 0;
      if (tiny >= 3 && static_cast<long>(m) > kmin) break;
      mpfr_swap(cm1.raw(), c0.raw());
      mpfr_swap(c0.raw(), c1.raw());
      mpfr_swap(c1.raw(), cn.raw());
    }
    w[j] = BigComplex(sum);
    dw[j] = BigComplex(dsum / h);
  }
}

/// One Taylor step of w'' = x w from x0 to x0 + h for the two solutions held in (w, dw).
inline void airy_taylor_step(const BigComplex& x0, const BigComplex& h, BigComplex (&w)[2], BigComplex (&dw)[2],
                             Bits wp, double s_eff) {
  if (x0.is_real() && h.is_real()) return airy_taylor_step_real(x0.re, h.re, w, dw, wp, s_eff);
  BigComplex h2 = h * h;
  BigComplex A = h2 * x0;
  BigComplex B = h2 * h;
  BigReal t(wp);
  const long kmin = static_cast<long>(2.0 * s_eff) + 4;
  for (int j = 0; j < 2; ++j) {
    BigComplex cm1(wp), c0 = w[j].rounded_to(wp), c1 = dw[j] * h, cn(wp);
    BigComplex sum = c0 + c1;
    BigComplex dsum = c1;
    long top = std::max(mag2(c0), mag2(c1));
    int tiny = 0;
    for (unsigned long m = 2;; ++m) {
      airy_term(cn, A, c0, B, cm1, m * (m - 1), t);
      sum += cn;
      BigComplex mc = cn * static_cast<long>(m);
      dsum += mc;
      long e = mag2(cn);
      top = std::max(top, e);
      long cut = top - static_cast<long>(wp) - 16 - static_cast<long>(std::log2(static_cast<double>(m)) + 1);
      if (e == LONG_MIN || e < cut) ++tiny;
      else tiny = 0;
      if (tiny >= 3 && static_cast<long>(m) > kmin) break;
      swap_complex(cm1, c0);
      swap_complex(c0, c1);
      swap_complex(c1, cn);
    }
    w[j] = std::move(sum);
    dw[j] = dsum / h;
  }
}

/// Straight-segment continuation from 0 to x at working precision wp with
/// per-step growth budget s (in e-folds). Returns (Ai, Ai', Bi, Bi') at wp.
inline AiryPair airy_continue(const BigComplex& x, Bits wp, double s) {
  AiryPair o = airy_at_origin(wp);
  BigComplex w[2] = {o.ai, o.bi};
  BigComplex dw[2] = {o.ai_prime, o.bi_prime};
  BigComplex xw = x.rounded_to(wp);
  const double len = std::hypot(x.re.to_double(), x.im.to_double());
  if (len == 0.0) return o;
  BigComplex dir = xw / abs(xw);
  BigComplex x0(wp);
  double r0 = 0.0;
  for (;;) {
    double ell = std::cbrt(s * s);
    for (int it = 0; it < 40; ++it) ell = s / std::sqrt(r0 + ell);
    bool last = r0 + ell >= len * (1.0 - 1e-12);
    BigComplex h = last ? xw - x0 : dir * BigReal(ell, wp);
    double hl = last ? len - r0 : ell;
    double s_eff = hl * std::sqrt(r0) + std::pow(hl, 1.5);
    airy_taylor_step(x0, h, w, dw, wp, s_eff);
    if (last) break;
    x0 += h;
    r0 += ell;
  }
  return AiryPair{w[0], dw[0], w[1], dw[1]};
}

inline double max_log2(std::initializer_list<const BigComplex*> v) {
  double m = -INFINITY;
  for (auto* c : v) m = std::max(m, c->log2_abs());
  return m;
}

}  // namespace detail

/// Ai, Ai', Bi, Bi' at x, each to roughly `bits` correct bits. Working precision
/// is chosen from the predicted loss on the recessive side and checked afterwards
/// against the observed growth of the fundamental matrix.
inline AiryPair airy_pair_at(const BigComplex& x, Bits bits) {
  const double est0 = detail::airy_recessive_loss(x.re.to_double(), x.im.to_double());
  double est = est0;
  for (int attempt = 0;; ++attempt) {
    double s = std::max(16.0, (static_cast<double>(bits) + est) / 32.0);
    double local = 2.0 * s * std::numbers::log2e;
    Bits wp = static_cast<Bits>(static_cast<double>(bits) + est + local + 64);
    AiryPair r = detail::airy_continue(x, wp, s);
    double g = detail::max_log2({&r.ai, &r.ai_prime, &r.bi, &r.bi_prime});
    double m_ai = detail::max_log2({&r.ai, &r.ai_prime});
    double m_bi = detail::max_log2({&r.bi, &r.bi_prime});
    double loss = std::max(g - m_ai, g - m_bi) + 2.0;
    if (static_cast<double>(wp) - loss - local >= static_cast<double>(bits) + 16 || attempt >= 6) {
      return AiryPair{r.ai.rounded_to(bits), r.ai_prime.rounded_to(bits), r.bi.rounded_to(bits),
                      r.bi_prime.rounded_to(bits)};
    }
    est = std::max(loss + 32, 2.0 * est + 64);
  }
}

/// Ai, Ai', Bi, Bi' at x to ctx.target_rel_tol (componentwise), via refine().
inline Refined<AiryPair> airy_pair(const BigComplex& x, const PrecisionContext& ctx) {
  return refine([&](Bits b) { return airy_pair_at(x.rounded_to(std::max(b, x.precision())), b); }, ctx);
}

/// w^(m), m = 0..M, for a solution of w'' = x w, from w^(m+2) = x w^(m) + m w^(m-1).
inline std::vector<BigComplex> derivative_table(const BigComplex& x, const BigComplex& w, const BigComplex& w_prime,
                                                int M) {
  if (M < 0) throw DomainError("derivative_table: M must be >= 0");
  std::vector<BigComplex> d;
  d.reserve(static_cast<std::size_t>(M) + 1);
  d.push_back(w);
  if (M >= 1) d.push_back(w_prime);
  for (int m = 0; m + 2 <= M; ++m) {
    BigComplex next = x * d[static_cast<std::size_t>(m)];
    if (m >= 1) next += d[static_cast<std::size_t>(m - 1)] * static_cast<long>(m);
    d.push_back(std::move(next));
  }
  return d;
}

struct SeedDerivTable {
  BigComplex z;
  SeedSpec seed;
  int max_order = 0;
  std::vector<BigComplex> values;

  std::vector<BigComplex> components() const { return values; }
};

/// d^m phi / dz^m, m = 0..M, at one precision. Extra bits are taken when the
/// seed combination cancels (phi recessive while Ai and Bi are not).
inline SeedDerivTable seed_derivatives_at(const BigComplex& z, const SeedSpec& seed, int M, Bits bits) {
  if (M < 0) throw DomainError("seed_derivatives: M must be >= 0");
  Bits inner = bits + 32;
  for (int attempt = 0;; ++attempt) {
    BigReal k = -pow2_ratio(-1, 3, inner);
    BigComplex x = z.rounded_to(inner) * k;
    AiryPair a = airy_pair_at(x, inner);
    BigComplex c1ai = seed.c1 * a.ai, c2bi = seed.c2 * a.bi;
    BigComplex c1aip = seed.c1 * a.ai_prime, c2bip = seed.c2 * a.bi_prime;
    BigComplex w = c1ai + c2bi;
    BigComplex wd = c1aip + c2bip;
    double parts = detail::max_log2({&c1ai, &c2bi, &c1aip, &c2bip});
    double whole = detail::max_log2({&w, &wd});
    double loss = parts - whole;
    if (loss > 24 && attempt < 4) {
      Bits want = bits + static_cast<Bits>(loss) + 64;
      if (want > inner) {
        inner = want;
        continue;
      }
    }
    std::vector<BigComplex> t = derivative_table(x, w, wd, M);
    BigComplex scale(BigReal(1, inner));
    for (auto& v : t) {
      v = (v * scale).rounded_to(bits);
      scale *= k;
    }
    return SeedDerivTable{z, seed, M, std::move(t)};
  }
}

inline Refined<SeedDerivTable> seed_derivatives(const BigComplex& z, const SeedSpec& seed, int M,
                                                const PrecisionContext& ctx) {
  return refine([&](Bits b) { return seed_derivatives_at(z, seed, M, b); }, ctx);
}

}  // namespace airytau
