// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "airy.hpp"
#include "asymptotics.hpp"
#include "bigfloat.hpp"
#include "context.hpp"
#include "errors.hpp"
#include "functions.hpp"
#include "quadrature.hpp"
#include "seed.hpp"
#include "tau.hpp"

namespace airytau {

struct OracleReport {
  std::string name;
  std::string inputs;
  BigReal residual;
  BigReal tolerance;
  bool pass = false;
  bool vacuous = false;
  double seconds = 0;
};

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline OracleReport make_report(std::string name, std::string inputs, BigReal residual, double tol,
                                const Stopwatch& sw) {
  BigReal t(tol, 64);
  bool pass = residual.is_finite() && residual <= t;
  return OracleReport{std::move(name), std::move(inputs), std::move(residual), std::move(t), pass, false, sw.seconds()};
}

inline std::string fmt(const BigComplex& z) { return z.re.to_decimal(6) + (z.im.sign() < 0 ? "" : "+") + z.im.to_decimal(6) + "i"; }

inline BigReal rel_diff(const BigComplex& a, const BigComplex& b) {
  BigReal d = abs(a - b);
  BigReal s = std::max(abs(a), abs(b));
  return s.is_zero() ? d : d / s;
}

/// |sum of terms| / max |term|.
inline BigReal normalized_residual(const std::vector<BigComplex>& terms) {
  BigComplex s(terms.front().precision());
  BigReal top(0, terms.front().precision());
  for (const auto& t : terms) {
    s += t;
    top = std::max(top, abs(t));
  }
  return top.is_zero() ? abs(s) : abs(s) / top;
}

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Moments against seed derivatives.

/// d^k phi/dz^k = 2^{-k/3} [C1 mu^Ai_k + C2 mu^Bi_k].
inline OracleReport moment_identity_check(int k, const BigComplex& z, const SeedSpec& seed,
                                          const PrecisionContext& ctx, double tol = 1e-12) {
  detail::Stopwatch sw;
  auto a = moments(k, z, ContourSpec{ContourKind::Ai}, ctx).values;
  auto b = moments(k, z, ContourSpec{ContourKind::Bi}, ctx).values;
  BigComplex lhs = seed_derivatives(z, seed, k, ctx).value.values.back();
  BigComplex rhs = (seed.c1 * a.back() + seed.c2 * b.back()) * pow2_ratio(-k, 3, ctx.working_bits);
  return detail::make_report("moment_identity", "k=" + std::to_string(k) + " z=" + detail::fmt(z),
                             detail::rel_diff(lhs, rhs), tol, sw);
}

// ---------------------------------------------------------------------------------------------
// Heine: sums of mixed moment determinants against multi-fold contour quadrature.

namespace detail {

/// Sum over row subsets S with |S| = r of det(rows in S from ma, others from mb)_{j+k}.
inline BigComplex mixed_moment_det_sum(int n, int r, const std::vector<BigComplex>& ma,
                                       const std::vector<BigComplex>& mb) {
  BigComplex total(ma.front().precision());
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != r) continue;
    std::vector<std::vector<BigComplex>> a(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        a[static_cast<std::size_t>(j)].push_back(((mask >> j) & 1u) ? ma[static_cast<std::size_t>(j + k)]
                                                                     : mb[static_cast<std::size_t>(j + k)]);
    BigComplex det(ma.front().precision());
    if (n == 1) {
      det = a[0][0];
    } else {
      det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    }
    total += det;
  }
  return total;
}

}  // namespace detail

/// Compares sum_{|S|=r} det(mixed moments) with (1/(r!(n-r)!)) * integral over Ai^r x Bi^{n-r} of
/// Delta(t)^2 prod w(t_k), the latter by an explicit tensor rule independent of the moment rule.
inline OracleReport heine_determinant_check(int n, int r, const BigComplex& z, const PrecisionContext& ctx,
                                            double tol = 1e-10) {
  if (n < 1 || n > 2 || r < 0 || r > n) throw DomainError("heine_determinant_check: need n in {1,2}, 0 <= r <= n");
  detail::Stopwatch sw;
  const Bits bits = ctx.working_bits;
  auto ma = moments(2 * n - 2, z, ContourSpec{ContourKind::Ai}, ctx);
  auto mb = moments(2 * n - 2, z, ContourSpec{ContourKind::Bi}, ctx);
  // Undo the prefactors: the Heine integrals are over the bare weight.
  BigComplex pa = BigComplex(BigReal(0, bits), 2 * BigReal::pi(bits));
  BigComplex pb = BigComplex(2 * BigReal::pi(bits));
  std::vector<BigComplex> ra, rb;
  for (auto& v : ma.values) ra.push_back(v * pa);
  for (auto& v : mb.values) rb.push_back(v * pb);
  BigComplex det_side = detail::mixed_moment_det_sum(n, r, ra, rb);

  // Independent rule: wider radius, different step, lower precision (the target is 1e-10).
  const Bits qb = 96;
  double R2 = 1.37 * std::max(ma.radius, mb.radius);
  auto rule = tanh_sinh_rule(std::max(std::max(ma.level, mb.level) - 1, 3), qb);
  auto na = contour_nodes(ContourKind::Ai, z, R2, rule, qb);
  auto nb = contour_nodes(ContourKind::Bi, z, R2, rule, qb);
  BigComplex quad(qb);
  if (n == 1) {
    for (const auto& p : (r == 1 ? na : nb)) quad += p.weight;
  } else {
    const auto& first = r >= 1 ? na : nb;
    const auto& second = r == 2 ? na : nb;
    for (const auto& p : first) {
      BigComplex row(qb);
      for (const auto& q : second) {
        BigComplex d = q.t - p.t;
        row += d * d * q.weight;
      }
      quad += row * p.weight;
    }
    if (r != 1) quad /= 2L;  // r!(n-r)!
  }
  return detail::make_report("heine", "n=" + std::to_string(n) + " r=" + std::to_string(r) + " z=" + detail::fmt(z),
                             detail::rel_diff(det_side, quad), tol, sw);
}

/// tau_n = 2^{-n(n-1)/3} (2 pi)^{-n} sum_r C1^r C2^{n-r} i^{-r} D_{n,r}, with D_{n,r} from mixed moments.
inline OracleReport heine_tau_check(int n, const BigComplex& z, const SeedSpec& seed, const PrecisionContext& ctx,
                                    double tol = 1e-10) {
  if (n < 1 || n > 2) throw DomainError("heine_tau_check: n must be 1 or 2");
  detail::Stopwatch sw;
  const Bits bits = ctx.working_bits;
  auto ma = moments(2 * n - 2, z, ContourSpec{ContourKind::Ai}, ctx).values;
  auto mb = moments(2 * n - 2, z, ContourSpec{ContourKind::Bi}, ctx).values;
  BigReal two_pi = 2 * BigReal::pi(bits);
  std::vector<BigComplex> ra, rb;
  for (auto& v : ma) ra.push_back(v * BigComplex(BigReal(0, bits), two_pi));
  for (auto& v : mb) rb.push_back(v * two_pi);
  BigComplex sum(bits);
  BigComplex minus_i(BigReal(0, bits), BigReal(-1, bits));
  for (int r = 0; r <= n; ++r) {
    sum += detail::mixed_moment_det_sum(n, r, ra, rb) * detail::ipow(seed.c1, r, bits) *
           detail::ipow(seed.c2, n - r, bits) * detail::ipow(minus_i, r, bits);
  }
  sum = sum * pow2_ratio(-static_cast<long>(n) * (n - 1), 3, bits) / pow(two_pi, static_cast<long>(n));
  BigComplex exact = tau(n, z, seed, ctx).value;
  return detail::make_report("heine_tau", "n=" + std::to_string(n) + " z=" + detail::fmt(z),
                             detail::rel_diff(sum, exact), tol, sw);
}

// ---------------------------------------------------------------------------------------------
// Selberg-type Gaussian integral.

namespace detail {

/// Physicists' Hermite H_m(x) and H_{m-1}(x).
inline std::pair<BigReal, BigReal> hermite(int m, const BigReal& x) {
  BigReal h0(1, x.precision()), h1 = 2 * x;
  if (m == 0) return {h0, BigReal(0, x.precision())};
  for (int k = 1; k < m; ++k) {
    BigReal h2 = 2 * x * h1 - 2L * k * h0;
    h0 = std::move(h1);
    h1 = std::move(h2);
  }
  return {h1, h0};
}

}  // namespace detail

struct GaussHermiteRule {
  std::vector<BigReal> x, w;
};

/// m-point Gauss-Hermite rule for weight e^{-x^2}: roots bracketed in double, polished by Newton.
inline GaussHermiteRule gauss_hermite(int m, Bits bits) {
  if (m < 1) throw DomainError("gauss_hermite: m must be >= 1");
  auto hd = [&](double x) { return detail::hermite(m, BigReal(x, 64)).first.to_double(); };
  GaussHermiteRule g;
  double lim = std::sqrt(2.0 * m + 1) + 1, step = 1e-3;
  for (double a = -lim; a < lim; a += step) {
    double fa = hd(a), fb = hd(a + step);
    if (fa == 0 || (fa < 0) != (fb < 0)) {
      double lo = a, hi = a + step;
      for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        ((hd(lo) < 0) == (hd(mid) < 0) ? lo : hi) = mid;
      }
      BigReal x(0.5 * (lo + hi), bits);
      for (int i = 0; i < 12; ++i) {
        auto [h, hm1] = detail::hermite(m, x);
        x -= h / (2L * m * hm1);  // H_m' = 2m H_{m-1}
      }
      auto hm1 = detail::hermite(m, x).second;
      BigReal w = pow2_ratio(m - 1, 1, bits) * factorial(static_cast<unsigned long>(m), bits) *
                  sqrt(BigReal::pi(bits)) / (static_cast<long>(m) * m * hm1 * hm1);
      g.x.push_back(std::move(x));
      g.w.push_back(std::move(w));
    }
  }
  if (static_cast<int>(g.x.size()) != m) throw QuadratureError("gauss_hermite: root count mismatch");
  return g;
}

/// Closed form S_d = (2 pi)^{d/2} (2C)^{-d^2/2} G(d+2).
inline BigReal selberg_closed_form(int d, const BigReal& C) {
  Bits b = C.precision();
  return pow(2 * BigReal::pi(b), BigReal::ratio(d, 2, b)) / pow(2 * C, BigReal::ratio(static_cast<long>(d) * d, 2, b)) *
         barnes_g(d + 2, b);
}

/// integral over R^d of Delta_d(v)^2 prod e^{-C v_k^2} by a tensor Gauss-Hermite rule with d+1 nodes.
inline BigReal selberg_quadrature(int d, const BigReal& C) {
  Bits b = C.precision();
  auto g = gauss_hermite(d + 1, b);
  const int m = d + 1;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  BigReal sum(0, b);
  while (true) {
    BigReal w(1, b), vd(1, b);
    for (int i = 0; i < d; ++i) {
      w *= g.w[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      for (int j = i + 1; j < d; ++j) {
        BigReal diff = g.x[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])] -
                       g.x[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        vd *= diff * diff;
      }
    }
    sum += w * vd;
    int k = 0;
    while (k < d && ++idx[static_cast<std::size_t>(k)] == m) idx[static_cast<std::size_t>(k++)] = 0;
    if (k == d) break;
  }
  // v = x / sqrt(C): dv^d and Delta^2 contribute C^{-d/2} C^{-d(d-1)/2}.
  return sum / pow(C, BigReal::ratio(static_cast<long>(d) * d, 2, b));
}

inline OracleReport selberg_check(int d, const BigReal& C, double tol = 1e-10) {
  if (d < 1 || C.sign() <= 0) throw DomainError("selberg_check: need d >= 1 and C > 0");
  detail::Stopwatch sw;
  BigReal exact = selberg_closed_form(d, C), quad = selberg_quadrature(d, C);
  BigReal res = abs(exact - quad) / abs(exact);
  return detail::make_report("selberg", "d=" + std::to_string(d) + " C=" + C.to_decimal(6), std::move(res), tol, sw);
}

// ---------------------------------------------------------------------------------------------
// Structural identities.

/// Exhaustive H(n, n-r, p) = (-1)^p H(n, r, p) for n <= nmax.
inline OracleReport h_symmetry_check(int nmax = 8) {
  detail::Stopwatch sw;
  long bad = 0;
  for (int n = 0; n <= nmax; ++n)
    for (int r = 0; r <= n; ++r)
      for (int p = 0; p <= n; ++p)
        if (H_coeff(n, n - r, p) != (p % 2 ? -1 : 1) * H_coeff(n, r, p)) ++bad;
  return detail::make_report("h_symmetry", "n<=" + std::to_string(nmax), BigReal(bad, 64), 0, sw);
}

/// Exhaustive b0(2s-1, r) = 0 and d0(2s, r) = 0 for C2 = 0, n <= nmax.
inline OracleReport c2zero_collapse_check(int nmax = 8) {
  detail::Stopwatch sw;
  SeedSpec s(BigComplex(0.8, 0.6, 128), BigComplex(128));
  BigReal worst(0, 128);
  for (int n = 1; n <= nmax; ++n)
    for (int r = 0; r <= n; ++r) worst = std::max(worst, abs(n % 2 ? b0(n, r, s, 128) : d0(n, r, s, 128)));
  return detail::make_report("c2zero_collapse", "n<=" + std::to_string(nmax), std::move(worst), 0, sw);
}

/// Toda: (log tau_n)'' = tau_{n+1} tau_{n-1} / tau_n^2.
inline OracleReport toda_check(int n, const BigComplex& z, const SeedSpec& seed, const PrecisionContext& ctx,
                               double tol = 1e-20) {
  if (n < 1) throw DomainError("toda_check: n must be >= 1");
  detail::Stopwatch sw;
  auto s = tau_jets({{n - 1, 0}, {n, 2}, {n + 1, 0}}, z, seed, ctx);
  const auto& t = s.of(n).d;
  BigComplex lhs = (t[2] * t[0] - t[1] * t[1]) / (t[0] * t[0]);
  BigComplex rhs = s.of(n + 1).value() * s.of(n - 1).value() / (t[0] * t[0]);
  return detail::make_report("toda", "n=" + std::to_string(n) + " z=" + detail::fmt(z), detail::rel_diff(lhs, rhs),
                             tol, sw);
}

inline OracleReport rotation_check(int n, const BigComplex& z, const SeedSpec& seed, int direction,
                                   const PrecisionContext& ctx, double tol = 1e-25) {
  detail::Stopwatch sw;
  Bits b = ctx.working_bits;
  BigComplex zr = BigComplex::unit_root(2L * direction, 3, b) * z;
  BigComplex lhs = tau(n, zr, seed, ctx).value;
  BigComplex rhs = rotation_phase(n, direction, b) * tau(n, z, rotate_seed(seed, direction), ctx).value;
  return detail::make_report("rotation",
                             "n=" + std::to_string(n) + " d=" + std::to_string(direction) + " z=" + detail::fmt(z),
                             detail::rel_diff(lhs, rhs), tol, sw);
}

// ---------------------------------------------------------------------------------------------
// ODE residuals.

enum class Equation { PII, P34, SII };

inline std::string to_string(Equation e) { return e == Equation::PII ? "P_II" : e == Equation::P34 ? "P_34" : "S_II"; }

/// Terms whose sum vanishes, for the chosen equation at (n, z). Derivatives come from tau jets.
inline std::vector<BigComplex> ode_terms(Equation eq, int n, const BigComplex& z, const SeedSpec& seed,
                                         const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("ode_terms: n must be >= 1");
  const Bits b = ctx.working_bits;
  BigComplex zz = z.rounded_to(b);
  switch (eq) {
    case Equation::SII: {
      auto s = tau_jets({{n, 3}}, z, seed, ctx);
      check_not_pole(s.jets[0], ctx);
      auto sg = sigma_jet(s.jets[0]);
      const BigComplex &s0 = sg[0], &s1 = sg[1], &s2 = sg[2];
      return {s2 * s2, s1 * s1 * s1 * 4L, zz * s1 * s1 * 2L, -(s1 * s0 * 2L),
              -BigComplex(BigReal::ratio(static_cast<long>(n) * n, 4, b))};
    }
    case Equation::P34: {
      auto s = tau_jets({{n, 4}}, z, seed, ctx);
      check_not_pole(s.jets[0], ctx);
      auto sg = sigma_jet(s.jets[0]);
      BigComplex p = sg[1] * -2L, p1 = sg[2] * -2L, p2 = sg[3] * -2L;
      return {p * p2, -(p1 * p1 / 2L), -(p * p * p * 2L), zz * p * p,
              BigComplex(BigReal::ratio(static_cast<long>(n) * n, 2, b))};
    }
    case Equation::PII: {
      auto s = tau_jets({{n - 1, 3}, {n, 3}}, z, seed, ctx);
      check_not_pole(s.of(n - 1), ctx);
      check_not_pole(s.of(n), ctx);
      auto a = sigma_jet(s.of(n - 1)), c = sigma_jet(s.of(n));
      BigComplex q = a[0] - c[0], q2 = a[2] - c[2];
      BigComplex alpha(BigReal::ratio(2L * n - 1, 2, b));
      return {q2, -(zz * q), -(q * q * q * 2L), -alpha};
    }
  }
  throw DomainError("unknown equation");
}

inline OracleReport ode_residual(Equation eq, int n, const BigComplex& z, const SeedSpec& seed,
                                 const PrecisionContext& ctx, double tol = 1e-18) {
  detail::Stopwatch sw;
  auto terms = ode_terms(eq, n, z, seed, ctx);
  return detail::make_report("ode_" + to_string(eq), "n=" + std::to_string(n) + " z=" + detail::fmt(z),
                             detail::normalized_residual(terms), tol, sw);
}

// ---------------------------------------------------------------------------------------------
// Decay sweeps.

enum class Quantity { Tau, Sigma, P, Q };

inline std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::Tau: return "tau";
    case Quantity::Sigma: return "sigma";
    case Quantity::P: return "p";
    case Quantity::Q: return "q";
  }
  return "?";
}

/// Which printed expansion a sweep exercises. `two_term` only matters for the Stokes forms.
struct FormulaId {
  Quantity quantity = Quantity::Tau;
  RegimeTag regime = RegimeTag::NonOscillatory;
  bool two_term = true;
  bool full_plane = false;

  std::string name() const {
    std::string r = regime == RegimeTag::NonOscillatory ? "nonosc"
                    : regime == RegimeTag::Oscillatory  ? "osc"
                                                        : (two_term ? "stokes" : "stokes1");
    if (full_plane) r = "fullplane";
    return to_string(quantity) + "-" + r;
  }

  static FormulaId parse(const std::string& s) {
    for (Quantity q : {Quantity::Tau, Quantity::Sigma, Quantity::P, Quantity::Q}) {
      for (const char* r : {"nonosc", "osc", "stokes", "stokes1", "fullplane"}) {
        FormulaId f{q};
        std::string rs = r;
        f.regime = rs == "nonosc" || rs == "fullplane" ? RegimeTag::NonOscillatory
                   : rs == "osc"                      ? RegimeTag::Oscillatory
                                                      : RegimeTag::StokesCorrected;
        f.two_term = rs != "stokes1";
        f.full_plane = rs == "fullplane";
        if (f.full_plane && q != Quantity::Tau) continue;
        if (f.name() == s) return f;
      }
    }
    throw DomainError("unknown formula '" + s + "'");
  }
};

/// The ray z = rho e^{i pi a}, a = num/den in (-1, 1]. Exact on the axes.
struct Ray {
  Rational arg_z_over_pi{1, 1};

  static Ray from_arg_negz(Rational a) {
    long num = a.num - a.den;  // arg z = arg(-z) - pi
    while (Rational(num, a.den).to_double() <= -1) num += 2 * a.den;
    while (Rational(num, a.den).to_double() > 1) num -= 2 * a.den;
    return Ray{Rational(num, a.den)};
  }
  BigComplex point(const BigReal& rho) const {
    return BigComplex::unit_root(arg_z_over_pi.num, arg_z_over_pi.den, rho.precision()) * rho;
  }
  std::string to_string() const { return "argz=" + arg_z_over_pi.to_string() + "pi"; }
};

/// Evaluate an expansion and the exact value at one point.
struct ComparePoint {
  BigComplex z;
  BigComplex exact;
  BigComplex asymptotic;
  BigReal error;
  Rational predicted_order;
  ErrorMeasure measure = ErrorMeasure::Relative;
};

inline BigComplex exact_quantity(Quantity q, int n, const BigComplex& z, const SeedSpec& seed,
                                 const PrecisionContext& ctx) {
  switch (q) {
    case Quantity::Tau: return tau(n, z, seed, ctx).value;
    case Quantity::Sigma: return sigma(n, z, seed, ctx);
    case Quantity::P: return p_fn(n, z, seed, ctx);
    case Quantity::Q: return q_fn(n, z, seed, ctx);
  }
  throw DomainError("unknown quantity");
}

inline ExpansionEval asymptotic_quantity(const FormulaId& f, int n, const BigComplex& z, const SeedSpec& seed,
                                         Bits bits) {
  if (f.quantity == Quantity::Tau) {
    if (f.full_plane) return tau_asym_full_plane(n, z, seed, bits);
    switch (f.regime) {
      case RegimeTag::NonOscillatory: return tau_asym_nonosc(n, z, seed, {}, bits);
      case RegimeTag::Oscillatory:
        if (!z.im.is_zero() || z.re.sign() <= 0) throw SectorError("oscillatory expansion needs real z > 0");
        return tau_asym_osc(n, z.re, seed, bits);
      case RegimeTag::StokesCorrected: return stokes_tau(n, z, seed, f.two_term, bits);
    }
  }
  PainleveFn fn = f.quantity == Quantity::Sigma ? PainleveFn::Sigma
                  : f.quantity == Quantity::P   ? PainleveFn::P
                                                : PainleveFn::Q;
  if (f.regime == RegimeTag::StokesCorrected) return stokes_painleve(n, z, seed, fn, f.two_term, bits);
  return painleve_asym(n, z, seed, fn, f.regime, bits);
}

inline ComparePoint compare_point(const FormulaId& f, int n, const BigComplex& z, const SeedSpec& seed,
                                  const PrecisionContext& ctx) {
  auto e = asymptotic_quantity(f, n, z, seed, ctx.working_bits);
  BigComplex ex = exact_quantity(f.quantity, n, z, seed, ctx);
  BigReal err = abs(e.value - ex);
  if (e.measure == ErrorMeasure::Relative) err = err / abs(ex);
  return ComparePoint{z, std::move(ex), std::move(e.value), std::move(err), e.predicted_error_order, e.measure};
}

/// Leading oscillatory phase psi = k (theta + m pi/4), theta = sqrt2 z^{3/2}/3, as (k, m).
inline std::pair<int, int> leading_phase(const FormulaId& f, int n) {
  if (f.quantity == Quantity::Q) {
    int s = (n + 1) / 2;
    return {1, 2 * s - 1};
  }
  return {n % 2 ? 1 : 2, n};
}

/// Smallest z >= rho with the leading phase congruent to 1 mod 2 pi.
inline BigReal phase_locked_rho(const FormulaId& f, int n, const BigReal& rho) {
  auto [k, m] = leading_phase(f, n);
  Bits b = rho.precision();
  BigReal pi = BigReal::pi(b);
  BigReal theta0 = sqrt(BigReal(2, b)) * rho * sqrt(rho) / 3;
  // theta* = 1/k - m pi/4 + 2 pi j / k
  BigReal base = BigReal(1, b) / static_cast<long>(k) - pi * static_cast<long>(m) / 4;
  BigReal period = 2 * pi / static_cast<long>(k);
  BigReal j = -floor((base - theta0) / period);
  BigReal theta = base + j * period;
  return pow(3 * theta / sqrt(BigReal(2, b)), BigReal::ratio(2, 3, b));
}

struct DecayResult {
  OracleReport report;
  std::vector<ComparePoint> points;
  double slope = 0;
  double predicted = 0;
};

inline double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Least-squares slope of log(error) against log(rho) along a ray; pass if within +-0.5 of the predicted order.
inline DecayResult decay_sweep(const FormulaId& f, int n, const SeedSpec& seed, const Ray& ray,
                               const std::vector<double>& rhos, const PrecisionContext& ctx, double band = 0.5) {
  if (rhos.size() < 3) throw DomainError("decay_sweep: need at least three radii");
  if (!std::is_sorted(rhos.begin(), rhos.end()) || rhos.front() <= 0)
    throw DomainError("decay_sweep: radii must be positive and increasing");
  detail::Stopwatch sw;
  DecayResult out;
  std::vector<double> lx, ly;
  bool underflow = false;
  for (double r : rhos) {
    BigReal rho(r, ctx.working_bits);
    if (f.regime == RegimeTag::Oscillatory) {
      if (!(ray.arg_z_over_pi == Rational(0))) throw SectorError("oscillatory sweeps run along arg z = 0");
      rho = phase_locked_rho(f, n, rho);
    }
    auto pt = compare_point(f, n, ray.point(rho), seed, ctx);
    double le = pt.error.log2_abs();
    if (pt.error.is_zero() || le < -static_cast<double>(ctx.working_bits) + 16) underflow = true;
    lx.push_back(std::log(rho.to_double()));
    ly.push_back(le * std::numbers::ln2);
    out.predicted = pt.predicted_order.to_double();
    out.points.push_back(std::move(pt));
  }
  std::ostringstream in;
  in << f.name() << " n=" << n << " " << ray.to_string() << " rho=";
  for (std::size_t i = 0; i < rhos.size(); ++i) in << (i ? "," : "") << rhos[i];
  if (underflow) {
    out.report = OracleReport{"decay", in.str(), BigReal(0, 64), BigReal(band, 64), true, true, sw.seconds()};
    return out;
  }
  out.slope = least_squares_slope(lx, ly);
  in << " slope=" << out.slope << " predicted=" << out.predicted;
  out.report = detail::make_report("decay", in.str(), BigReal(std::abs(out.slope - out.predicted), 64), band, sw);
  return out;
}

}  // namespace airytau
