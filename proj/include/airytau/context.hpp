// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numeric>
#include <string>
#include <type_traits>
#include <vector>

#include "bigfloat.hpp"
#include "errors.hpp"

namespace airytau {

/// Reduced fraction with positive denominator.
struct Rational {
  long num = 0;
  long den = 1;

  constexpr Rational() = default;
  constexpr Rational(long n, long d = 1) : num(n), den(d) {  // NOLINT(google-explicit-constructor)
    if (den == 0) throw DomainError("zero denominator");
    if (den < 0) num = -num, den = -den;
    long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) num /= g, den /= g;
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  BigReal to_big(Bits bits) const { return BigReal::ratio(num, den, bits); }
  std::string to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
  friend constexpr bool operator==(const Rational&, const Rational&) = default;
};

/// Precision policy carried by value into every evaluation.
struct PrecisionContext {
  Bits working_bits = kDefaultBits;
  BigReal target_rel_tol = BigReal::from_decimal("1e-30", 64);
  Bits max_bits = Bits{1} << 17;
  Rational escalation_factor{2, 1};

  static PrecisionContext with(Bits bits, double tol) {
    PrecisionContext c;
    c.working_bits = bits;
    c.target_rel_tol = BigReal(tol, 64);
    c.validate();
    return c;
  }

  void validate() const {
    if (working_bits < MPFR_PREC_MIN) throw DomainError("working_bits must be positive");
    if (working_bits > max_bits) throw DomainError("working_bits exceeds max_bits");
    if (!(target_rel_tol > 0L)) throw DomainError("target_rel_tol must be positive");
    if (escalation_factor.num <= escalation_factor.den) throw DomainError("escalation_factor must exceed 1");
  }

  Bits next_bits(Bits b) const {
    Bits n = (b * escalation_factor.num + escalation_factor.den - 1) / escalation_factor.den;
    return std::max(n, b + 1);
  }

  /// Bits needed to resolve target_rel_tol.
  Bits tol_bits() const { return static_cast<Bits>(std::ceil(-target_rel_tol.log2_abs())); }
};

template <class T>
struct Refined {
  T value;
  BigReal err_est;
  Bits bits_used = 0;
  int rounds = 0;
};

namespace detail {

template <class T>
std::vector<BigComplex> refine_components(const T& v) {
  if constexpr (std::is_same_v<T, BigComplex>) return {v};
  else if constexpr (std::is_same_v<T, BigReal>) return {BigComplex(v)};
  else if constexpr (std::is_same_v<T, std::vector<BigComplex>>) return v;
  else return v.components();
}

template <class T>
std::string refine_serialize(const T& v) {
  auto c = refine_components(v);
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + c[i].serialize();
  return s;
}

/// Largest componentwise difference, and whether every component agrees to
/// `tol` relative to itself (with a floor at the working epsilon of the largest one).
struct Agreement {
  BigReal max_diff;
  bool within = false;
};

inline Agreement agree(const std::vector<BigComplex>& prev, const std::vector<BigComplex>& cur,
                       const BigReal& tol) {
  if (prev.size() != cur.size()) throw DomainError("refine: evaluator changed result arity");
  Bits p = cur.empty() ? kDefaultBits : cur.front().precision();
  Agreement a{BigReal(0, 64), true};
  double top = -INFINITY;
  for (const auto& c : cur) top = std::max(top, c.log2_abs());
  for (std::size_t i = 0; i < cur.size(); ++i) {
    if (!cur[i].is_finite() || !prev[i].is_finite()) {
      a.within = false;
      continue;
    }
    BigReal d = abs(cur[i] - prev[i]);
    if (d > a.max_diff) a.max_diff = d.rounded_to(64);
    if (d.is_zero()) continue;
    double lt = tol.log2_abs();
    double floor = top + std::min(lt, 16.0 - static_cast<double>(p));
    double bound = std::max(lt + cur[i].log2_abs(), floor);
    if (d.log2_abs() > bound) a.within = false;
  }
  return a;
}

}  // namespace detail

/// Evaluates `eval(bits)` at working_bits, then at escalated precisions, until
/// two successive results agree to target_rel_tol. err_est is the observed
/// difference between the last two rounds (a heuristic, not a bound).
template <class Eval>
auto refine(Eval&& eval, const PrecisionContext& ctx) -> Refined<std::decay_t<decltype(eval(Bits{}))>> {
  using T = std::decay_t<decltype(eval(Bits{}))>;
  ctx.validate();
  Bits bits = ctx.working_bits;
  T prev = eval(bits);
  int rounds = 1;
  for (;;) {
    Bits next = ctx.next_bits(bits);
    if (next > ctx.max_bits) {
      throw PrecisionExhausted("no agreement below max_bits=" + std::to_string(ctx.max_bits), "",
                               detail::refine_serialize(prev));
    }
    T cur = eval(next);
    ++rounds;
    auto a = detail::agree(detail::refine_components(prev), detail::refine_components(cur), ctx.target_rel_tol);
    if (a.within) return Refined<T>{std::move(cur), std::move(a.max_diff), next, rounds};
    if (ctx.next_bits(next) > ctx.max_bits) {
      throw PrecisionExhausted("no agreement below max_bits=" + std::to_string(ctx.max_bits),
                               detail::refine_serialize(prev), detail::refine_serialize(cur));
    }
    prev = std::move(cur);
    bits = next;
  }
}

}  // namespace airytau
