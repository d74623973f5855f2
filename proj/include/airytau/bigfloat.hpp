// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "errors.hpp"

namespace airytau {

using Bits = mpfr_prec_t;

inline constexpr Bits kDefaultBits = 256;

namespace detail {
inline Bits clamp_bits(Bits b) { return std::max<Bits>(b, MPFR_PREC_MIN); }
}  // namespace detail

/// Real number held at a caller-chosen precision. Binary operations produce a
/// result at the larger of the two operand precisions, correctly rounded.
class BigReal {
 public:
  explicit BigReal(Bits bits = kDefaultBits) {
    mpfr_init2(v_, detail::clamp_bits(bits));
    mpfr_set_zero(v_, 1);
  }
  template <std::signed_integral I>
  BigReal(I value, Bits bits) : BigReal(bits) {
    mpfr_set_si(v_, static_cast<long>(value), MPFR_RNDN);
  }
  template <std::unsigned_integral I>
  BigReal(I value, Bits bits) : BigReal(bits) {
    mpfr_set_ui(v_, static_cast<unsigned long>(value), MPFR_RNDN);
  }
  BigReal(double value, Bits bits) : BigReal(bits) { mpfr_set_d(v_, value, MPFR_RNDN); }

  BigReal(const BigReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigReal(BigReal&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigReal& operator=(const BigReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigReal& operator=(BigReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigReal() { mpfr_clear(v_); }

  /// Parses a plain decimal such as "-1.25e-3". Throws DomainError when malformed.
  static BigReal from_decimal(std::string_view text, Bits bits) {
    BigReal r(bits);
    std::string s(text);
    if (s.empty() || std::isspace(static_cast<unsigned char>(s[0])))
      throw DomainError("malformed decimal '" + s + "'");
    char* end = nullptr;
    mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (end != s.c_str() + s.size()) throw DomainError("malformed decimal '" + s + "'");
    return r;
  }

  static BigReal pi(Bits bits) {
    BigReal r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static BigReal ln2(Bits bits) {
    BigReal r(bits);
    mpfr_const_log2(r.v_, MPFR_RNDN);
    return r;
  }
  /// num/den rounded once.
  static BigReal ratio(long num, long den, Bits bits) {
    BigReal r(num, bits);
    mpfr_div_si(r.v_, r.v_, den, MPFR_RNDN);
    return r;
  }

  Bits precision() const { return mpfr_get_prec(v_); }
  BigReal rounded_to(Bits bits) const {
    BigReal r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// e with 2^(e-1) <= |x| < 2^e; LONG_MIN for zero.
  long exponent() const {
    if (!mpfr_regular_p(v_)) return LONG_MIN;
    return static_cast<long>(mpfr_get_exp(v_));
  }
  /// log2|x| as a double, usable far outside the double exponent range.
  double log2_abs() const {
    if (is_zero()) return -INFINITY;
    long e = 0;
    double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
    return std::log2(std::fabs(m)) + static_cast<double>(e);
  }

  /// Mantissa/exponent decimal with enough digits to round-trip, e.g. "3.5502805388781723926e-1".
  std::string to_decimal(std::size_t digits = 0) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return mpfr_signbit(v_) ? "-0e0" : "0e0";
    mpfr_exp_t e10 = 0;
    char* raw = mpfr_get_str(nullptr, &e10, 10, digits, v_, MPFR_RNDN);
    std::string m(raw);
    mpfr_free_str(raw);
    std::string out;
    std::size_t i = 0;
    if (m[0] == '-') {
      out.push_back('-');
      i = 1;
    }
    out.push_back(m[i]);
    std::string frac = m.substr(i + 1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    out += "e" + std::to_string(static_cast<long>(e10) - 1);
    return out;
  }

  /// `<decimal>@<bits>`
  std::string serialize() const { return to_decimal() + "@" + std::to_string(precision()); }

  static BigReal deserialize(std::string_view text) {
    auto at = text.rfind('@');
    if (at == std::string_view::npos || at + 1 >= text.size())
      throw DomainError("missing precision annotation in '" + std::string(text) + "'");
    std::string_view digits = text.substr(at + 1);
    Bits bits = 0;
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw DomainError("bad precision annotation in '" + std::string(text) + "'");
      bits = bits * 10 + (c - '0');
    }
    if (bits < MPFR_PREC_MIN) throw DomainError("precision annotation too small");
    std::string_view num = text.substr(0, at);
    BigReal r(bits);
    if (num == "nan") mpfr_set_nan(r.v_);
    else if (num == "inf") mpfr_set_inf(r.v_, 1);
    else if (num == "-inf") mpfr_set_inf(r.v_, -1);
    else r = from_decimal(num, bits);
    return r;
  }

  BigReal operator-() const {
    BigReal r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  BigReal& operator+=(const BigReal& o) { return widen(o), mpfr_add(v_, v_, o.v_, MPFR_RNDN), *this; }
  BigReal& operator-=(const BigReal& o) { return widen(o), mpfr_sub(v_, v_, o.v_, MPFR_RNDN), *this; }
  BigReal& operator*=(const BigReal& o) { return widen(o), mpfr_mul(v_, v_, o.v_, MPFR_RNDN), *this; }
  BigReal& operator/=(const BigReal& o) { return widen(o), mpfr_div(v_, v_, o.v_, MPFR_RNDN), *this; }
  BigReal& operator*=(long k) { return mpfr_mul_si(v_, v_, k, MPFR_RNDN), *this; }
  BigReal& operator/=(long k) { return mpfr_div_si(v_, v_, k, MPFR_RNDN), *this; }
  BigReal& operator+=(long k) { return mpfr_add_si(v_, v_, k, MPFR_RNDN), *this; }
  BigReal& operator-=(long k) { return mpfr_sub_si(v_, v_, k, MPFR_RNDN), *this; }

  friend BigReal operator+(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_add); }
  friend BigReal operator-(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_sub); }
  friend BigReal operator*(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_mul); }
  friend BigReal operator/(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_div); }

  friend BigReal operator+(BigReal a, long k) { return a += k; }
  friend BigReal operator-(BigReal a, long k) { return a -= k; }
  friend BigReal operator*(BigReal a, long k) { return a *= k; }
  friend BigReal operator/(BigReal a, long k) { return a /= k; }
  friend BigReal operator+(long k, BigReal a) { return a += k; }
  friend BigReal operator*(long k, BigReal a) { return a *= k; }
  friend BigReal operator-(long k, const BigReal& a) {
    BigReal r(a.precision());
    mpfr_si_sub(r.v_, k, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator/(long k, const BigReal& a) {
    BigReal r(a.precision());
    mpfr_si_div(r.v_, k, a.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const BigReal& a, long k) { return mpfr_cmp_si(a.v_, k) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, long k) {
    if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp_si(a.v_, k);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.serialize(); }

#define AIRYTAU_UNARY(name, fn)                   \
  friend BigReal name(const BigReal& x) {         \
    BigReal r(x.precision());                     \
    fn(r.v_, x.v_, MPFR_RNDN);                    \
    return r;                                     \
  }
  AIRYTAU_UNARY(sqrt, mpfr_sqrt)
  AIRYTAU_UNARY(cbrt, mpfr_cbrt)
  AIRYTAU_UNARY(exp, mpfr_exp)
  AIRYTAU_UNARY(log, mpfr_log)
  AIRYTAU_UNARY(log2, mpfr_log2)
  AIRYTAU_UNARY(sin, mpfr_sin)
  AIRYTAU_UNARY(cos, mpfr_cos)
  AIRYTAU_UNARY(tan, mpfr_tan)
  AIRYTAU_UNARY(atan, mpfr_atan)
  AIRYTAU_UNARY(sinh, mpfr_sinh)
  AIRYTAU_UNARY(cosh, mpfr_cosh)
  AIRYTAU_UNARY(tanh, mpfr_tanh)
  AIRYTAU_UNARY(abs, mpfr_abs)
  AIRYTAU_UNARY(gamma, mpfr_gamma)
#undef AIRYTAU_UNARY

  friend BigReal floor(const BigReal& x) {
    BigReal r(x.precision());
    mpfr_floor(r.v_, x.v_);
    return r;
  }
  friend BigReal round(const BigReal& x) {
    BigReal r(x.precision());
    mpfr_round(r.v_, x.v_);
    return r;
  }
  friend BigReal atan2(const BigReal& y, const BigReal& x) { return binary(y, x, mpfr_atan2); }
  friend BigReal hypot(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_hypot); }
  friend BigReal pow(const BigReal& a, const BigReal& b) { return binary(a, b, mpfr_pow); }
  friend BigReal pow(const BigReal& a, long k) {
    BigReal r(a.precision());
    mpfr_pow_si(r.v_, a.v_, k, MPFR_RNDN);
    return r;
  }
  /// x * 2^k, exact.
  friend BigReal ldexp(const BigReal& x, long k) {
    BigReal r(x.precision());
    mpfr_mul_2si(r.v_, x.v_, k, MPFR_RNDN);
    return r;
  }
  friend const BigReal& max(const BigReal& a, const BigReal& b) { return (a < b) ? b : a; }
  friend const BigReal& min(const BigReal& a, const BigReal& b) { return (b < a) ? b : a; }

 private:
  template <class Fn>
  static BigReal binary(const BigReal& a, const BigReal& b, Fn fn) {
    BigReal r(std::max(a.precision(), b.precision()));
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  void widen(const BigReal& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  }

  mpfr_t v_;
};

inline BigReal factorial(unsigned long n, Bits bits) {
  BigReal r(bits);
  mpfr_fac_ui(r.raw(), n, MPFR_RNDN);
  return r;
}

/// 2^(num/den) rounded at `bits`.
inline BigReal pow2_ratio(long num, long den, Bits bits) {
  return pow(BigReal(2, bits), BigReal::ratio(num, den, bits));
}

/// Complex number as a pair of BigReal.
class BigComplex {
 public:
  BigReal re;
  BigReal im;

  explicit BigComplex(Bits bits = kDefaultBits) : re(bits), im(bits) {}
  BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
  BigComplex(const BigReal& r) : re(r), im(0, r.precision()) {}  // NOLINT(google-explicit-constructor)
  BigComplex(double r, double i, Bits bits) : re(r, bits), im(i, bits) {}

  static BigComplex polar(const BigReal& radius, const BigReal& theta) {
    BigReal s(theta.precision()), c(theta.precision());
    mpfr_sin_cos(s.raw(), c.raw(), theta.raw(), MPFR_RNDN);
    return {radius * c, radius * s};
  }
  /// e^{i*pi*num/den}; exact at multiples of pi/2.
  static BigComplex unit_root(long num, long den, Bits bits) {
    long g = std::gcd(num, den);
    num /= g;
    den /= g;
    if (den < 0) num = -num, den = -den;
    if (den == 1 || den == 2) {
      long k = (((num % (2 * den)) + 2 * den) % (2 * den));
      // k in units of pi/den over a full turn
      if (den == 1) return BigComplex(k == 0 ? 1.0 : -1.0, 0.0, bits);
      static constexpr double tab[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      return BigComplex(tab[k][0], tab[k][1], bits);
    }
    return polar(BigReal(1, bits), BigReal::pi(bits) * num / den);
  }

  Bits precision() const { return std::max(re.precision(), im.precision()); }
  BigComplex rounded_to(Bits bits) const { return {re.rounded_to(bits), im.rounded_to(bits)}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  bool is_real() const { return im.is_zero(); }

  /// Upper estimate of log2|z| from the component exponents; -inf for zero.
  double log2_abs() const {
    double a = re.log2_abs(), b = im.log2_abs();
    double m = std::max(a, b);
    if (std::isinf(m)) return m;
    return m + 0.5 * std::log2(1.0 + std::exp2(2.0 * (std::min(a, b) - m)));
  }

  /// `re=<decimal>@<bits>;im=<decimal>@<bits>`
  std::string serialize() const { return "re=" + re.serialize() + ";im=" + im.serialize(); }
  static BigComplex deserialize(std::string_view text) {
    auto semi = text.find(';');
    if (text.substr(0, 3) != "re=" || semi == std::string_view::npos || text.substr(semi + 1, 3) != "im=")
      throw DomainError("malformed complex serialization '" + std::string(text) + "'");
    return {BigReal::deserialize(text.substr(3, semi - 3)), BigReal::deserialize(text.substr(semi + 4))};
  }

  BigComplex operator-() const { return {-re, -im}; }

  BigComplex& operator+=(const BigComplex& o) { return re += o.re, im += o.im, *this; }
  BigComplex& operator-=(const BigComplex& o) { return re -= o.re, im -= o.im, *this; }
  BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
  BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }
  BigComplex& operator*=(const BigReal& o) { return re *= o, im *= o, *this; }
  BigComplex& operator/=(const BigReal& o) { return re /= o, im /= o, *this; }
  BigComplex& operator*=(long k) { return re *= k, im *= k, *this; }
  BigComplex& operator/=(long k) { return re /= k, im /= k, *this; }

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    Bits p = std::max(a.precision(), b.precision());
    BigComplex r(p);
    mpfr_fmms(r.re.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_fmma(r.im.raw(), a.re.raw(), b.im.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
    return r;
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    if (b.im.is_zero()) return {a.re / b.re, a.im / b.re};
    Bits p = std::max(a.precision(), b.precision());
    BigReal d(p);
    mpfr_fmma(d.raw(), b.re.raw(), b.re.raw(), b.im.raw(), b.im.raw(), MPFR_RNDN);
    BigComplex r(p);
    mpfr_fmma(r.re.raw(), a.re.raw(), b.re.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_fmms(r.im.raw(), a.im.raw(), b.re.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
    r.re /= d;
    r.im /= d;
    return r;
  }
  friend BigComplex operator*(BigComplex a, const BigReal& b) { return a *= b; }
  friend BigComplex operator*(const BigReal& b, BigComplex a) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigReal& b) { return a /= b; }
  friend BigComplex operator*(BigComplex a, long k) { return a *= k; }
  friend BigComplex operator*(long k, BigComplex a) { return a *= k; }
  friend BigComplex operator/(BigComplex a, long k) { return a /= k; }
  friend BigComplex operator+(BigComplex a, const BigReal& b) { return a.re += b, a; }
  friend BigComplex operator-(BigComplex a, const BigReal& b) { return a.re -= b, a; }

  friend bool operator==(const BigComplex& a, const BigComplex& b) { return a.re == b.re && a.im == b.im; }

  friend std::ostream& operator<<(std::ostream& os, const BigComplex& z) { return os << z.serialize(); }

  friend BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }
  friend BigReal abs(const BigComplex& z) { return hypot(z.re, z.im); }
  friend BigReal norm(const BigComplex& z) {
    BigReal r(z.precision());
    mpfr_fmma(r.raw(), z.re.raw(), z.re.raw(), z.im.raw(), z.im.raw(), MPFR_RNDN);
    return r;
  }
  /// Principal argument in (-pi, pi]; a negative real with -0 imaginary part maps to pi.
  friend BigReal arg(const BigComplex& z) {
    if (z.im.is_zero()) {
      if (z.re.sign() < 0) return BigReal::pi(z.precision());
      return BigReal(0, z.precision());
    }
    return atan2(z.im, z.re);
  }
  friend BigComplex exp(const BigComplex& z) { return polar(exp(z.re), z.im); }
  friend BigComplex log(const BigComplex& z) {
    if (z.is_zero()) throw DomainError("log(0)");
    return {log(abs(z)), arg(z)};
  }
  /// Principal square root, cancellation-free.
  friend BigComplex sqrt(const BigComplex& z) {
    Bits p = z.precision();
    if (z.is_zero()) return BigComplex(p);
    BigReal t = sqrt((abs(z) + abs(z.re)) / 2);
    if (z.re.sign() >= 0) return {t, z.im / (2 * t)};
    BigReal u = abs(z.im) / (2 * t);
    return {u, z.im.sign() < 0 ? -t : t};
  }
  friend BigComplex pow(const BigComplex& z, long k) {
    BigComplex r(BigReal(1, z.precision()));
    BigComplex b = z;
    bool inv = k < 0;
    unsigned long e = inv ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return inv ? BigComplex(BigReal(1, z.precision())) / r : r;
  }
};

}  // namespace airytau
