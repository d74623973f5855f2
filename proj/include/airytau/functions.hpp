// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "bigfloat.hpp"
#include "context.hpp"
#include "errors.hpp"

namespace airytau {

/// Barnes G at a positive integer: prod_{k=0}^{n-2} k!.
inline BigReal barnes_g(long n, Bits bits = kDefaultBits) {
  if (n < 1) throw DomainError("barnes_g: n must be >= 1, got " + std::to_string(n));
  BigReal g(1, bits);
  BigReal f(1, bits);
  for (long k = 2; k <= n - 2; ++k) {
    f *= k;
    g *= f;
  }
  return g;
}

/// log|-z| + i arg(-z) on the plane cut along the positive real z axis.
inline BigComplex principal_log_negz(const BigComplex& z) {
  if (z.is_zero()) throw DomainError("(-z)^a undefined at z = 0");
  if (z.im.is_zero() && z.re.sign() > 0) throw BranchError("z on the branch cut arg(-z) = pi");
  return log(-z);
}

/// (-z)^alpha, principal branch. The only complex power used by the asymptotic formulas.
inline BigComplex principal_negz_power(const BigComplex& z, const BigReal& alpha) {
  BigComplex l = principal_log_negz(z);
  return exp(l * alpha);
}

inline BigComplex principal_negz_power(const BigComplex& z, Rational alpha) {
  if (alpha.den == 1 && alpha.num >= 0 && alpha.num <= 64) {
    if (z.is_zero()) throw DomainError("(-z)^a undefined at z = 0");
    if (z.im.is_zero() && z.re.sign() > 0) throw BranchError("z on the branch cut arg(-z) = pi");
    return pow(-z, alpha.num);
  }
  return principal_negz_power(z, alpha.to_big(z.precision()));
}

}  // namespace airytau
