// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <random>

#include "airytau/bigfloat.hpp"

namespace airytau::testing {

/// log10 of |a - b| / |b| (or of |a - b| when b is zero).
inline double log10_rel(const BigComplex& a, const BigComplex& b) {
  BigComplex d = a - b;
  if (d.is_zero()) return -INFINITY;
  double num = d.log2_abs();
  double den = b.is_zero() ? 0.0 : b.log2_abs();
  return (num - den) * std::log10(2.0);
}

inline double log10_abs(const BigComplex& a) { return a.log2_abs() * std::log10(2.0); }

inline BigComplex cx(double re, double im, Bits bits = 256) { return BigComplex(re, im, bits); }

/// Fixed-seed source for property loops.
inline std::mt19937_64 rng(unsigned seed = 20240611u) { return std::mt19937_64(seed); }

}  // namespace airytau::testing
