// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "bigfloat.hpp"
#include "errors.hpp"

namespace airytau {

/// phi(z) = c1 Ai(-2^{-1/3} z) + c2 Bi(-2^{-1/3} z).
struct SeedSpec {
  BigComplex c1;
  BigComplex c2;

  SeedSpec(BigComplex a, BigComplex b) : c1(std::move(a)), c2(std::move(b)) {
    if (c1.is_zero() && c2.is_zero()) throw DomainError("seed (C1, C2) must not be (0, 0)");
  }
  SeedSpec(double a, double b, Bits bits = kDefaultBits)
      : SeedSpec(BigComplex(a, 0.0, bits), BigComplex(b, 0.0, bits)) {}

  bool c2_zero() const { return c2.is_zero(); }
  std::string serialize() const { return "C1{" + c1.serialize() + "},C2{" + c2.serialize() + "}"; }
};

}  // namespace airytau
