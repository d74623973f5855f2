// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace airytau {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// z lies on the branch cut of (-z)^a, i.e. arg(-z) = +-pi.
class BranchError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// z lies outside the sector in which an asymptotic formula holds.
class SectorError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The oscillatory form was asked for too close to a zero of its denominator.
class NearDenominatorZeroError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// |tau_n(z)| is indistinguishable from zero: z sits on a pole of the log-derivatives.
class NearPoleError : public Error {
 public:
  using Error::Error;
};

/// Escalation hit max_bits before two successive precisions agreed.
class PrecisionExhausted : public Error {
 public:
  PrecisionExhausted(const std::string& what, std::string previous, std::string last)
      : Error(what), previous_(std::move(previous)), last_(std::move(last)) {}

  const std::string& previous_value() const noexcept { return previous_; }
  const std::string& last_value() const noexcept { return last_; }

 private:
  std::string previous_;
  std::string last_;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input; `position` is the 0-based offset of the offending character.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::size_t position = 0)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace airytau
