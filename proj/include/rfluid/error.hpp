// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace rfluid {

/// Base of every error thrown by the library. The C API maps the concrete
/// subclass onto an rf_status code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated by the caller.
class ContractError : public Error {
public:
  using Error::Error;
};

/// Parameters fall outside the exponent regime an estimate is stated for
/// (for example r <= 12/5).
class RegimeError : public Error {
public:
  using Error::Error;
};

/// A formula is undefined for the given inputs (log of a value <= 1,
/// degenerate kappa, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// An iterative method failed. Carries the last residual norm.
class NumericalError : public Error {
public:
  NumericalError(const std::string& what, double residual = 0.0)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

class IoError : public Error {
public:
  using Error::Error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ContractError(msg);
}

} // namespace rfluid
