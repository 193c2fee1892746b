// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#include "rfluid/params.hpp"

#include <cmath>
#include <string>

#include "rfluid/error.hpp"

namespace rfluid {

void FluidParams::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  require(finite(nu1) && nu1 > 0.0, "nu1 must be > 0");
  require(finite(nu2) && nu2 >= 0.0, "nu2 must be >= 0");
  require(finite(r) && r > 2.0, "r must be > 2");
  require(finite(q) && q >= 2.0, "q must be >= 2");
  require(finite(alpha) && alpha >= 0.0, "alpha must be >= 0");
  require(finite(beta) && beta >= 0.0, "beta must be >= 0");
  for (std::size_t i = 0; i < c.size(); ++i)
    require(finite(c[i]) && c[i] > 0.0, "c" + std::to_string(i + 1) + " must be > 0");
}

void FluidParams::validate_for_solver() const {
  validate();
  if (!(r > 12.0 / 5.0)) throw RegimeError("solver paths require r > 12/5");
}

} // namespace rfluid
