// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

namespace rfluid {

/// Physical and constitutive parameters of the r-fluid with dynamic boundary
/// conditions. The conjugate exponent qbar is always derived from q.
struct FluidParams {
  double nu1 = 1.0;   ///< Newtonian viscosity
  double nu2 = 1.0;   ///< power-law viscosity
  double r = 3.0;     ///< gradient growth exponent
  double q = 2.0;     ///< boundary growth exponent
  double alpha = 1.0; ///< boundary friction
  double beta = 1.0;  ///< boundary inertia
  /// Structural constants c1..c7 of the stress and boundary assumptions.
  std::array<double, 7> c{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};

  double qbar() const { return q / (q - 1.0); }

  /// Throws ContractError naming the first offending field.
  void validate() const;
  /// Additional check for the time-stepping paths (r > 12/5).
  void validate_for_solver() const;
};

} // namespace rfluid
