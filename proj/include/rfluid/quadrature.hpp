// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

namespace rfluid {

struct QuadratureRule {
  std::vector<std::array<double, 2>> nodes;
  std::vector<double> weights;
  /// Polynomial degree (in x, y) integrated exactly.
  int exact_degree = 0;

  std::size_t size() const { return weights.size(); }
  double measure() const;
};

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Quadrature on the closed unit disk: Gauss-Legendre in radius (with the
/// polar Jacobian folded into the weights) times the trapezoid rule in angle,
/// plus the trapezoid rule on the unit circle.
struct DiskQuadrature {
  QuadratureRule interior;
  QuadratureRule boundary;
  int n_radial = 0;
  int n_angular = 0;

  /// Smallest rule exact for polynomials of total degree <= degree on the
  /// disk and for trigonometric polynomials of degree <= degree on the circle.
  static DiskQuadrature exact_for(int degree);
  static DiskQuadrature with_sizes(int n_radial, int n_angular);
};

} // namespace rfluid
