// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#include "rfluid/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rfluid/error.hpp"

namespace rfluid {

double QuadratureRule::measure() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  require(n >= 1, "Gauss-Legendre rule needs at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  // Newton iteration on P_n from the usual cosine initial guess.
  auto legendre = [n](double x, double& deriv) {
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * x * p2 - (j - 1.0) * p3) / j;
    }
    deriv = n * (x * p1 - p2) / (x * x - 1.0);
    return p1;
  };
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double dx = legendre(x, dp) / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1,1] -> [0,1]
    nodes[i] = 0.5 * (1.0 - x);
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    weights[i] = 0.5 * w;
    weights[n - 1 - i] = 0.5 * w;
  }
}

DiskQuadrature DiskQuadrature::with_sizes(int n_radial, int n_angular) {
  require(n_radial >= 1 && n_angular >= 3, "disk quadrature sizes too small");
  DiskQuadrature q;
  q.n_radial = n_radial;
  q.n_angular = n_angular;
  std::vector<double> rn, rw;
  gauss_legendre_01(n_radial, rn, rw);
  const double dtheta = 2.0 * std::numbers::pi / n_angular;
  q.interior.nodes.reserve(static_cast<std::size_t>(n_radial) * n_angular);
  for (int i = 0; i < n_radial; ++i) {
    for (int k = 0; k < n_angular; ++k) {
      const double th = k * dtheta;
      q.interior.nodes.push_back({rn[i] * std::cos(th), rn[i] * std::sin(th)});
      q.interior.weights.push_back(rw[i] * rn[i] * dtheta);
    }
  }
  for (int k = 0; k < n_angular; ++k) {
    const double th = k * dtheta;
    q.boundary.nodes.push_back({std::cos(th), std::sin(th)});
    q.boundary.weights.push_back(dtheta);
  }
  // radial integrand rho^{deg+1}: exact while deg + 1 <= 2 n_radial - 1
  q.interior.exact_degree = std::min(2 * n_radial - 2, n_angular - 1);
  q.boundary.exact_degree = n_angular - 1;
  return q;
}

DiskQuadrature DiskQuadrature::exact_for(int degree) {
  require(degree >= 0, "quadrature degree must be >= 0");
  const int n_radial = (degree + 2 + 1) / 2;
  const int n_angular = std::max(degree + 1, 3);
  return with_sizes(n_radial, n_angular);
}

} // namespace rfluid
