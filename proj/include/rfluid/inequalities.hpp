// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "rfluid/spectral.hpp"

namespace rfluid {

/// sqrt of the largest generalized eigenvalue of num c = mu den c; den must be
/// positive definite.
double korn_constant_from_forms(const Eigen::MatrixXd& num, const Eigen::MatrixXd& den);

struct KornOptions {
  int modes = 0;            ///< leading modes of the basis to use (0 = all)
  int n_samples = 500;      ///< random span elements for q != 2
  std::uint64_t seed = 1;
};

/// Smallest C with ||v||_{W^{1,q}} <= C (||Dv||_q + ||v||_2) over the basis
/// span. For q = 2 the quadratic forms ||v||^2 + ||grad v||^2 and
/// ||Dv||^2 + ||v||^2 are compared exactly (the resulting C also bounds the
/// ratio with the sum of norms); other q use random span elements.
double estimate_korn_constant(const SpectralBasis& basis, double q, const KornOptions& opt = {});

struct SamplingOptions {
  int n_samples = 200;
  std::uint64_t seed = 1;
};

struct RatioReport {
  double constant = 0.0; ///< maximal sampled ratio
  double min_ratio = 0.0;
  int samples = 0;
  bool all_finite = true;
};

/// Empirical C in ||phi||_q <= C ||phi||_p^{1 + d/q - d/p} ||phi||_{W^{1,p}}^{d/p - d/q}.
/// Requires q in [p, pd/(d-p)) when p < d and q >= p otherwise.
RatioReport estimate_gn_constant(const SpectralBasis& basis, double p, double q,
                                 const SamplingOptions& opt = {});

/// Empirical C in ||u||_6 <= C ||u||_2^{1/3} ||u||_{W^{1,3}}^{2/3}.
RatioReport estimate_l6_composite(const SpectralBasis& basis, const SamplingOptions& opt = {});

/// Empirical C in ||u||_{L^{3r/(3-r)}} <= C ||u||_{W^{1,r}}; the target
/// exponent is infinite at r = 3. Requires 1 <= r <= 3.
RatioReport estimate_embedding_constant(const SpectralBasis& basis, double r,
                                        const SamplingOptions& opt = {});

/// Random coefficient vectors with independent standard normal entries.
Eigen::MatrixXd random_coefficients(int n_modes, int count, std::uint64_t seed);

} // namespace rfluid
