// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

// Shared helpers for the unit tests: seeded generators and cached bases.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <utility>

#include <Eigen/Dense>

#include "rfluid/constitutive.hpp"
#include "rfluid/params.hpp"
#include "rfluid/spectral.hpp"

namespace rftest {

/// Hand-rolled generator of random test inputs.
class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  double normal() { return std::normal_distribution<double>()(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Eigen::VectorXd normal_vec(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = normal();
    return v;
  }

  /// Symmetric tensor uniform in direction with |D| <= radius.
  rfluid::SymTensor sym_tensor(int dim, double radius) {
    rfluid::SymTensor t(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) t.set(i, j, normal());
    const double n = t.norm();
    if (n == 0.0) return t;
    const double len = radius * std::pow(uniform(0.0, 1.0), 1.0 / (dim * (dim + 1) / 2));
    return t * (len / n);
  }

  rfluid::SmallVec vec(int dim, double radius) {
    rfluid::SmallVec v;
    v.dim = dim;
    for (int i = 0; i < dim; ++i) v.x[static_cast<std::size_t>(i)] = normal();
    const double n = v.norm();
    if (n == 0.0) return v;
    return v * (radius * std::pow(uniform(0.0, 1.0), 1.0 / dim) / n);
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

/// Disk basis with default parameters, built once per (N, alpha, beta).
inline std::shared_ptr<const rfluid::SpectralBasis> disk_basis(int N, double alpha = 1.0,
                                                               double beta = 1.0,
                                                               int trial_degree = 0) {
  static std::map<std::tuple<int, double, double, int>, std::shared_ptr<const rfluid::SpectralBasis>> cache;
  auto key = std::make_tuple(N, alpha, beta, trial_degree);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  rfluid::FluidParams p;
  p.alpha = alpha;
  p.beta = beta;
  rfluid::BasisOptions o;
  o.trial_degree = trial_degree;
  auto b = std::make_shared<const rfluid::SpectralBasis>(
      rfluid::build_basis(rfluid::Geometry::disk, N, p, o));
  cache.emplace(key, b);
  return b;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace rftest
