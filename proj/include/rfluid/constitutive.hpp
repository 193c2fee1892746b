// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <utility>

#include "rfluid/params.hpp"

namespace rfluid {

/// Symmetric d x d tensor, d in {2, 3}. Symmetry is checked exactly on
/// construction from entries.
class SymTensor {
public:
  explicit SymTensor(int dim = 2);
  /// Row-major entries, dim*dim of them. Throws ContractError unless
  /// entries[i][j] == entries[j][i] bit for bit.
  SymTensor(int dim, std::initializer_list<double> entries);

  static SymTensor diag(std::initializer_list<double> d);

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return e_[3 * i + j]; }
  /// Sets (i,j) and (j,i) together.
  void set(int i, int j, double v);

  double norm_sq() const;
  double norm() const;
  /// Full contraction A:B.
  double ddot(const SymTensor& other) const;

  SymTensor operator+(const SymTensor& o) const;
  SymTensor operator-(const SymTensor& o) const;
  SymTensor operator*(double s) const;
  bool operator==(const SymTensor& o) const;

private:
  void check_dim(const SymTensor& o) const;
  int dim_;
  std::array<double, 9> e_{};
};

inline SymTensor operator*(double s, const SymTensor& t) { return t * s; }

/// Small spatial vector, dim in {2, 3}.
struct SmallVec {
  int dim = 2;
  std::array<double, 3> x{};

  static SmallVec of(std::initializer_list<double> v);
  double dot(const SmallVec& o) const;
  double norm_sq() const { return dot(*this); }
  double norm() const;
  SmallVec operator+(const SmallVec& o) const;
  SmallVec operator-(const SmallVec& o) const;
  SmallVec operator*(double s) const;
};

/// Isotropic law generated by a potential of the squared norm,
/// F = P(|X|^2), response = 2 P'(|X|^2) X = coefficient(|X|^2) X.
/// Used both for the bulk stress S(D) and the boundary response s(v).
class IsotropicLaw {
public:
  virtual ~IsotropicLaw() = default;
  /// P(x), x = |X|^2.
  virtual double potential(double x) const = 0;
  /// 2 P'(x). Must be finite at x = 0.
  virtual double coefficient(double x) const = 0;
  /// d/dx of coefficient(x), evaluated at x + eps-regularized argument by the
  /// caller when the law is singular at 0.
  virtual double coefficient_derivative(double x) const = 0;
};

/// nu1 X + nu2 |X|^{p-2} X, potential nu1/2 |X|^2 + nu2/p |X|^p.
/// The power term is the zero tensor at X = 0.
class PowerLaw final : public IsotropicLaw {
public:
  PowerLaw(double linear, double power_coeff, double exponent);
  double potential(double x) const override;
  double coefficient(double x) const override;
  double coefficient_derivative(double x) const override;

  double linear() const { return a_; }
  double power_coeff() const { return b_; }
  double exponent() const { return p_; }

private:
  double a_, b_, p_;
};

/// Ladyzhenskaya stress law for the given parameters.
PowerLaw ladyzhenskaya_law(const FluidParams& p);
/// Default boundary law s(v) = v + |v|^{q-2} v.
PowerLaw default_boundary_law(const FluidParams& p);

SymTensor stress(const SymTensor& D, const FluidParams& p);
SymTensor stress(const SymTensor& D, const IsotropicLaw& law);
double stress_potential(const SymTensor& D, const FluidParams& p);

SmallVec boundary_response(const SmallVec& v, const FluidParams& p);
double boundary_potential(const SmallVec& v, const FluidParams& p);

/// (nu1 + nu2 (|D1| + |D2|)^{r-2}) |D1 - D2|^2.
double gap_I2(const SymTensor& D1, const SymTensor& D2, const FluidParams& p);

struct StructuralReport {
  double c1_hat = 0.0; ///< sup of the stress Lipschitz ratio
  double c2_hat = 0.0; ///< inf of the stress monotonicity ratio
  double c5_hat = 0.0; ///< sup of the boundary Lipschitz ratio (on the ball)
  double c6_hat = 0.0; ///< inf of the boundary monotonicity ratio
  double c7_hat = 0.0; ///< inf of s(v).v / (|s|^qbar + |v|^q)
  std::size_t used_samples = 0;
  std::size_t skipped_samples = 0;
  bool potential_bounds_hold = true; ///< c3/c4 growth bounds on every sample
  bool all_hold = false;
  bool insufficient_data = false;
};

using TensorPair = std::pair<SymTensor, SymTensor>;
using VecPair = std::pair<SmallVec, SmallVec>;

/// Evaluates the structural inequalities on explicit sample pairs. Pairs with
/// equal members are skipped; insufficient_data is set when no tensor pair or
/// no vector pair survives.
StructuralReport evaluate_structural_samples(const FluidParams& p,
                                             std::span<const TensorPair> tensors,
                                             std::span<const VecPair> vectors);

/// Samples tensor and vector pairs uniformly in the ball of the given radius
/// and reports the empirical extremal constants of the structural
/// inequalities. Deterministic in seed.
StructuralReport verify_structural_assumptions(const FluidParams& p, std::size_t n_samples,
                                               double radius, std::uint64_t seed,
                                               int dim = 3);

} // namespace rfluid
