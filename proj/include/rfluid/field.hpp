// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "rfluid/params.hpp"
#include "rfluid/quadrature.hpp"

namespace rfluid {

/// Value and gradient of a planar velocity field at one point.
/// grad is row-major: grad[2*a + b] = d v_a / d x_b.
struct FieldPoint {
  std::array<double, 2> v{};
  std::array<double, 4> grad{};
};

/// A velocity field sampled at the interior quadrature nodes (values and
/// gradients) and at the boundary nodes (trace values).
class DiscreteField {
public:
  explicit DiscreteField(std::shared_ptr<const DiskQuadrature> quad, bool with_trace = true);

  /// Samples an analytic field. The trace is the function evaluated on the
  /// boundary nodes.
  static DiscreteField from_function(std::shared_ptr<const DiskQuadrature> quad,
                                     const std::function<FieldPoint(double, double)>& f,
                                     bool with_trace = true);

  const DiskQuadrature& quadrature() const { return *quad_; }
  const std::shared_ptr<const DiskQuadrature>& quadrature_ptr() const { return quad_; }
  int dim() const { return 2; }
  std::size_t n_interior() const { return quad_->interior.size(); }
  std::size_t n_boundary() const { return quad_->boundary.size(); }
  bool has_trace() const { return has_trace_; }

  std::array<double, 2> value(std::size_t i) const { return {values_[2 * i], values_[2 * i + 1]}; }
  std::array<double, 4> gradient(std::size_t i) const {
    return {grads_[4 * i], grads_[4 * i + 1], grads_[4 * i + 2], grads_[4 * i + 3]};
  }
  std::array<double, 2> trace(std::size_t i) const { return {trace_[2 * i], trace_[2 * i + 1]}; }

  void set_point(std::size_t i, const FieldPoint& p);
  void set_trace(std::size_t i, std::array<double, 2> g);

  std::vector<double>& raw_values() { return values_; }
  std::vector<double>& raw_gradients() { return grads_; }
  std::vector<double>& raw_trace() { return trace_; }
  const std::vector<double>& raw_values() const { return values_; }
  const std::vector<double>& raw_gradients() const { return grads_; }
  const std::vector<double>& raw_trace() const { return trace_; }

  /// Flags describing constraints the field is meant to satisfy; checked by
  /// constraint_violations().
  bool solenoidal = false;
  bool tangential = false;

  /// max |div v| over interior nodes and max |v.n| over boundary nodes.
  std::array<double, 2> constraint_violations() const;
  /// True when every flagged constraint holds within its tolerance.
  bool satisfies_constraints(double div_tol = 1e-10, double trace_tol = 1e-10) const;

  DiscreteField& operator+=(const DiscreteField& o);
  DiscreteField& operator*=(double s);
  friend DiscreteField operator+(DiscreteField a, const DiscreteField& b) { return a += b; }
  friend DiscreteField operator*(double s, DiscreteField a) { return a *= s; }

private:
  std::shared_ptr<const DiskQuadrature> quad_;
  bool has_trace_;
  std::vector<double> values_;
  std::vector<double> grads_;
  std::vector<double> trace_;
};

double norm_L2(const DiscreteField& f);
double norm_Lp(const DiscreteField& f, double p);
/// L^p norm of the Frobenius norm of the full gradient.
double grad_norm_Lp(const DiscreteField& f, double p);
/// L^p norm of |Dv|, Dv the symmetric gradient.
double sym_grad_norm_Lp(const DiscreteField& f, double p);
/// (||v||_p^p + ||grad v||_p^p)^{1/p}.
double norm_W1p(const DiscreteField& f, double p);
double trace_norm_L2(const DiscreteField& f);

/// sqrt(||v||^2_{L2(Omega)} + beta ||g||^2_{L2(boundary)}).
double norm_H(const DiscreteField& f, double beta);
/// ||v||_{W^{1,r}} + ||v||_{L2} + ||g||_{L2(boundary)}.
double norm_Vr(const DiscreteField& f, const FluidParams& p);

/// (u, v)_Omega + beta (u, v)_boundary.
double inner_H(const DiscreteField& u, const DiscreteField& v, double beta);

struct InterpolationCheck {
  double r = 0.0;     ///< interpolated exponent
  double lhs = 0.0;   ///< ||u||_r
  double rhs = 0.0;   ///< ||u||_p^theta ||u||_q^{1-theta}
  double ratio = 0.0; ///< lhs / rhs (0 for the zero field)
};

/// Checks ||u||_r <= ||u||_p^theta ||u||_q^{1-theta} with
/// 1/r = theta/p + (1-theta)/q.
InterpolationCheck verify_lp_interpolation(const DiscreteField& f, double p, double q,
                                           double theta);
/// Same check with the target exponent given explicitly; throws
/// ContractError when 1/r != theta/p + (1-theta)/q.
InterpolationCheck verify_lp_interpolation(const DiscreteField& f, double p, double q,
                                           double theta, double r);

} // namespace rfluid
