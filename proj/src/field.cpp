// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#include "rfluid/field.hpp"

#include <algorithm>
#include <cmath>

#include "rfluid/error.hpp"

namespace rfluid {

DiscreteField::DiscreteField(std::shared_ptr<const DiskQuadrature> quad, bool with_trace)
    : quad_(std::move(quad)), has_trace_(with_trace) {
  require(quad_ != nullptr, "DiscreteField needs a quadrature");
  values_.assign(2 * quad_->interior.size(), 0.0);
  grads_.assign(4 * quad_->interior.size(), 0.0);
  if (has_trace_) trace_.assign(2 * quad_->boundary.size(), 0.0);
}

DiscreteField DiscreteField::from_function(std::shared_ptr<const DiskQuadrature> quad,
                                           const std::function<FieldPoint(double, double)>& f,
                                           bool with_trace) {
  DiscreteField out(std::move(quad), with_trace);
  const auto& q = out.quadrature();
  for (std::size_t i = 0; i < q.interior.size(); ++i)
    out.set_point(i, f(q.interior.nodes[i][0], q.interior.nodes[i][1]));
  if (with_trace)
    for (std::size_t i = 0; i < q.boundary.size(); ++i)
      out.set_trace(i, f(q.boundary.nodes[i][0], q.boundary.nodes[i][1]).v);
  return out;
}

void DiscreteField::set_point(std::size_t i, const FieldPoint& p) {
  values_[2 * i] = p.v[0];
  values_[2 * i + 1] = p.v[1];
  std::copy(p.grad.begin(), p.grad.end(), grads_.begin() + 4 * i);
}

void DiscreteField::set_trace(std::size_t i, std::array<double, 2> g) {
  require(has_trace_, "field carries no boundary trace");
  trace_[2 * i] = g[0];
  trace_[2 * i + 1] = g[1];
}

std::array<double, 2> DiscreteField::constraint_violations() const {
  double div = 0.0;
  for (std::size_t i = 0; i < n_interior(); ++i)
    div = std::max(div, std::abs(grads_[4 * i] + grads_[4 * i + 3]));
  double normal = 0.0;
  if (has_trace_) {
    const auto& nodes = quad_->boundary.nodes;
    for (std::size_t i = 0; i < n_boundary(); ++i)
      normal = std::max(normal, std::abs(trace_[2 * i] * nodes[i][0] + trace_[2 * i + 1] * nodes[i][1]));
  }
  return {div, normal};
}

bool DiscreteField::satisfies_constraints(double div_tol, double trace_tol) const {
  const auto [div, normal] = constraint_violations();
  if (solenoidal && div > div_tol) return false;
  if (tangential && normal > trace_tol) return false;
  return true;
}

DiscreteField& DiscreteField::operator+=(const DiscreteField& o) {
  require(quad_ == o.quad_, "fields live on different quadratures");
  require(has_trace_ == o.has_trace_, "trace presence mismatch");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
  for (std::size_t k = 0; k < grads_.size(); ++k) grads_[k] += o.grads_[k];
  for (std::size_t k = 0; k < trace_.size(); ++k) trace_[k] += o.trace_[k];
  solenoidal = solenoidal && o.solenoidal;
  tangential = tangential && o.tangential;
  return *this;
}

DiscreteField& DiscreteField::operator*=(double s) {
  for (double& v : values_) v *= s;
  for (double& v : grads_) v *= s;
  for (double& v : trace_) v *= s;
  return *this;
}

namespace {

template <class F>
double integrate(const QuadratureRule& rule, F&& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * f(i);
  return s;
}

double lp_from_pointwise(const QuadratureRule& rule, double p, auto&& magnitude) {
  require(p >= 1.0, "L^p exponent must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) m = std::max(m, magnitude(i));
    return m;
  }
  return std::pow(integrate(rule, [&](std::size_t i) { return std::pow(magnitude(i), p); }), 1.0 / p);
}

} // namespace

double norm_L2(const DiscreteField& f) {
  const auto& v = f.raw_values();
  return std::sqrt(integrate(f.quadrature().interior, [&](std::size_t i) {
    return v[2 * i] * v[2 * i] + v[2 * i + 1] * v[2 * i + 1];
  }));
}

double norm_Lp(const DiscreteField& f, double p) {
  const auto& v = f.raw_values();
  return lp_from_pointwise(f.quadrature().interior, p,
                           [&](std::size_t i) { return std::hypot(v[2 * i], v[2 * i + 1]); });
}

double grad_norm_Lp(const DiscreteField& f, double p) {
  const auto& g = f.raw_gradients();
  return lp_from_pointwise(f.quadrature().interior, p, [&](std::size_t i) {
    const double* G = &g[4 * i];
    return std::sqrt(G[0] * G[0] + G[1] * G[1] + G[2] * G[2] + G[3] * G[3]);
  });
}

double sym_grad_norm_Lp(const DiscreteField& f, double p) {
  const auto& g = f.raw_gradients();
  return lp_from_pointwise(f.quadrature().interior, p, [&](std::size_t i) {
    const double* G = &g[4 * i];
    const double off = 0.5 * (G[1] + G[2]);
    return std::sqrt(G[0] * G[0] + G[3] * G[3] + 2.0 * off * off);
  });
}

double norm_W1p(const DiscreteField& f, double p) {
  require(p >= 1.0 && std::isfinite(p), "W^{1,p} exponent must be finite and >= 1");
  return std::pow(std::pow(norm_Lp(f, p), p) + std::pow(grad_norm_Lp(f, p), p), 1.0 / p);
}

double trace_norm_L2(const DiscreteField& f) {
  require(f.has_trace(), "field carries no boundary trace");
  const auto& g = f.raw_trace();
  return std::sqrt(integrate(f.quadrature().boundary, [&](std::size_t i) {
    return g[2 * i] * g[2 * i] + g[2 * i + 1] * g[2 * i + 1];
  }));
}

double norm_H(const DiscreteField& f, double beta) {
  require(beta >= 0.0, "beta must be >= 0");
  const double v = norm_L2(f);
  if (beta == 0.0) return v;
  require(f.has_trace(), "norm_H with beta > 0 needs boundary data");
  const double g = trace_norm_L2(f);
  return std::sqrt(v * v + beta * g * g);
}

double norm_Vr(const DiscreteField& f, const FluidParams& p) {
  if (!(p.r > 1.0)) throw ContractError("norm_Vr needs r > 1");
  require(f.has_trace(), "norm_Vr needs boundary data");
  return norm_W1p(f, p.r) + norm_L2(f) + trace_norm_L2(f);
}

double inner_H(const DiscreteField& u, const DiscreteField& v, double beta) {
  require(u.quadrature_ptr() == v.quadrature_ptr(), "fields live on different quadratures");
  const auto& a = u.raw_values();
  const auto& b = v.raw_values();
  double s = integrate(u.quadrature().interior, [&](std::size_t i) {
    return a[2 * i] * b[2 * i] + a[2 * i + 1] * b[2 * i + 1];
  });
  if (beta > 0.0) {
    require(u.has_trace() && v.has_trace(), "inner_H with beta > 0 needs boundary data");
    const auto& ga = u.raw_trace();
    const auto& gb = v.raw_trace();
    s += beta * integrate(u.quadrature().boundary, [&](std::size_t i) {
      return ga[2 * i] * gb[2 * i] + ga[2 * i + 1] * gb[2 * i + 1];
    });
  }
  return s;
}

InterpolationCheck verify_lp_interpolation(const DiscreteField& f, double p, double q,
                                           double theta) {
  require(p >= 1.0 && q >= 1.0, "Lebesgue exponents must be >= 1");
  require(theta > 0.0 && theta < 1.0, "theta must lie in (0, 1)");
  const double inv_r = theta / p + (1.0 - theta) / q;
  InterpolationCheck c;
  c.r = 1.0 / inv_r;
  c.lhs = norm_Lp(f, c.r);
  c.rhs = std::pow(norm_Lp(f, p), theta) * std::pow(norm_Lp(f, q), 1.0 - theta);
  c.ratio = c.rhs > 0.0 ? c.lhs / c.rhs : 0.0;
  return c;
}

InterpolationCheck verify_lp_interpolation(const DiscreteField& f, double p, double q,
                                           double theta, double r) {
  require(r >= 1.0, "target exponent must be >= 1");
  const double inv_r = theta / p + (1.0 - theta) / q;
  require(std::abs(1.0 / r - inv_r) <= 1e-12 * std::max(1.0, inv_r),
          "exponent relation 1/r = theta/p + (1-theta)/q violated");
  return verify_lp_interpolation(f, p, q, theta);
}

} // namespace rfluid
