// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#include "rfluid/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "rfluid/error.hpp"

namespace rfluid {

// ---------------------------------------------------------------- SymTensor

SymTensor::SymTensor(int dim) : dim_(dim) {
  require(dim == 2 || dim == 3, "SymTensor dimension must be 2 or 3");
}

SymTensor::SymTensor(int dim, std::initializer_list<double> entries) : SymTensor(dim) {
  require(entries.size() == static_cast<std::size_t>(dim * dim),
          "SymTensor expects dim*dim entries");
  auto it = entries.begin();
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) e_[3 * i + j] = *it++;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      require(e_[3 * i + j] == e_[3 * j + i], "SymTensor entries are not symmetric");
}

SymTensor SymTensor::diag(std::initializer_list<double> d) {
  SymTensor t(static_cast<int>(d.size()));
  int i = 0;
  for (double v : d) {
    t.e_[3 * i + i] = v;
    ++i;
  }
  return t;
}

void SymTensor::set(int i, int j, double v) {
  require(i >= 0 && j >= 0 && i < dim_ && j < dim_, "SymTensor index out of range");
  e_[3 * i + j] = v;
  e_[3 * j + i] = v;
}

double SymTensor::norm_sq() const { return ddot(*this); }
double SymTensor::norm() const { return std::sqrt(norm_sq()); }

double SymTensor::ddot(const SymTensor& o) const {
  check_dim(o);
  double s = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) s += e_[3 * i + j] * o.e_[3 * i + j];
  return s;
}

void SymTensor::check_dim(const SymTensor& o) const {
  require(dim_ == o.dim_, "SymTensor dimension mismatch");
}

SymTensor SymTensor::operator+(const SymTensor& o) const {
  check_dim(o);
  SymTensor r(dim_);
  for (int k = 0; k < 9; ++k) r.e_[k] = e_[k] + o.e_[k];
  return r;
}

SymTensor SymTensor::operator-(const SymTensor& o) const {
  check_dim(o);
  SymTensor r(dim_);
  for (int k = 0; k < 9; ++k) r.e_[k] = e_[k] - o.e_[k];
  return r;
}

SymTensor SymTensor::operator*(double s) const {
  SymTensor r(dim_);
  for (int k = 0; k < 9; ++k) r.e_[k] = e_[k] * s;
  return r;
}

bool SymTensor::operator==(const SymTensor& o) const { return dim_ == o.dim_ && e_ == o.e_; }

// ----------------------------------------------------------------- SmallVec

SmallVec SmallVec::of(std::initializer_list<double> v) {
  require(v.size() == 2 || v.size() == 3, "SmallVec dimension must be 2 or 3");
  SmallVec r;
  r.dim = static_cast<int>(v.size());
  std::copy(v.begin(), v.end(), r.x.begin());
  return r;
}

double SmallVec::dot(const SmallVec& o) const {
  require(dim == o.dim, "SmallVec dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += x[i] * o.x[i];
  return s;
}

double SmallVec::norm() const { return std::sqrt(norm_sq()); }

SmallVec SmallVec::operator+(const SmallVec& o) const {
  require(dim == o.dim, "SmallVec dimension mismatch");
  SmallVec r{dim, {}};
  for (int i = 0; i < dim; ++i) r.x[i] = x[i] + o.x[i];
  return r;
}

SmallVec SmallVec::operator-(const SmallVec& o) const {
  require(dim == o.dim, "SmallVec dimension mismatch");
  SmallVec r{dim, {}};
  for (int i = 0; i < dim; ++i) r.x[i] = x[i] - o.x[i];
  return r;
}

SmallVec SmallVec::operator*(double s) const {
  SmallVec r{dim, {}};
  for (int i = 0; i < dim; ++i) r.x[i] = x[i] * s;
  return r;
}

// ----------------------------------------------------------------- PowerLaw

PowerLaw::PowerLaw(double linear, double power_coeff, double exponent)
    : a_(linear), b_(power_coeff), p_(exponent) {
  require(exponent >= 2.0, "power-law exponent must be >= 2");
}

double PowerLaw::potential(double x) const {
  if (x <= 0.0) return 0.0;
  return 0.5 * a_ * x + (b_ / p_) * std::pow(x, 0.5 * p_);
}

double PowerLaw::coefficient(double x) const {
  if (x <= 0.0 || b_ == 0.0) return a_ + (p_ == 2.0 ? b_ : 0.0);
  return a_ + b_ * std::pow(x, 0.5 * (p_ - 2.0));
}

double PowerLaw::coefficient_derivative(double x) const {
  if (b_ == 0.0 || p_ == 2.0) return 0.0;
  if (x <= 0.0) return p_ >= 4.0 ? (p_ == 4.0 ? b_ : 0.0) : std::numeric_limits<double>::infinity();
  return b_ * 0.5 * (p_ - 2.0) * std::pow(x, 0.5 * (p_ - 4.0));
}

PowerLaw ladyzhenskaya_law(const FluidParams& p) { return PowerLaw(p.nu1, p.nu2, p.r); }
PowerLaw default_boundary_law(const FluidParams& p) { return PowerLaw(1.0, 1.0, p.q); }

SymTensor stress(const SymTensor& D, const IsotropicLaw& law) {
  return D * law.coefficient(D.norm_sq());
}

SymTensor stress(const SymTensor& D, const FluidParams& p) {
  return stress(D, ladyzhenskaya_law(p));
}

double stress_potential(const SymTensor& D, const FluidParams& p) {
  return ladyzhenskaya_law(p).potential(D.norm_sq());
}

SmallVec boundary_response(const SmallVec& v, const FluidParams& p) {
  return v * default_boundary_law(p).coefficient(v.norm_sq());
}

double boundary_potential(const SmallVec& v, const FluidParams& p) {
  return default_boundary_law(p).potential(v.norm_sq());
}

double gap_I2(const SymTensor& D1, const SymTensor& D2, const FluidParams& p) {
  const double s = D1.norm() + D2.norm();
  const double power = (p.nu2 == 0.0 || s == 0.0) ? 0.0 : p.nu2 * std::pow(s, p.r - 2.0);
  return (p.nu1 + power) * (D1 - D2).norm_sq();
}

// ------------------------------------------------------- structural sampler

namespace {

SymTensor random_tensor_in_ball(std::mt19937_64& rng, int dim, double radius) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SymTensor t(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      t.set(i, j, i == j ? gauss(rng) : gauss(rng) / std::sqrt(2.0));
  const double n = t.norm();
  const int free_dims = dim * (dim + 1) / 2;
  const double scale = radius * std::pow(unif(rng), 1.0 / free_dims) / (n > 0.0 ? n : 1.0);
  return t * scale;
}

SmallVec random_vec_in_ball(std::mt19937_64& rng, int dim, double radius) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SmallVec v{dim, {}};
  for (int i = 0; i < dim; ++i) v.x[i] = gauss(rng);
  const double n = v.norm();
  return v * (radius * std::pow(unif(rng), 1.0 / dim) / (n > 0.0 ? n : 1.0));
}

} // namespace

StructuralReport evaluate_structural_samples(const FluidParams& p,
                                             std::span<const TensorPair> tensors,
                                             std::span<const VecPair> vectors) {
  p.validate();
  const PowerLaw law = ladyzhenskaya_law(p);
  const PowerLaw blaw = default_boundary_law(p);
  const double c3 = std::min(0.5, 1.0 / p.r);
  const double c4 = std::max(0.5, 1.0 / p.r);
  const double inf = std::numeric_limits<double>::infinity();

  StructuralReport rep;
  double c1 = 0.0, c2 = inf, c5 = 0.0, c6 = inf, c7 = inf;
  bool monotone = true, finite = true;
  std::size_t used_t = 0, used_v = 0;

  for (const auto& [D1, D2] : tensors) {
    // growth bounds of the potential, per sample
    for (const SymTensor* D : {&D1, &D2}) {
      const double x = D->norm_sq();
      const double growth = (p.nu1 + (x > 0.0 ? p.nu2 * std::pow(x, 0.5 * (p.r - 2.0)) : 0.0)) * x;
      const double phi = law.potential(x);
      const double slack = 1e-12 * std::max(1.0, growth);
      if (phi < c3 * growth - slack || phi > c4 * growth + slack) rep.potential_bounds_hold = false;
    }
    if (D1 == D2) {
      ++rep.skipped_samples;
      continue;
    }
    const SymTensor dD = D1 - D2;
    const SymTensor dS = stress(D1, law) - stress(D2, law);
    const double sum = D1.norm() + D2.norm();
    const double weight = p.nu1 + (sum > 0.0 ? p.nu2 * std::pow(sum, p.r - 2.0) : 0.0);
    const double lip = dS.norm() / (weight * dD.norm());
    const double mono_num = dS.ddot(dD);
    const double mono = mono_num / (weight * dD.norm_sq());
    if (mono_num < 0.0) monotone = false;
    if (!std::isfinite(lip) || !std::isfinite(mono)) finite = false;
    c1 = std::max(c1, lip);
    c2 = std::min(c2, mono);
    ++used_t;
  }

  for (const auto& [v1, v2] : vectors) {
    for (const SmallVec* v : {&v1, &v2}) {
      const double x = v->norm_sq();
      if (x == 0.0) continue;
      const SmallVec s = (*v) * blaw.coefficient(x);
      const double denom = std::pow(s.norm(), p.qbar()) + std::pow(std::sqrt(x), p.q);
      const double ratio = s.dot(*v) / denom;
      if (!std::isfinite(ratio)) finite = false;
      c7 = std::min(c7, ratio);
    }
    if (v1.dim == v2.dim && v1.x == v2.x) {
      ++rep.skipped_samples;
      continue;
    }
    const SmallVec dv = v1 - v2;
    const SmallVec ds = v1 * blaw.coefficient(v1.norm_sq()) - v2 * blaw.coefficient(v2.norm_sq());
    const double blip = ds.norm() / dv.norm();
    const double bmono_num = ds.dot(dv);
    const double bmono = bmono_num / dv.norm_sq();
    if (bmono_num < 0.0) monotone = false;
    if (!std::isfinite(blip) || !std::isfinite(bmono)) finite = false;
    c5 = std::max(c5, blip);
    c6 = std::min(c6, bmono);
    ++used_v;
  }

  rep.used_samples = used_t + used_v;
  rep.insufficient_data = used_t == 0 || used_v == 0;
  if (used_t > 0) {
    rep.c1_hat = c1;
    rep.c2_hat = c2;
  }
  if (used_v > 0) {
    rep.c5_hat = c5;
    rep.c6_hat = c6;
  }
  if (c7 < inf) rep.c7_hat = c7;
  rep.all_hold = !rep.insufficient_data && monotone && finite;
  return rep;
}

StructuralReport verify_structural_assumptions(const FluidParams& p, std::size_t n_samples,
                                               double radius, std::uint64_t seed, int dim) {
  p.validate();
  require(n_samples >= 1, "n_samples must be >= 1");
  require(radius > 0.0, "radius must be > 0");
  require(dim == 2 || dim == 3, "dim must be 2 or 3");

  std::vector<TensorPair> tensors;
  std::vector<VecPair> vectors;
  tensors.reserve(n_samples);
  vectors.reserve(n_samples);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n_samples; ++i) {
    SymTensor D1 = random_tensor_in_ball(rng, dim, radius);
    SymTensor D2 = random_tensor_in_ball(rng, dim, radius);
    SmallVec v1 = random_vec_in_ball(rng, dim, radius);
    SmallVec v2 = random_vec_in_ball(rng, dim, radius);
    tensors.push_back({D1, D2});
    vectors.push_back({v1, v2});
  }
  return evaluate_structural_samples(p, tensors, vectors);
}

} // namespace rfluid
