// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#include "rfluid/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rfluid/error.hpp"
#include "rfluid/field.hpp"

namespace rfluid {

double korn_constant_from_forms(const Eigen::MatrixXd& num, const Eigen::MatrixXd& den) {
  require(num.rows() == den.rows() && num.cols() == den.cols() && num.rows() == num.cols(),
          "forms must be square and of equal size");
  require(num.rows() >= 1, "empty forms");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (num + num.transpose()),
                                                               0.5 * (den + den.transpose()),
                                                               Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success) throw NumericalError("denominator form is not positive definite");
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Eigen::MatrixXd random_coefficients(int n_modes, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXd c(n_modes, count);
  for (int s = 0; s < count; ++s)
    for (int j = 0; j < n_modes; ++j) c(j, s) = nd(rng);
  return c;
}

double estimate_korn_constant(const SpectralBasis& basis, double q, const KornOptions& opt) {
  require(basis.size() >= 2, "Korn estimate needs a basis of size >= 2");
  require(q > 1.0, "Korn estimate needs q > 1");
  const int n = opt.modes > 0 ? std::min(opt.modes, basis.size()) : basis.size();
  const SpectralBasis b = basis.truncated(n);
  if (q == 2.0) {
    const Eigen::MatrixXd l2 = b.interior_gram();
    return korn_constant_from_forms(l2 + b.full_grad_gram(), l2 + b.sym_grad_gram());
  }
  require(opt.n_samples >= 1, "need at least one sample");
  const Eigen::MatrixXd c = random_coefficients(n, opt.n_samples, opt.seed);
  double best = 0.0;
  for (int s = 0; s < opt.n_samples; ++s) {
    const DiscreteField f = b.combine(c.col(s));
    const double den = sym_grad_norm_Lp(f, q) + norm_L2(f);
    if (den > 0.0) best = std::max(best, norm_W1p(f, q) / den);
  }
  return best;
}

namespace {

template <class Ratio>
RatioReport sample_ratio(const SpectralBasis& basis, const SamplingOptions& opt, Ratio ratio) {
  require(opt.n_samples >= 1, "need at least one sample");
  const Eigen::MatrixXd c = random_coefficients(basis.size(), opt.n_samples, opt.seed);
  RatioReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  for (int s = 0; s < opt.n_samples; ++s) {
    const double x = ratio(basis.combine(c.col(s)));
    if (!std::isfinite(x)) {
      rep.all_finite = false;
      continue;
    }
    rep.constant = std::max(rep.constant, x);
    rep.min_ratio = std::min(rep.min_ratio, x);
    ++rep.samples;
  }
  if (rep.samples == 0) rep.min_ratio = 0.0;
  return rep;
}

} // namespace

RatioReport estimate_gn_constant(const SpectralBasis& basis, double p, double q,
                                 const SamplingOptions& opt) {
  const double d = basis.dim();
  require(p >= 1.0 && q >= p, "Gagliardo-Nirenberg needs 1 <= p <= q");
  if (p < d) require(q < p * d / (d - p), "q must stay below the Sobolev exponent pd/(d-p)");
  require(std::isfinite(q), "q must be finite");
  const double e1 = 1.0 + d / q - d / p;
  const double e2 = d / p - d / q;
  return sample_ratio(basis, opt, [&](const DiscreteField& f) {
    const double lhs = norm_Lp(f, q);
    const double rhs = std::pow(norm_Lp(f, p), e1) * std::pow(norm_W1p(f, p), e2);
    return lhs / rhs;
  });
}

RatioReport estimate_l6_composite(const SpectralBasis& basis, const SamplingOptions& opt) {
  return sample_ratio(basis, opt, [&](const DiscreteField& f) {
    return norm_Lp(f, 6.0) / (std::cbrt(norm_L2(f)) * std::pow(norm_W1p(f, 3.0), 2.0 / 3.0));
  });
}

RatioReport estimate_embedding_constant(const SpectralBasis& basis, double r,
                                        const SamplingOptions& opt) {
  require(r >= 1.0 && r <= 3.0, "embedding check needs 1 <= r <= 3");
  const double target = r < 3.0 ? 3.0 * r / (3.0 - r) : std::numeric_limits<double>::infinity();
  return sample_ratio(basis, opt,
                      [&](const DiscreteField& f) { return norm_Lp(f, target) / norm_W1p(f, r); });
}

} // namespace rfluid
