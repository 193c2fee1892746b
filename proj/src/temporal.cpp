// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#include "rfluid/temporal.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rfluid/error.hpp"

namespace rfluid {

using std::numbers::pi;

TemporalBasis::TemporalBasis(double ell, int K) : ell_(ell), K_(K) {
  require(ell > 0.0 && std::isfinite(ell), "segment length must be positive");
  require(K >= 0, "mode count must be >= 0");
}

double TemporalBasis::phi(int k, double t) const {
  if (k == 0) return 1.0 / std::sqrt(ell_);
  return std::sqrt(2.0 / ell_) * std::cos(k * pi * t / ell_);
}

double TemporalBasis::psi(int k, double t) const {
  if (k == 0) return 0.0;
  return std::sqrt(2.0 / ell_) * std::sin(k * pi * t / ell_);
}

double TemporalBasis::mu(int k) const {
  if (k == 0) return 1.0 / (ell_ * ell_);
  const double w = k * pi / ell_;
  return w * w;
}

TrajectoryCoefficients coefficients(const Trajectory& chi, int K, TemporalFamily family) {
  const int M = chi.intervals();
  require(M >= 1, "trajectory needs at least two samples");
  require(K >= 0 && 2 * K <= M, "K = " + std::to_string(K) + " violates the aliasing guard K <= M/2 (M = " +
                                     std::to_string(M) + ")");
  const TemporalBasis tb(chi.ell, K);
  const double h = chi.ell / M;
  TrajectoryCoefficients c;
  c.ell = chi.ell;
  c.family = family;
  c.a = Eigen::MatrixXd::Zero(chi.modes(), K + 1);
  for (int m = 0; m <= M; ++m) {
    const double w = (m == 0 || m == M) ? 0.5 * h : h;
    const double t = h * m;
    for (int k = 0; k <= K; ++k) {
      const double f = family == TemporalFamily::cosine ? tb.phi(k, t) : tb.psi(k, t);
      if (f != 0.0) c.a.col(k) += (w * f) * chi.states.col(m);
    }
  }
  return c;
}

Eigen::VectorXd reconstruct(const TrajectoryCoefficients& c, double t) {
  const TemporalBasis tb(c.ell, c.K());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(c.modes());
  for (int k = 0; k <= c.K(); ++k)
    v += (c.family == TemporalFamily::cosine ? tb.phi(k, t) : tb.psi(k, t)) * c.a.col(k);
  return v;
}

double fractional_norm(const TrajectoryCoefficients& c, const Eigen::VectorXd& lambda,
                       double a_exp, double b_exp, NormVariant variant) {
  require(lambda.size() >= c.modes(), "fewer eigenvalues than spatial modes");
  require(variant != NormVariant::zero_trace || c.family == TemporalFamily::sine,
          "zero-trace norm needs sine-family coefficients");
  require(variant == NormVariant::zero_trace || c.family == TemporalFamily::cosine,
          "full and dotted norms need cosine-family coefficients");
  const TemporalBasis tb(c.ell, c.K());
  const int k0 = variant == NormVariant::full ? 0 : 1;
  double s = 0.0;
  for (int k = k0; k <= c.K(); ++k) {
    const double mk = a_exp == 0.0 ? 1.0 : std::pow(tb.mu(k), a_exp);
    for (int j = 0; j < c.modes(); ++j) {
      const double a = c.a(j, k);
      if (a == 0.0) continue;
      const double lj = b_exp == 0.0 ? 1.0 : std::pow(lambda(j), b_exp);
      s += a * a * lj * mk;
    }
  }
  return std::sqrt(s);
}

double embedding_exponent_b(double r) {
  require(r >= 2.0, "embedding exponent needs r >= 2");
  return (5.0 * r - 6.0) / (2.0 * r);
}

double trajectory_l2h_norm(const Trajectory& chi, const Eigen::MatrixXd& h_gram) {
  const int M = chi.intervals();
  require(M >= 1, "trajectory needs at least two samples");
  const double h = chi.ell / M;
  double s = 0.0;
  for (int m = 0; m <= M; ++m) {
    const double w = (m == 0 || m == M) ? 0.5 * h : h;
    const Eigen::VectorXd a = chi.states.col(m);
    s += w * a.dot(h_gram * a);
  }
  return std::sqrt(s);
}

namespace {

/// ||v||_{V_r} of v = sum c_j w_j and its gradient in c.
class VrNorm {
public:
  VrNorm(const SpectralBasis& b, double r)
      : b_(b), r_(r), gi_(b.interior_gram()), gb_(b.boundary_gram()) {}

  double value(const Eigen::VectorXd& c, Eigen::VectorXd* grad) const {
    const auto& wi = b_.interior_weights();
    const Eigen::Index n = wi.size();
    std::array<Eigen::VectorXd, 2> v;
    std::array<Eigen::VectorXd, 4> g;
    for (int a = 0; a < 2; ++a) v[a] = b_.values(a) * c;
    for (int a = 0; a < 4; ++a) g[a] = b_.grads(a) * c;
    Eigen::VectorXd pv(n), pg(n);
    double A = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double nv = std::sqrt(v[0](i) * v[0](i) + v[1](i) * v[1](i));
      const double ng = std::sqrt(g[0](i) * g[0](i) + g[1](i) * g[1](i) + g[2](i) * g[2](i) + g[3](i) * g[3](i));
      A += wi(i) * (std::pow(nv, r_) + std::pow(ng, r_));
      pv(i) = nv > 0.0 ? wi(i) * std::pow(nv, r_ - 2.0) : 0.0;
      pg(i) = ng > 0.0 ? wi(i) * std::pow(ng, r_ - 2.0) : 0.0;
    }
    const double W = std::pow(A, 1.0 / r_);
    const Eigen::VectorXd Gic = gi_ * c, Gbc = gb_ * c;
    const double L = std::sqrt(std::max(0.0, c.dot(Gic)));
    const double T = std::sqrt(std::max(0.0, c.dot(Gbc)));
    if (grad) {
      grad->setZero(c.size());
      if (A > 0.0) {
        Eigen::VectorXd dA = Eigen::VectorXd::Zero(c.size());
        for (int a = 0; a < 2; ++a) dA += b_.values(a).transpose() * pv.cwiseProduct(v[a]);
        for (int a = 0; a < 4; ++a) dA += b_.grads(a).transpose() * pg.cwiseProduct(g[a]);
        *grad += std::pow(A, 1.0 / r_ - 1.0) * dA;
      }
      if (L > 0.0) *grad += Gic / L;
      if (T > 0.0) *grad += Gbc / T;
    }
    return W + L + T;
  }

private:
  const SpectralBasis& b_;
  double r_;
  Eigen::MatrixXd gi_, gb_;
};

} // namespace

double dual_norm_Vr(const SpectralBasis& basis, const FluidParams& p, const Eigen::VectorXd& g) {
  require(g.size() == basis.size(), "functional has the wrong length");
  require(p.r > 1.0, "V_r needs r > 1");
  const double gn = g.norm();
  if (gn == 0.0) return 0.0;
  const int N = basis.size();
  const VrNorm norm(basis, p.r);

  // The dual norm is 1 / min{ n(c) : g.c = 1 }, a convex problem; minimize
  // over c = c0 + Z y with Z an orthonormal basis of the complement of g.
  const Eigen::MatrixXd Hg = basis.h_gram();
  Eigen::VectorXd c0 = Hg.ldlt().solve(g);
  c0 /= g.dot(c0);
  Eigen::MatrixXd Z(N, N - 1);
  if (N > 1) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    const Eigen::MatrixXd Q = qr.householderQ();
    Z = Q.rightCols(N - 1);
  }
  if (N == 1) return 1.0 / norm.value(c0, nullptr);

  Eigen::VectorXd y = Eigen::VectorXd::Zero(N - 1), gc(N);
  double f = norm.value(c0, &gc);
  Eigen::VectorXd gy = Z.transpose() * gc;
  Eigen::MatrixXd Hinv = Eigen::MatrixXd::Identity(N - 1, N - 1);
  for (int it = 0; it < 500 && gy.norm() > 1e-12 * (1.0 + f); ++it) {
    Eigen::VectorXd d = -Hinv * gy;
    if (d.dot(gy) >= 0.0) {
      Hinv.setIdentity();
      d = -gy;
    }
    double step = 1.0, fn = 0.0;
    Eigen::VectorXd yn, gcn(N);
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      yn = y + step * d;
      fn = norm.value(c0 + Z * yn, &gcn);
      if (fn <= f + 1e-4 * step * d.dot(gy)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const Eigen::VectorXd gyn = Z.transpose() * gcn;
    const Eigen::VectorXd s = yn - y, dg = gyn - gy;
    const double sy = s.dot(dg);
    if (sy > 1e-300) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N - 1, N - 1);
      Hinv = (I - rho * s * dg.transpose()) * Hinv * (I - rho * dg * s.transpose()) + rho * s * s.transpose();
    }
    const bool stalled = f - fn <= 1e-16 * f;
    y = yn;
    f = fn;
    gy = gyn;
    if (stalled) break;
  }
  return 1.0 / f;
}

EmbeddingReport verify_time_derivative_embedding(const Trajectory& chi, const SpectralBasis& basis,
                                                 const FluidParams& p, int K) {
  require(chi.modes() == basis.size(), "trajectory and basis sizes differ");
  const int M = chi.intervals();
  require(M >= 2, "trajectory needs at least three samples");
  if (K < 0) K = M / 2;
  EmbeddingReport rep;
  rep.b = embedding_exponent_b(p.r);
  rep.K = K;
  const auto c = coefficients(chi, K);
  rep.numerator = fractional_norm(c, basis.eigenvalues(), 1.0, -rep.b, NormVariant::dotted);

  const Eigen::MatrixXd Hg = basis.h_gram();
  const double h = chi.ell / M;
  double s = 0.0;
  bool moving = false;
  for (int m = 0; m < M; ++m) {
    const Eigen::VectorXd da = (chi.states.col(m + 1) - chi.states.col(m)) / h;
    if (da.cwiseAbs().maxCoeff() == 0.0) continue;
    moving = true;
    const double dn = dual_norm_Vr(basis, p, Hg * da);
    s += h * dn * dn;
  }
  rep.denominator = std::sqrt(s);
  if (!moving || rep.denominator == 0.0) {
    rep.vacuous = true;
    rep.ratio = 0.0;
    return rep;
  }
  rep.ratio = rep.numerator / rep.denominator;
  return rep;
}

} // namespace rfluid
