// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rfluid/error.hpp"
#include "rfluid/quadrature.hpp"
#include "rfluid/temporal.hpp"
#include "support.hpp"

using namespace rfluid;
using std::numbers::pi;

namespace {

/// Samples chi(t) = sum_k A(:, k) phi_k(t) at M + 1 uniform times.
Trajectory cosine_trajectory(const Eigen::MatrixXd& A, double ell, int M) {
  const TemporalBasis tb(ell, static_cast<int>(A.cols()) - 1);
  Trajectory chi;
  chi.ell = ell;
  chi.states = Eigen::MatrixXd::Zero(A.rows(), M + 1);
  for (int m = 0; m <= M; ++m) {
    const double t = ell * m / M;
    for (int k = 0; k < A.cols(); ++k) chi.states.col(m) += A.col(k) * tb.phi(k, t);
  }
  return chi;
}

} // namespace

TEST_CASE("temporal basis: orthonormality, bounds, frequencies") {
  for (double ell : {0.3, 1.0, 2.5}) {
    const TemporalBasis tb(ell, 8);
    std::vector<double> x, w;
    gauss_legendre_01(40, x, w);
    for (int k = 0; k <= 8; ++k)
      for (int l = 0; l <= 8; ++l) {
        double c = 0.0, s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          const double t = ell * x[i];
          c += ell * w[i] * tb.phi(k, t) * tb.phi(l, t);
          if (k > 0 && l > 0) s += ell * w[i] * tb.psi(k, t) * tb.psi(l, t);
        }
        CHECK(std::abs(c - (k == l ? 1.0 : 0.0)) <= 1e-10);
        if (k > 0 && l > 0) CHECK(std::abs(s - (k == l ? 1.0 : 0.0)) <= 1e-10);
      }
    const double cap = std::sqrt(2.0) / std::sqrt(ell) + 1e-12;
    for (int k = 0; k <= 8; ++k)
      for (int i = 0; i <= 200; ++i) {
        const double t = ell * i / 200.0;
        CHECK(std::abs(tb.phi(k, t)) <= cap);
        CHECK(std::abs(tb.psi(k, t)) <= cap);
      }
    CHECK(tb.mu(0) == 1.0 / (ell * ell));
    for (int k = 1; k <= 8; ++k) CHECK(tb.mu(k) == (k * pi / ell) * (k * pi / ell));
  }
  CHECK_THROWS_AS(TemporalBasis(0.0, 2), ContractError);
}

TEST_CASE("coefficients: closed forms and aliasing guard") {
  const double ell = 0.7;
  const int M = 64;
  SUBCASE("constant trajectory") {
    Trajectory chi;
    chi.ell = ell;
    chi.states = Eigen::MatrixXd::Constant(3, M + 1, 2.0);
    const auto c = coefficients(chi, 6);
    CHECK(c.a(0, 0) == doctest::Approx(2.0 * std::sqrt(ell)).epsilon(1e-13));
    CHECK(c.a.rightCols(6).cwiseAbs().maxCoeff() <= 1e-13);
  }
  SUBCASE("single cosine") {
    Trajectory chi;
    chi.ell = ell;
    chi.states = Eigen::MatrixXd::Zero(2, M + 1);
    for (int m = 0; m <= M; ++m) chi.states(1, m) = std::cos(pi * m / M);
    const auto c = coefficients(chi, 8);
    CHECK(c.a(1, 1) == doctest::Approx(std::sqrt(ell / 2.0)).epsilon(1e-13));
    Eigen::MatrixXd rest = c.a;
    rest(1, 1) = 0.0;
    CHECK(rest.cwiseAbs().maxCoeff() <= 1e-13);
  }
  SUBCASE("guard") {
    Trajectory chi;
    chi.ell = ell;
    chi.states = Eigen::MatrixXd::Zero(2, 9);
    CHECK_NOTHROW(coefficients(chi, 4));
    CHECK_THROWS_AS(coefficients(chi, 5), ContractError);
  }
}

TEST_CASE("coefficients: Parseval and reconstruction") {
  rftest::Gen g(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int N = g.integer(2, 12), K = g.integer(1, 8), M = 2 * K + g.integer(0, 40);
    const double ell = g.uniform(0.1, 3.0);
    Eigen::MatrixXd A(N, K + 1);
    for (int k = 0; k <= K; ++k) A.col(k) = g.normal_vec(N);
    const auto chi = cosine_trajectory(A, ell, M);
    const auto c = coefficients(chi, K);
    CHECK((c.a - A).cwiseAbs().maxCoeff() <= 1e-11 * (1.0 + A.cwiseAbs().maxCoeff()));
    const double l2 = trajectory_l2h_norm(chi, Eigen::MatrixXd::Identity(N, N));
    CHECK(rftest::rel_err(c.a.norm(), l2) <= 1e-6);
    for (int m = 0; m <= M; m += 3)
      CHECK((reconstruct(c, chi.time(m)) - chi.state(m)).norm() <= 1e-10 * (1.0 + chi.state(m).norm()));
  }
}

TEST_CASE("fractional norms") {
  rftest::Gen g(5);
  const double ell = 1.3;
  const int N = 6, K = 5;
  Eigen::VectorXd lam(N);
  for (int j = 0; j < N; ++j) lam(j) = 0.5 + j * j;
  const TemporalBasis tb(ell, K);

  SUBCASE("Parseval and one-term values") {
    TrajectoryCoefficients c;
    c.ell = ell;
    c.a = Eigen::MatrixXd::Zero(N, K + 1);
    c.a(0, 1) = 1.0;
    for (double a : {0.0, 0.5, 1.0})
      for (double b : {-1.5, 0.0, 1.0})
        CHECK(fractional_norm(c, lam, a, b, NormVariant::full) ==
              doctest::Approx(std::pow(lam(0), b / 2) * std::pow(tb.mu(1), a / 2)).epsilon(1e-14));
    c.a = Eigen::MatrixXd::Random(N, K + 1);
    CHECK(fractional_norm(c, lam, 0.0, 0.0, NormVariant::full) == doctest::Approx(c.a.norm()).epsilon(1e-14));
    CHECK(fractional_norm(c, lam, 0.0, 0.0, NormVariant::dotted) ==
          doctest::Approx(c.a.rightCols(K).norm()).epsilon(1e-14));
    CHECK_THROWS_AS(fractional_norm(c, lam, 1.0, 0.0, NormVariant::zero_trace), ContractError);
    c.family = TemporalFamily::sine;
    CHECK_NOTHROW(fractional_norm(c, lam, 1.0, 0.0, NormVariant::zero_trace));
  }
  SUBCASE("log-convexity in the exponents") {
    for (int i = 0; i < 100; ++i) {
      TrajectoryCoefficients c;
      c.ell = ell;
      c.a = Eigen::MatrixXd(N, K + 1);
      for (int k = 0; k <= K; ++k) c.a.col(k) = g.normal_vec(N);
      const double a1 = g.uniform(-1, 2), b1 = g.uniform(-2, 2), a2 = g.uniform(-1, 2), b2 = g.uniform(-2, 2);
      const double mid = fractional_norm(c, lam, (a1 + a2) / 2, (b1 + b2) / 2, NormVariant::full);
      const double gm = std::sqrt(fractional_norm(c, lam, a1, b1, NormVariant::full) *
                                  fractional_norm(c, lam, a2, b2, NormVariant::full));
      CHECK(mid <= gm * (1.0 + 1e-12));
    }
  }
  SUBCASE("V-form Parseval on a basis trajectory") {
    const auto& basis = *rftest::disk_basis(8);
    Eigen::MatrixXd A(8, 4);
    for (int k = 0; k < 4; ++k) A.col(k) = g.normal_vec(8);
    const auto chi = cosine_trajectory(A, ell, 24);
    const auto c = coefficients(chi, 3);
    // trapezoid in time of the quadrature V-form of the reconstructed field
    const Eigen::MatrixXd V = basis.v_gram();
    double s = 0.0;
    for (int m = 0; m <= 24; ++m) {
      const double w = (m == 0 || m == 24) ? 0.5 : 1.0;
      s += w * (ell / 24) * chi.state(m).dot(V * chi.state(m));
    }
    const double lhs = std::pow(fractional_norm(c, basis.eigenvalues(), 0.0, 1.0, NormVariant::full), 2);
    CHECK(rftest::rel_err(lhs, s) <= 1e-6);
  }
}

TEST_CASE("embedding exponent b") {
  CHECK(embedding_exponent_b(2.0) == 1.0);
  CHECK(embedding_exponent_b(3.0) == 1.5);
  double prev = 1.0;
  for (double r = 2.1; r < 1e4; r *= 1.5) {
    const double b = embedding_exponent_b(r);
    CHECK(b > prev);
    CHECK(b < 2.5);
    prev = b;
  }
  CHECK(embedding_exponent_b(1e12) == doctest::Approx(2.5).epsilon(1e-10));
  CHECK_THROWS_AS(embedding_exponent_b(1.9), ContractError);
}

TEST_CASE("dual norm over the span") {
  const auto& basis = *rftest::disk_basis(8);
  FluidParams p;
  p.r = 2.5;
  rftest::Gen g(9);
  const Eigen::VectorXd gvec = g.normal_vec(8);
  const double dn = dual_norm_Vr(basis, p, gvec);
  CHECK(dn > 0.0);
  CHECK(dual_norm_Vr(basis, p, 2.0 * gvec) == doctest::Approx(2.0 * dn).epsilon(1e-6));
  CHECK(dual_norm_Vr(basis, p, Eigen::VectorXd::Zero(8)) == 0.0);
  for (int i = 0; i < 200; ++i) {
    const Eigen::VectorXd c = g.normal_vec(8);
    CHECK(gvec.dot(c) / norm_Vr(basis.combine(c), p) <= dn * (1.0 + 1e-6));
  }
}

TEST_CASE("time-derivative embedding") {
  const auto& basis = *rftest::disk_basis(8);
  FluidParams p;
  p.r = 2.0;
  SUBCASE("constant trajectory is vacuous") {
    Trajectory chi;
    chi.ell = 1.0;
    chi.states = Eigen::MatrixXd::Constant(8, 17, 0.3);
    const auto rep = verify_time_derivative_embedding(chi, basis, p);
    CHECK(rep.vacuous);
    CHECK(rep.numerator <= 1e-12);
  }
  SUBCASE("single mode: finite ratio, stable under refinement") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(8, 2);
    A(0, 1) = 1.0;
    const auto coarse = verify_time_derivative_embedding(cosine_trajectory(A, 1.0, 64), basis, p, 4);
    const auto fine = verify_time_derivative_embedding(cosine_trajectory(A, 1.0, 128), basis, p, 4);
    CHECK_FALSE(coarse.vacuous);
    CHECK(std::isfinite(coarse.ratio));
    CHECK(coarse.ratio > 0.0);
    CHECK(coarse.span_relative);
    CHECK(std::abs(fine.ratio - coarse.ratio) / fine.ratio < 0.05);
    MESSAGE("embedding ratio " << coarse.ratio << " -> " << fine.ratio);
  }
}
