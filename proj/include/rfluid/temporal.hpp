// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rfluid/params.hpp"
#include "rfluid/spectral.hpp"

namespace rfluid {

/// Per-step diagnostics of the time integrator.
struct StepRecord {
  double t = 0.0;  ///< time at the end of the step
  double dt = 0.0; ///< accepted step size (after any halving)
  int newton_iterations = 0;
  int fixed_point_iterations = 0;
  int halvings = 0;
  double residual = 0.0;
};

/// Uniformly sampled solution segment: column m of states holds the basis
/// coefficients at t0 + m * ell / M.
struct Trajectory {
  double t0 = 0.0;
  double ell = 0.0;
  Eigen::MatrixXd states; ///< N x (M + 1)
  std::vector<StepRecord> steps;

  int modes() const { return static_cast<int>(states.rows()); }
  int intervals() const { return static_cast<int>(states.cols()) - 1; }
  double time(int m) const { return t0 + ell * m / intervals(); }
  Eigen::VectorXd state(int m) const { return states.col(m); }
};

/// Cosine basis phi_k and sine basis psi_k of L^2(0, ell) with the
/// frequencies mu_0 = ell^-2, mu_k = (k pi / ell)^2.
class TemporalBasis {
public:
  TemporalBasis(double ell, int K);

  double ell() const { return ell_; }
  int K() const { return K_; }
  double phi(int k, double t) const;
  double psi(int k, double t) const;
  double mu(int k) const;

private:
  double ell_;
  int K_;
};

enum class TemporalFamily { cosine, sine };

/// a(j, k) = int_0^ell chi_j(t) phi_k(t) dt (or psi_k for the sine family),
/// j = 0..N-1, k = 0..K.
struct TrajectoryCoefficients {
  double ell = 0.0;
  TemporalFamily family = TemporalFamily::cosine;
  Eigen::MatrixXd a;

  int modes() const { return static_cast<int>(a.rows()); }
  int K() const { return static_cast<int>(a.cols()) - 1; }
};

/// Coefficients by the composite trapezoid rule over the samples. Requires
/// K <= M / 2; for trajectories whose coefficient paths are cosine
/// polynomials of degree <= K the result is exact up to rounding.
TrajectoryCoefficients coefficients(const Trajectory& chi, int K,
                                    TemporalFamily family = TemporalFamily::cosine);

/// Reconstructs the coefficient path at time t from the expansion.
Eigen::VectorXd reconstruct(const TrajectoryCoefficients& c, double t);

enum class NormVariant { full, dotted, zero_trace };

/// sqrt(sum a_jk^2 lambda_j^b_exp mu_k^a_exp); dotted drops k = 0; zero_trace
/// expects sine-family coefficients (where k = 0 carries no mode).
double fractional_norm(const TrajectoryCoefficients& c, const Eigen::VectorXd& lambda,
                       double a_exp, double b_exp, NormVariant variant);

/// (5r - 6) / (2r); ContractError for r < 2.
double embedding_exponent_b(double r);

/// Trapezoid approximation of the L^2(0, ell; H) norm from the sampled
/// states, given the H-Gram matrix of the basis.
double trajectory_l2h_norm(const Trajectory& chi, const Eigen::MatrixXd& h_gram);

/// Dual norm sup_{c != 0} g.c / ||sum c_j w_j||_{V_r} over the basis span.
double dual_norm_Vr(const SpectralBasis& basis, const FluidParams& p, const Eigen::VectorXd& g);

struct EmbeddingReport {
  double numerator = 0.0;   ///< dotted H^1(0, ell; H^{-b}) seminorm
  double denominator = 0.0; ///< L^2(0, ell; V_r') norm of the time derivative
  double ratio = 0.0;
  double b = 0.0;
  int K = 0;
  bool vacuous = false;      ///< zero time derivative
  bool span_relative = true; ///< duality taken over the basis span only
};

/// Compares the dotted seminorm with exponents (1, -b) of the trajectory to
/// the span-relative V_r' norm of its difference quotients.
EmbeddingReport verify_time_derivative_embedding(const Trajectory& chi, const SpectralBasis& basis,
                                                 const FluidParams& p, int K = -1);

} // namespace rfluid
