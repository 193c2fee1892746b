// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rfluid/constitutive.hpp"
#include "rfluid/field.hpp"
#include "rfluid/spectral.hpp"
#include "rfluid/temporal.hpp"

namespace rfluid {

struct FlowState {
  Eigen::VectorXd a;
  double t = 0.0;
};

struct SolverOptions {
  double newton_tol = 1e-12;     ///< relative to the scale of the step equation
  int max_newton = 40;
  int max_fixed_point = 2000;
  double fixed_point_damping = 0.5;
  double dt_min = 1e-8;
  double eps_jacobian = 1e-10;   ///< added to |D| and |v| in the Jacobian only
  bool convection = true;
  double energy_tol = 1e-6;
};

struct Energetics {
  double norm_H_sq = 0.0;
  double dissipation = 0.0;          ///< int S(Dv):Dv
  double boundary_dissipation = 0.0; ///< alpha int s(v).v
  double work = 0.0;                 ///< (f, v)
  double phi_integral = 0.0;         ///< int Phi(Dv)
  double s_integral = 0.0;           ///< boundary int of the boundary potential
  double U() const { return 1.0 + phi_integral + s_integral; }
};

struct StepOutcome {
  FlowState state;
  int newton_iterations = 0;
  int fixed_point_iterations = 0;
  double residual = 0.0;
  bool used_fixed_point = false;
};

/// Galerkin discretization of the weak formulation over a spectral basis with
/// a time-independent forcing field.
class GalerkinSystem {
public:
  GalerkinSystem(std::shared_ptr<const SpectralBasis> basis, const FluidParams& p,
                 const DiscreteField& forcing, SolverOptions opt = {});

  const SpectralBasis& basis() const { return *basis_; }
  const std::shared_ptr<const SpectralBasis>& basis_ptr() const { return basis_; }
  const FluidParams& params() const { return p_; }
  const SolverOptions& options() const { return opt_; }
  int size() const { return basis_->size(); }
  /// (f, w_i)_Omega.
  const Eigen::VectorXd& load() const { return load_; }
  double forcing_l2() const { return forcing_l2_; }
  /// H-Gram matrix of the basis.
  const Eigen::MatrixXd& mass() const { return mass_; }

  /// M da + (S(Dv), Dw_i) + b(v, v, w_i) + alpha (s(v), w_i)_boundary - (f, w_i).
  Eigen::VectorXd weak_residual(const Eigen::VectorXd& a, const Eigen::VectorXd& da) const;
  /// The state-dependent part N(a) of the residual (no mass term, no load).
  Eigen::VectorXd operator_part(const Eigen::VectorXd& a) const;
  /// dN/da with the exact derivative of the monotone terms.
  Eigen::MatrixXd operator_jacobian(const Eigen::VectorXd& a) const;
  /// b(v, v, w_i) = ((v.grad) v, w_i).
  Eigen::VectorXd convective(const Eigen::VectorXd& a) const;
  /// b(u, v, w) = ((u.grad) v, w) for coefficient vectors.
  double trilinear(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Eigen::VectorXd& w) const;
  Energetics energetics(const Eigen::VectorXd& a) const;
  /// int I^2(Du, Dv) over Omega.
  double gap_integral(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  /// ||v||_{L^p(Omega)} and ||v||_{W^{1,p}} of the field with coefficients a.
  double lp_norm(const Eigen::VectorXd& a, double p) const;
  double w1p_norm(const Eigen::VectorXd& a, double p) const;

  /// One implicit Euler step of size dt. Newton first, damped fixed point on
  /// Newton failure; throws NumericalError if both fail.
  StepOutcome step(const FlowState& s, double dt) const;

private:
  struct NodeState;
  NodeState evaluate(const Eigen::VectorXd& a) const;
  Eigen::VectorXd solve_fixed_point(const Eigen::VectorXd& a0, Eigen::VectorXd a, double dt,
                                    double tol, int& iters, double& res) const;

  std::shared_ptr<const SpectralBasis> basis_;
  FluidParams p_;
  SolverOptions opt_;
  PowerLaw law_, blaw_;
  Eigen::VectorXd load_;
  double forcing_l2_ = 0.0;
  Eigen::MatrixXd mass_, off_, linear_;
};

/// Forcing field sum_j c_j w_j.
DiscreteField forcing_from_modes(const SpectralBasis& basis, const Eigen::VectorXd& c);

struct LedgerEntry {
  double t = 0.0;
  double dt = 0.0;
  double norm_H_sq = 0.0;
  double dissipation = 0.0;          ///< step average of int S(Dv):Dv
  double boundary_dissipation = 0.0; ///< step average of alpha int s(v).v
  double work = 0.0;                 ///< step average of (f, v)
  double numerical_dissipation = 0.0; ///< 1/2 ||v_{m+1} - v_m||_H^2 of implicit Euler
  double energy_residual = 0.0;
  double U = 1.0;
  double phi_integral = 0.0;
  double s_integral = 0.0;
};

/// Entry 0 describes the initial state (zero step quantities).
struct EnergyLedger {
  std::vector<LedgerEntry> entries;
  double max_energy_violation = 0.0; ///< max |residual| / (dt (1 + ||v||_H^2))
  bool balance_ok = true;
};

struct Simulation {
  Trajectory trajectory;
  EnergyLedger ledger;
};

/// Integrates from v0 over [v0.t, v0.t + T] with M = round(T / dt) steps.
/// Failed steps are retried as two half steps down to the dt floor.
Simulation simulate(const GalerkinSystem& sys, const FlowState& v0, double T, double dt);

struct PairDivergenceReport {
  double c7_hat = 0.0;        ///< fitted multiplier of the rate function
  double max_growth = 0.0;    ///< max_t ||w(t)||^2 / ||w(0)||^2
  double rate_integral = 0.0; ///< int c7_hat g dt over the run
  double gap_integral = 0.0;  ///< int int I^2(Du, Dv)
  double headroom = 1.1;
  bool gronwall_ok = true;    ///< ||w||^2 <= exp(headroom int c7_hat g) ||w0||^2
  std::vector<double> times, w_sq, rate, bound;
};

/// Co-integrates two solutions and checks the discrete Gronwall inequality
/// with rate g = nu1^{-3/(2r-3)} ||v||_{W^{1,r}}^{3/(2r-3)} + 1.
PairDivergenceReport pair_divergence(const GalerkinSystem& sys, const FlowState& u0,
                                     const FlowState& v0, double T, double dt, double headroom = 1.1);

struct RegularityReport {
  std::string branch;           ///< "r<=3" or "r>3"
  double c8_hat = 0.0;          ///< fitted constant of the base inequality
  double branch_c_hat = 0.0;    ///< fitted constant of the branch inequality
  double interp_c_hat = 0.0;    ///< fitted constant of the L^{2r/(r-2)} interpolation
  double mu = 0.0;              ///< exponent of the branch
  double dt_v_sq_integral = 0.0; ///< int ||d_t v||_H^2 dt
  double U_min = 1.0;
  double U_equiv_lower = 0.0;   ///< min of U / (1 + nu1|Dv|^2 + nu2|Dv|_r^r + |S(v)|_L1)
  double U_equiv_upper = 0.0;
  bool U_at_least_one = true;
  bool discrete_surrogate = true; ///< time derivatives are difference quotients
};

/// Fits the constants of the time-regularity inequalities along a simulated
/// trajectory. RegimeError for r <= 12/5.
RegularityReport track_regularity(const GalerkinSystem& sys, const Trajectory& traj,
                                  const EnergyLedger& ledger);

/// CSV with columns t, a_1..a_N, norm_H, U, energy_residual.
void write_trajectory_csv(const Simulation& sim, const std::filesystem::path& path);
/// CSV with one row per ledger entry.
void write_ledger_csv(const EnergyLedger& ledger, const std::filesystem::path& path);

} // namespace rfluid
