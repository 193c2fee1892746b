// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "rfluid/field.hpp"
#include "rfluid/params.hpp"
#include "rfluid/quadrature.hpp"

namespace rfluid {

enum class Geometry { disk, shell3d };

/// Throws ContractError for unknown names.
Geometry parse_geometry(const std::string& name);
std::string to_string(Geometry g);

struct BasisOptions {
  /// Maximal degree of the stream-function trial space; 0 picks the smallest
  /// degree >= N/2 + 2 with at least trial_factor * N trial functions.
  int trial_degree = 0;
  double trial_factor = 4.0;
};

/// Number of stream-function trial functions of degree parameter P
/// (pairs (m, n) with m + 2n <= P, two angular phases for m > 0).
int trial_count(int degree);
int auto_trial_degree(int n_modes, double factor);

/// Lowest eigenpairs of the Stokes operator with dynamic boundary conditions
/// on the unit disk, stored as node samples of the eigenfields.
///
/// Node matrices have one column per mode: values v1, v2 and gradient
/// entries g[2a+b] = d w_a / d x_b at interior nodes, trace values at
/// boundary nodes.
class SpectralBasis {
public:
  struct Data {
    std::shared_ptr<const DiskQuadrature> quad;
    Eigen::VectorXd eigenvalues;
    std::array<Eigen::MatrixXd, 2> values;
    std::array<Eigen::MatrixXd, 4> grads;
    std::array<Eigen::MatrixXd, 2> trace;
    double alpha = 0.0;
    double beta = 0.0;
    int trial_degree = 0;
    Geometry geometry = Geometry::disk;
  };

  explicit SpectralBasis(Data d);

  int dim() const { return 2; }
  int size() const { return static_cast<int>(d_.eigenvalues.size()); }
  double alpha() const { return d_.alpha; }
  double beta() const { return d_.beta; }
  int trial_degree() const { return d_.trial_degree; }
  Geometry geometry() const { return d_.geometry; }
  const Eigen::VectorXd& eigenvalues() const { return d_.eigenvalues; }
  const DiskQuadrature& quadrature() const { return *d_.quad; }
  const std::shared_ptr<const DiskQuadrature>& quadrature_ptr() const { return d_.quad; }
  const Eigen::MatrixXd& values(int a) const { return d_.values[a]; }
  const Eigen::MatrixXd& grads(int c) const { return d_.grads[c]; }
  const Eigen::MatrixXd& trace(int a) const { return d_.trace[a]; }
  const Eigen::VectorXd& interior_weights() const { return wi_; }
  const Eigen::VectorXd& boundary_weights() const { return wb_; }

  /// The j-th eigenfield (0-based), flagged solenoidal and tangential.
  DiscreteField field(int j) const;
  /// sum_j a_j w_j.
  DiscreteField combine(const Eigen::VectorXd& a) const;

  /// (w_i, w_j)_Omega.
  Eigen::MatrixXd interior_gram() const;
  /// (w_i, w_j)_boundary.
  Eigen::MatrixXd boundary_gram() const;
  /// (w_i, w_j)_Omega + beta (w_i, w_j)_boundary.
  Eigen::MatrixXd h_gram() const;
  /// (Dw_i, Dw_j)_Omega + alpha (w_i, w_j)_boundary.
  Eigen::MatrixXd v_gram() const;
  /// (grad w_i, grad w_j)_Omega.
  Eigen::MatrixXd full_grad_gram() const;
  /// (Dw_i, Dw_j)_Omega.
  Eigen::MatrixXd sym_grad_gram() const;

  /// The first n modes (a nested sub-basis).
  SpectralBasis truncated(int n) const;

private:
  Data d_;
  Eigen::VectorXd wi_, wb_;
};

/// Discretizes the eigenproblem over a stream-function trial space and keeps
/// the N lowest pairs, H-orthonormal. Throws ContractError when N exceeds the
/// trial space or the geometry is unsupported, NumericalError when the
/// H-form is not positive definite.
SpectralBasis build_basis(Geometry geometry, int n_modes, const FluidParams& p,
                          const BasisOptions& options = {});

/// (|Df|^2 + alpha |f|^2_boundary) / (|f|^2 + beta |f|^2_boundary).
double rayleigh_quotient(const DiscreteField& f, const FluidParams& p);

struct AsymptoticsReport {
  double fitted_exponent = 0.0;
  double intercept = 0.0;
  double fit_residual = 0.0; ///< root mean square of log residuals
  int fit_points = 0;
  double upper_exponent = 0.0; ///< 2/d
  double lower_exponent = 0.5; ///< enforced only for d = 3
  bool lower_ok = true;
  bool window_ok = false;
};

/// Least-squares fit of log lambda_j against log j over the upper half of the
/// given eigenvalues (1-based j).
AsymptoticsReport check_eigen_asymptotics(const Eigen::VectorXd& eigenvalues, int d,
                                          double tol_exp = 0.15);
AsymptoticsReport check_eigen_asymptotics(const SpectralBasis& basis, double tol_exp = 0.15);

/// Writes basis.json, eigenvalues.csv, nodes.csv and fields.csv into dir.
void write_basis(const SpectralBasis& basis, const std::filesystem::path& dir);
SpectralBasis read_basis(const std::filesystem::path& dir);

} // namespace rfluid
