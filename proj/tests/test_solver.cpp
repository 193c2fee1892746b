// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "rfluid/error.hpp"
#include "rfluid/solver.hpp"
#include "support.hpp"

using namespace rfluid;

namespace {

GalerkinSystem make_system(int N, const FluidParams& p, const Eigen::VectorXd& fmodes,
                           SolverOptions o = {}) {
  auto basis = rftest::disk_basis(N, p.alpha, p.beta);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(N);
  c.head(std::min<Eigen::Index>(N, fmodes.size())) = fmodes.head(std::min<Eigen::Index>(N, fmodes.size()));
  return GalerkinSystem(basis, p, forcing_from_modes(*basis, c), o);
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

} // namespace

TEST_CASE("residual pieces") {
  FluidParams p;
  const auto sys = make_system(8, p, Eigen::VectorXd::Zero(0));
  rftest::Gen g(3);
  const Eigen::VectorXd z = Eigen::VectorXd::Zero(8);
  CHECK(sys.weak_residual(z, z).cwiseAbs().maxCoeff() == 0.0);
  CHECK(sys.load().cwiseAbs().maxCoeff() == 0.0);

  SUBCASE("Jacobian against central differences") {
    for (int trial = 0; trial < 5; ++trial) {
      const Eigen::VectorXd a = g.normal_vec(8);
      const Eigen::MatrixXd J = sys.operator_jacobian(a);
      const double h = 1e-6;
      Eigen::MatrixXd Jfd(8, 8);
      for (int j = 0; j < 8; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(8);
        e(j) = h;
        Jfd.col(j) = (sys.operator_part(a + e) - sys.operator_part(a - e)) / (2 * h);
      }
      CHECK((J - Jfd).norm() <= 1e-5 * (1.0 + J.norm()));
    }
  }
  SUBCASE("Stokes linearization at rest") {
    const Eigen::MatrixXd J0 = sys.operator_jacobian(z);
    // r > 2 and q = 2: nu1 (D, D) + alpha * 2 (v, v)_boundary
    const auto& b = sys.basis();
    const Eigen::MatrixXd L = p.nu1 * b.sym_grad_gram() + 2.0 * p.alpha * b.boundary_gram();
    CHECK((J0 - L).norm() <= 1e-8 * L.norm());
    const Eigen::VectorXd a = 1e-7 * g.normal_vec(8);
    CHECK((sys.operator_part(a) - L * a).norm() <= 1e-6 * (L * a).norm());
  }
  SUBCASE("convection is skew in the last two slots") {
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::VectorXd u = g.normal_vec(8), v = g.normal_vec(8), w = g.normal_vec(8);
      const double scale = std::abs(sys.trilinear(u, v, w)) + std::abs(sys.trilinear(u, w, v)) + 1.0;
      CHECK(std::abs(sys.trilinear(u, v, w) + sys.trilinear(u, w, v)) <= 1e-8 * scale);
      CHECK(std::abs(sys.trilinear(u, v, v)) <= 1e-8 * scale);
      CHECK(std::abs(sys.convective(u).dot(u)) <= 1e-8 * (1.0 + u.squaredNorm()));
    }
  }
}

TEST_CASE("rest state stays at rest") {
  FluidParams p;
  const auto sys = make_system(8, p, Eigen::VectorXd::Zero(0));
  const auto sim = simulate(sys, {Eigen::VectorXd::Zero(8), 0.0}, 0.5, 0.05);
  CHECK(sim.trajectory.intervals() == 10);
  CHECK(sim.trajectory.states.cwiseAbs().maxCoeff() == 0.0);
  for (const auto& e : sim.ledger.entries) CHECK(e.U == 1.0);
}

TEST_CASE("linear decay matches the closed form") {
  // Basis built with alpha = 2 so that the q = 2 boundary law (coefficient 2
  // at zero) makes the linear operator the eigen-form of the basis.
  FluidParams p;
  p.nu2 = 0.0;
  p.q = 2.0;
  p.alpha = 1.0;
  auto basis = rftest::disk_basis(8, 2.0, 1.0);
  SolverOptions o;
  o.convection = false;
  const GalerkinSystem sys(basis, p, forcing_from_modes(*basis, Eigen::VectorXd::Zero(8)), o);
  rftest::Gen g(11);
  const Eigen::VectorXd a0 = g.normal_vec(8);
  const double dt = 0.01;
  const auto sim = simulate(sys, {a0, 0.0}, 0.2, dt);
  const auto& lam = basis->eigenvalues();
  for (int j = 0; j < 8; ++j) {
    const double expect = a0(j) * std::pow(1.0 / (1.0 + dt * lam(j)), 20);
    CHECK(std::abs(sim.trajectory.states(j, 20) - expect) <= 1e-10 * (1.0 + std::abs(a0(j))));
  }
}

TEST_CASE("energy balance and monotone decay") {
  FluidParams p;
  p.r = 2.6;
  SUBCASE("forced") {
    const auto sys = make_system(12, p, vec({1.0, 0.5, 0.25}));
    rftest::Gen g(21);
    const auto sim = simulate(sys, {0.5 * g.normal_vec(12), 0.0}, 1.0, 0.01);
    CHECK(sim.ledger.balance_ok);
    CHECK(sim.ledger.max_energy_violation <= 1e-8);
    for (std::size_t m = 1; m < sim.ledger.entries.size(); ++m) {
      const auto& e = sim.ledger.entries[m];
      CHECK(e.dissipation >= 0.0);
      CHECK(e.boundary_dissipation >= 0.0);
      CHECK(e.numerical_dissipation >= 0.0);
      CHECK(e.U >= 1.0);
    }
  }
  SUBCASE("unforced decay") {
    const auto sys = make_system(12, p, Eigen::VectorXd::Zero(0));
    rftest::Gen g(22);
    const auto sim = simulate(sys, {2.0 * g.normal_vec(12), 0.0}, 1.0, 0.02);
    for (std::size_t m = 1; m < sim.ledger.entries.size(); ++m)
      CHECK(sim.ledger.entries[m].norm_H_sq <= sim.ledger.entries[m - 1].norm_H_sq * (1.0 + 1e-14));
    // H-orthonormal basis: coefficient norm equals the H norm
    CHECK(sim.ledger.entries.back().norm_H_sq ==
          doctest::Approx(sim.trajectory.states.rightCols(1).squaredNorm()).epsilon(1e-10));
  }
}

TEST_CASE("first-order convergence in dt") {
  FluidParams p;
  const auto sys = make_system(8, p, vec({1.0, -0.5}));
  rftest::Gen g(31);
  const FlowState v0{g.normal_vec(8), 0.0};
  const double T = 0.25;
  const Eigen::VectorXd ref = simulate(sys, v0, T, T / 2048).trajectory.states.rightCols(1);
  double prev = 0.0;
  for (int M : {16, 32, 64}) {
    const double err = (simulate(sys, v0, T, T / M).trajectory.states.rightCols(1) - ref).norm();
    if (prev > 0.0) {
      const double ratio = prev / err;
      MESSAGE("M=" << M << " ratio " << ratio);
      CHECK(ratio >= 1.7);
      CHECK(ratio <= 2.3);
    }
    prev = err;
  }
}

TEST_CASE("pair divergence") {
  FluidParams p;
  rftest::Gen g(41);
  SUBCASE("identical data") {
    const auto sys = make_system(8, p, vec({1.0}));
    const FlowState v0{g.normal_vec(8), 0.0};
    const auto rep = pair_divergence(sys, v0, v0, 0.2, 0.02);
    CHECK(rep.max_growth == 0.0);
    CHECK(rep.gronwall_ok);
    for (double w : rep.w_sq) CHECK(w == 0.0);
  }
  SUBCASE("linear monotone flow contracts") {
    FluidParams lp = p;
    lp.nu2 = 0.0;
    SolverOptions o;
    o.convection = false;
    const auto sys = make_system(8, lp, vec({1.0}), o);
    const FlowState v0{g.normal_vec(8), 0.0};
    FlowState u0 = v0;
    u0.a += 0.1 * g.normal_vec(8);
    const auto rep = pair_divergence(sys, u0, v0, 0.3, 0.01);
    CHECK(rep.max_growth <= 1.0);
    CHECK(rep.gronwall_ok);
  }
  SUBCASE("nonlinear flow respects the fitted Gronwall bound") {
    const auto sys = make_system(12, p, vec({2.0, 1.0, 0.5}));
    const FlowState v0{g.normal_vec(12), 0.0};
    FlowState u0 = v0;
    u0.a(0) += 1e-3;
    const auto rep = pair_divergence(sys, u0, v0, 0.4, 0.01);
    CHECK(rep.gronwall_ok);
    CHECK(std::isfinite(rep.max_growth));
    CHECK(rep.gap_integral >= 0.0);
    CHECK(rep.times.size() == rep.w_sq.size());
    for (std::size_t m = 0; m < rep.w_sq.size(); ++m) CHECK(rep.w_sq[m] <= rep.bound[m] * (1.0 + 1e-12));
  }
  const auto sys = make_system(8, p, vec({1.0}));
  CHECK_THROWS_AS(pair_divergence(sys, {Eigen::VectorXd::Zero(8), 0.0}, {Eigen::VectorXd::Zero(8), 0.0}, 0.1,
                                  0.01, 0.9),
                  ContractError);
}

TEST_CASE("time regularity") {
  SUBCASE("rest state") {
    FluidParams p;
    const auto sys = make_system(8, p, Eigen::VectorXd::Zero(0));
    const auto sim = simulate(sys, {Eigen::VectorXd::Zero(8), 0.0}, 0.2, 0.02);
    const auto rep = track_regularity(sys, sim.trajectory, sim.ledger);
    CHECK(rep.branch == "r<=3");
    CHECK(rep.U_min == 1.0);
    CHECK(rep.U_at_least_one);
    CHECK(rep.dt_v_sq_integral == 0.0);
  }
  SUBCASE("forced start from rest") {
    FluidParams p;
    p.r = 3.5;
    const auto sys = make_system(12, p, vec({4.0, 2.0, 1.0}));
    const auto sim = simulate(sys, {Eigen::VectorXd::Zero(12), 0.0}, 0.5, 0.01);
    const auto rep = track_regularity(sys, sim.trajectory, sim.ledger);
    CHECK(rep.branch == "r>3");
    CHECK(rep.mu == doctest::Approx((2 * 3.5 + 4) / (3.5 * 3.5)));
    CHECK(rep.U_at_least_one);
    CHECK(sim.ledger.entries.back().U > 1.0);
    CHECK(rep.dt_v_sq_integral > 0.0);
    CHECK(rep.c8_hat >= 0.0);
    CHECK(rep.U_equiv_lower > 0.0);
    CHECK(rep.U_equiv_lower <= rep.U_equiv_upper);
  }
  SUBCASE("regime and domain guards") {
    FluidParams p;
    p.r = 2.3;
    const auto sys = make_system(8, p, Eigen::VectorXd::Zero(0));
    const auto sim = simulate(sys, {Eigen::VectorXd::Zero(8), 0.0}, 0.1, 0.05);
    CHECK_THROWS_AS(track_regularity(sys, sim.trajectory, sim.ledger), RegimeError);
    FluidParams n = FluidParams{};
    n.nu2 = 0.0;
    const auto sys2 = make_system(8, n, Eigen::VectorXd::Zero(0));
    const auto sim2 = simulate(sys2, {Eigen::VectorXd::Zero(8), 0.0}, 0.1, 0.05);
    CHECK_THROWS_AS(track_regularity(sys2, sim2.trajectory, sim2.ledger), DomainError);
  }
}

TEST_CASE("trajectory and ledger CSV") {
  FluidParams p;
  const auto sys = make_system(4, p, vec({1.0}));
  const auto sim = simulate(sys, {Eigen::VectorXd::Zero(4), 0.0}, 0.1, 0.02);
  const auto dir = std::filesystem::temp_directory_path() / "rfluid_test_solver_csv";
  std::filesystem::create_directories(dir);
  write_trajectory_csv(sim, dir / "trajectory.csv");
  write_ledger_csv(sim.ledger, dir / "ledger.csv");
  std::ifstream tr(dir / "trajectory.csv"), lg(dir / "ledger.csv");
  std::string line;
  std::getline(tr, line);
  CHECK(line == "t,a_1,a_2,a_3,a_4,norm_H,U,energy_residual");
  int rows = 0;
  while (std::getline(tr, line)) ++rows;
  CHECK(rows == 6);
  std::getline(lg, line);
  CHECK(line.rfind("t,dt,norm_H_sq", 0) == 0);
  rows = 0;
  while (std::getline(lg, line)) ++rows;
  CHECK(rows == 6);
  std::filesystem::remove_all(dir);
}
