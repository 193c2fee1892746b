// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "rfluid/error.hpp"
#include "rfluid/spectral.hpp"
#include "support.hpp"

using namespace rfluid;

TEST_CASE("basis: H-orthonormal, V-orthogonal, sorted") {
  const auto& b = *rftest::disk_basis(32);
  REQUIRE(b.size() == 32);
  const Eigen::MatrixXd H = b.h_gram();
  CHECK((H - Eigen::MatrixXd::Identity(32, 32)).cwiseAbs().maxCoeff() <= 1e-8);
  const Eigen::MatrixXd V = b.v_gram();
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j)
      if (i != j) CHECK(std::abs(V(i, j)) <= 1e-6 * std::sqrt(std::abs(V(i, i) * V(j, j))) + 1e-12);
  const auto& ev = b.eigenvalues();
  for (int j = 0; j < 32; ++j) {
    CHECK(ev(j) >= 0.0);
    if (j > 0) CHECK(ev(j) >= ev(j - 1));
    CHECK(V(j, j) == doctest::Approx(ev(j)).epsilon(1e-8));
  }
}

TEST_CASE("basis: eigenfields satisfy the constraints and the Rayleigh quotient") {
  const auto& b = *rftest::disk_basis(32);
  FluidParams p; // alpha = beta = 1 as in the cached basis
  for (int j = 0; j < b.size(); ++j) {
    const auto f = b.field(j);
    CHECK(f.solenoidal);
    CHECK(f.tangential);
    CHECK(f.satisfies_constraints());
    CHECK(rayleigh_quotient(f, p) == doctest::Approx(b.eigenvalues()(j)).epsilon(1e-8));
    CHECK(rayleigh_quotient(-3.7 * f, p) == doctest::Approx(rayleigh_quotient(f, p)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(rayleigh_quotient(0.0 * b.field(0), p), ContractError);
}

TEST_CASE("basis: Courant-Fischer minimum over the span") {
  const auto& b = *rftest::disk_basis(16);
  FluidParams p;
  const double lam1 = b.eigenvalues()(0);
  rftest::Gen g(2);
  for (int i = 0; i < 100; ++i) CHECK(rayleigh_quotient(b.combine(g.normal_vec(16)), p) >= lam1 - 1e-8);
  // minimum of the generalized problem (V, H) over the span
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(b.v_gram(), b.h_gram());
  CHECK(es.eigenvalues().minCoeff() == doctest::Approx(lam1).epsilon(1e-8));
}

TEST_CASE("basis: rigid rotation has zero energy without boundary friction") {
  const auto b = rftest::disk_basis(8, 0.0, 0.0);
  FluidParams p;
  p.alpha = 0.0;
  p.beta = 0.0;
  auto rot = [](double x, double y) {
    FieldPoint f;
    f.v = {-y, x};
    f.grad = {0.0, -1.0, 1.0, 0.0};
    return f;
  };
  const auto f = DiscreteField::from_function(b->quadrature_ptr(), rot);
  const double rq = rayleigh_quotient(f, p);
  CHECK(std::abs(rq) <= 1e-12);
  CHECK(b->eigenvalues()(0) == doctest::Approx(rq).epsilon(1e-10).scale(1.0));
  // and the lowest mode is that rotation up to sign and normalization
  const auto w = b->field(0);
  const double c = inner_H(w, f, 0.0) / inner_H(f, f, 0.0);
  const auto diff = w + (-c) * f;
  CHECK(norm_L2(diff) <= 1e-8);
}

TEST_CASE("basis: refinement of the trial space") {
  FluidParams p;
  const auto coarse = build_basis(Geometry::disk, 16, p);
  const int P = coarse.trial_degree();
  int P2 = P;
  while (trial_count(P2) < 2 * trial_count(P)) ++P2;
  BasisOptions o;
  o.trial_degree = P2;
  const auto fine = build_basis(Geometry::disk, 16, p, o);
  for (int j = 0; j < 8; ++j) {
    const double a = coarse.eigenvalues()(j), c = fine.eigenvalues()(j);
    CHECK(std::abs(a - c) <= 0.01 * std::max(c, 1e-12));
  }
}

TEST_CASE("basis: contract errors") {
  FluidParams p;
  BasisOptions o;
  o.trial_degree = 2;
  CHECK_THROWS_AS(build_basis(Geometry::disk, trial_count(2) + 1, p, o), ContractError);
  CHECK_THROWS_AS(build_basis(Geometry::disk, 0, p), ContractError);
  CHECK_THROWS_AS(build_basis(Geometry::shell3d, 4, p), ContractError);
  CHECK(parse_geometry("disk") == Geometry::disk);
  CHECK_THROWS_AS(parse_geometry("torus"), ContractError);
}

TEST_CASE("asymptotics") {
  SUBCASE("exact power laws") {
    Eigen::VectorXd two_thirds(40), linear(40);
    for (int j = 1; j <= 40; ++j) {
      two_thirds(j - 1) = std::pow(j, 2.0 / 3.0);
      linear(j - 1) = j;
    }
    const auto a = check_eigen_asymptotics(two_thirds, 3);
    CHECK(a.fitted_exponent == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(a.window_ok);
    const auto l = check_eigen_asymptotics(linear, 2, 0.15);
    CHECK(l.fitted_exponent == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(l.window_ok);
    CHECK(l.upper_exponent == doctest::Approx(1.0));
  }
  SUBCASE("too few eigenvalues") {
    CHECK_THROWS_AS(check_eigen_asymptotics(Eigen::VectorXd::LinSpaced(8, 1.0, 8.0), 2), ContractError);
  }
  SUBCASE("disk, N = 64") {
    const auto a = check_eigen_asymptotics(*rftest::disk_basis(64));
    MESSAGE("disk N = 64 fitted exponent " << a.fitted_exponent);
    CHECK(a.fitted_exponent > 0.0);
    CHECK(a.fitted_exponent <= 1.15);
    CHECK(a.window_ok);
  }
}

TEST_CASE("basis export round trip") {
  const auto& b = *rftest::disk_basis(8);
  const auto dir = std::filesystem::temp_directory_path() / "rfluid_test_basis_io";
  std::filesystem::remove_all(dir);
  write_basis(b, dir);
  CHECK(std::filesystem::exists(dir / "basis.json"));
  CHECK(std::filesystem::exists(dir / "eigenvalues.csv"));
  const auto r = read_basis(dir);
  REQUIRE(r.size() == b.size());
  CHECK((r.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((r.values(0) - b.values(0)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((r.trace(1) - b.trace(1)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((r.h_gram() - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-8);
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(read_basis(dir), IoError);
}
