// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

// Reference values below come from tests/oracles/bound_chain_oracle.py
// (mpmath, 50 digits).

#include <cmath>
#include <cstring>

#include "doctest.h"
#include "rfluid/bounds.hpp"
#include "rfluid/error.hpp"
#include "support.hpp"

using namespace rfluid;

namespace {

struct Expected {
  double B0, Br, ell, L1, M_r, U_const, W, Q, L2, dim_exponent, dim_bound;
};

void check_report(const BoundReport& r, const Expected& e, double tol = 1e-12) {
  CHECK(rftest::rel_err(r.B0, e.B0) <= tol);
  CHECK(rftest::rel_err(r.Br, e.Br) <= tol);
  CHECK(rftest::rel_err(r.ell, e.ell) <= tol);
  CHECK(rftest::rel_err(r.lip.L1, e.L1) <= tol);
  CHECK(rftest::rel_err(r.lip.M_r, e.M_r) <= tol);
  CHECK(rftest::rel_err(r.lip.U_const, e.U_const) <= tol);
  CHECK(rftest::rel_err(r.lip.W, e.W) <= tol);
  CHECK(rftest::rel_err(r.lip.Q, e.Q) <= tol);
  CHECK(rftest::rel_err(r.lip.L2, e.L2) <= tol);
  CHECK(rftest::rel_err(r.dim_exponent, e.dim_exponent) <= tol);
  CHECK(rftest::rel_err(r.dim_bound, e.dim_bound) <= tol);
}

FluidParams params(double nu1, double nu2, double r, double q, double alpha) {
  FluidParams p;
  p.nu1 = nu1;
  p.nu2 = nu2;
  p.r = r;
  p.q = q;
  p.alpha = alpha;
  return p;
}

} // namespace

TEST_CASE("chain against the high-precision oracle") {
  const ConstantsLedger L;
  SUBCASE("r = 3 regression") {
    const auto rep = full_pipeline(params(1, 1, 3, 2, 1), 2.0, L);
    check_report(rep, {2.0, 49.350746413054106356, 0.00041042543455911368961, 49.36087693229905275,
                       7.0250086414931979324, 396.12146393338215276, 16.951409509748724233, 1.0,
                       414.072873443130877, 6.0, 9607860045.2804141022});
    CHECK(rep.branch == "r<=3");
    CHECK_FALSE(rep.degenerate);
    CHECK(rep.s_min == 2.0);
  }
  SUBCASE("r = 4") {
    const auto rep = full_pipeline(params(1, 1, 4, 2, 1), 2.0, L);
    check_report(rep, {2.0, 32.0, 0.0038910505836575875486, 16.031219541881397365, 32.0,
                       529.03024488208611304, 8.0, 1.0, 538.03024488208611304, 6.3333333333333333333,
                       248793568.8192111797});
    CHECK(rep.branch == "r>3");
  }
  SUBCASE("r = 2.6 with unequal viscosities") {
    const auto rep = full_pipeline(params(0.5, 2, 2.6, 3, 0.75), 1.5, L);
    check_report(rep, {1.5422108254079408236, 44.285116222842622556, 0.00004992615200832971538,
                       200.14785979074332757, 6.2360176009513478681, 724.13671811928063756,
                       27.41295056246512538, 0.75, 752.29966868174576294, 5.7948717948717948718,
                       4323209699775.0516113});
    CHECK(rep.kappa1 == 0.5);
    CHECK(rep.kappa2 == 0.75);
  }
  SUBCASE("non-default ledger constants") {
    ConstantsLedger M;
    M.set("absorb_c1", 2.0);
    M.set("dim_c19", 0.5);
    const auto rep = full_pipeline(params(1, 1, 3, 2, 1), 2.0, M);
    check_report(rep, {4.0, 2435.4961715255727446, 1.6858736562187148828e-7, 2435.4963768225404723,
                       49.350746413054106356, 122629.06045930380186, 287.35028436719948325, 1.0,
                       122917.41074367100134, 6.0, 16862225012515314766.0});
  }
  SUBCASE("weak forcing") {
    const auto rep = full_pipeline(params(1, 1, 3, 2, 1), 0.5, L);
    CHECK(rftest::rel_err(rep.B0, 0.5) <= 1e-12);
    CHECK(rftest::rel_err(rep.dim_bound, 0.00065767855827822361515) <= 1e-10);
  }
}

TEST_CASE("absorbing radius branches") {
  const ConstantsLedger L;
  rftest::Gen g(1);
  for (int i = 0; i < 200; ++i) {
    const auto p = params(g.uniform(0.1, 3), g.uniform(0.1, 3), g.uniform(2.5, 6), g.uniform(2, 5),
                          g.uniform(0.1, 3));
    const double f = g.uniform(0.01, 20);
    const double k1 = std::min(p.nu1, p.alpha), k2 = std::min(p.nu2, p.alpha);
    const double s = std::min(p.r, p.q);
    const double B0 = absorbing_radius_B0(p, f, L);
    CHECK(B0 == doctest::Approx(std::min(f / k1, std::pow(f / k2, 1.0 / (s - 1.0)))).epsilon(1e-14));
    // homogeneous of degree one in the prefactor
    ConstantsLedger M;
    M.set("absorb_c1", 3.0);
    CHECK(absorbing_radius_B0(p, f, M) == doctest::Approx(3.0 * B0).epsilon(1e-14));
  }
}

TEST_CASE("monotonicity of the chain in the forcing") {
  const ConstantsLedger L;
  for (double r : {2.5, 3.0, 3.5, 5.0}) {
    double prev_B0 = 0.0, prev_Br = 0.0, prev_dim = 0.0, prev_ell = 1.0;
    for (double f = 1.0; f <= 10.0; f += 0.5) {
      const auto rep = full_pipeline(params(1, 1, r, 2, 1), f, L);
      CHECK(rep.B0 >= prev_B0);
      CHECK(rep.Br >= prev_Br);
      CHECK(rep.ell <= prev_ell);
      CHECK(rep.dim_bound >= prev_dim);
      prev_B0 = rep.B0;
      prev_Br = rep.Br;
      prev_ell = rep.ell;
      prev_dim = rep.dim_bound;
    }
  }
}

TEST_CASE("override, degenerate and guarded inputs") {
  const ConstantsLedger L;
  SUBCASE("B0 override replaces the formula") {
    const auto rep = full_pipeline(params(1, 1, 3, 2, 1), 7.0, L, 2.0);
    CHECK(rep.B0_overridden);
    CHECK(rep.B0 == 2.0);
    CHECK(rftest::rel_err(rep.dim_bound, 9607860045.2804141022) <= 1e-12);
  }
  SUBCASE("zero forcing") {
    const auto rep = full_pipeline(params(1, 1, 3, 2, 1), 0.0, L);
    CHECK(rep.degenerate);
    CHECK(rep.B0 == 0.0);
    CHECK(rep.dim_bound == 0.0);
  }
  SUBCASE("Newtonian limit has no power-law absorption") {
    CHECK_THROWS_AS(absorbing_radius_B0(params(1, 0, 3, 2, 1), 2.0, L), DomainError);
    CHECK_THROWS_AS(full_pipeline(params(1, 1, 3, 2, 0), 2.0, L), DomainError);
  }
  SUBCASE("regime") {
    CHECK_THROWS_AS(radius_Br(2.0, params(1, 1, 2.3, 2, 1), L), RegimeError);
    CHECK_THROWS_AS(full_pipeline(params(1, 1, 2.4, 2, 1), 2.0, L), RegimeError);
    CHECK_NOTHROW(full_pipeline(params(1, 1, 2.41, 2, 1), 2.0, L));
  }
  SUBCASE("log factor needs L1 > 1") {
    CHECK_THROWS_AS(dimension_bound(1.0, 5.0, 0.1, params(1, 1, 3, 2, 1), L), DomainError);
  }
  SUBCASE("contract") {
    CHECK_THROWS_AS(full_pipeline(params(1, 1, 3, 2, 1), -1.0, L), ContractError);
    CHECK_THROWS_AS(full_pipeline(params(-1, 1, 3, 2, 1), 1.0, L), ContractError);
  }
}

TEST_CASE("closed-form pieces") {
  CHECK(dimension_exponent(3.0) == 6.0);
  CHECK(dimension_exponent(6.0) == doctest::Approx(2.0 * 60.0 / 18.0));
  const ConstantsLedger L;
  CHECK(radius_Br_high(2.0, L) == 32.0);
  CHECK(radius_Br_low(2.0, 3.0, L) == doctest::Approx(std::pow(2.0, 45.0 / 8.0)).epsilon(1e-14));
  CHECK(trajectory_length_ell(1.0, params(1, 1, 3, 2, 1)) == 0.5);
  CHECK_THROWS_AS(trajectory_length_ell(0.0, params(1, 1, 3, 2, 1)), ContractError);
}

TEST_CASE("repeatability and ledger") {
  const ConstantsLedger L;
  const auto a = full_pipeline(params(0.7, 1.3, 3.2, 2.5, 0.9), 3.3, L);
  const auto b = full_pipeline(params(0.7, 1.3, 3.2, 2.5, 0.9), 3.3, L);
  CHECK(std::memcmp(&a.dim_bound, &b.dim_bound, sizeof(double)) == 0);
  CHECK(bound_report_row(a) == bound_report_row(b));
  CHECK(bound_report_row(a).size() == bound_report_columns().size());

  ConstantsLedger M;
  CHECK(M.entry("rank_c").provenance == Provenance::default_value);
  M.set("rank_c", 0.5, Provenance::estimated);
  CHECK(M.get("rank_c") == 0.5);
  CHECK(to_string(M.entry("rank_c").provenance) == "estimated");
  CHECK_THROWS_AS(M.set("nope", 1.0), ContractError);
  CHECK_THROWS_AS(M.set("lip_c1", 0.0), ContractError);
  CHECK(ConstantsLedger::names().size() == M.entries().size());
}
