// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through its C header only.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "rfluid/rfluid.h"

namespace {

rf_fluid_params defaults() {
  rf_fluid_params p;
  rf_fluid_params_default(&p);
  return p;
}

} // namespace

TEST_CASE("status names, version, last error") {
  CHECK(std::string(rf_status_name(RF_OK)) == "ok");
  CHECK(std::string(rf_status_name(RF_ERR_REGIME)) == "regime");
  CHECK(std::string(rf_version()) == "0.1.0");
  rf_fluid_params p = defaults();
  p.r = 1.5;
  CHECK(rf_fluid_params_validate(&p) == RF_ERR_CONTRACT);
  CHECK(std::string(rf_last_error()).find("r must be > 2") != std::string::npos);
  p = defaults();
  CHECK(rf_fluid_params_validate(&p) == RF_OK);
  CHECK(rf_fluid_params_validate(nullptr) == RF_ERR_CONTRACT);
}

TEST_CASE("constants handle") {
  rf_constants* c = nullptr;
  REQUIRE(rf_constants_create(&c) == RF_OK);
  CHECK(rf_constants_count() == 13);
  CHECK(std::string(rf_constants_name(0)) == "absorb_c1");
  CHECK(rf_constants_name(99) == nullptr);
  double v = 0.0;
  rf_provenance prov = RF_PROV_CONFIG;
  REQUIRE(rf_constants_get(c, "rank_c", &v, &prov) == RF_OK);
  CHECK(v == 1.0);
  CHECK(prov == RF_PROV_DEFAULT);
  CHECK(rf_constants_set(c, "rank_c", 0.5, RF_PROV_ESTIMATED) == RF_OK);
  rf_constants_get(c, "rank_c", &v, &prov);
  CHECK(v == 0.5);
  CHECK(std::string(rf_provenance_name(prov)) == "estimated");
  CHECK(rf_constants_set(c, "nope", 1.0, RF_PROV_CONFIG) == RF_ERR_CONTRACT);
  CHECK(rf_constants_set(c, "rank_c", -1.0, RF_PROV_CONFIG) == RF_ERR_CONTRACT);
  CHECK(rf_constants_get(nullptr, "rank_c", &v, &prov) == RF_ERR_CONTRACT);
  rf_constants_destroy(c);
  rf_constants_destroy(nullptr);
}

TEST_CASE("bound chain through the C API") {
  rf_constants* c = nullptr;
  rf_constants_create(&c);
  rf_fluid_params p = defaults();
  rf_bound_report r;
  REQUIRE(rf_bounds_evaluate(&p, 2.0, c, -1.0, 2, &r) == RF_OK);
  CHECK(std::abs(r.dim_bound / 9607860045.2804141022 - 1.0) <= 1e-12);
  CHECK(r.branch_high == 0);
  CHECK(r.B0_overridden == 0);
  p.r = 2.3;
  CHECK(rf_bounds_evaluate(&p, 2.0, c, -1.0, 2, &r) == RF_ERR_REGIME);
  p = defaults();
  p.nu2 = 0.0;
  CHECK(rf_bounds_evaluate(&p, 2.0, c, -1.0, 2, &r) == RF_ERR_DOMAIN);
  CHECK(rf_bounds_evaluate(&p, 2.0, c, -1.0, 2, nullptr) == RF_ERR_CONTRACT);

  size_t needed = 0;
  REQUIRE(rf_bound_report_csv_header(nullptr, 0, &needed) == RF_OK);
  std::vector<char> buf(needed + 1);
  REQUIRE(rf_bound_report_csv_header(buf.data(), buf.size(), &needed) == RF_OK);
  CHECK(std::strlen(buf.data()) == needed);
  char tiny[4];
  rf_bound_report_csv_header(tiny, sizeof tiny, &needed);
  CHECK(std::strlen(tiny) == 3);
  rf_constants_destroy(c);
}

TEST_CASE("basis, system, simulation") {
  rf_fluid_params p = defaults();
  rf_basis* b = nullptr;
  CHECK(rf_basis_create(RF_GEOMETRY_SHELL3D, 8, &p, 0, &b) == RF_ERR_CONTRACT);
  CHECK(rf_basis_create(RF_GEOMETRY_DISK, 0, &p, 0, &b) == RF_ERR_CONTRACT);
  REQUIRE(rf_basis_create(RF_GEOMETRY_DISK, 8, &p, 0, &b) == RF_OK);
  CHECK(rf_basis_size(b) == 8);
  CHECK(rf_basis_trial_degree(b) > 0);
  double lam[8];
  CHECK(rf_basis_eigenvalues(b, lam, 4) == RF_ERR_CONTRACT);
  REQUIRE(rf_basis_eigenvalues(b, lam, 8) == RF_OK);
  for (int j = 1; j < 8; ++j) CHECK(lam[j] >= lam[j - 1]);

  const auto dir = std::filesystem::temp_directory_path() / "rfluid_capi_basis";
  std::filesystem::remove_all(dir);
  REQUIRE(rf_basis_write(b, dir.c_str()) == RF_OK);
  rf_basis* b2 = nullptr;
  REQUIRE(rf_basis_read(dir.c_str(), &b2) == RF_OK);
  double lam2[8];
  rf_basis_eigenvalues(b2, lam2, 8);
  for (int j = 0; j < 8; ++j) CHECK(lam2[j] == lam[j]);
  rf_basis_destroy(b2);
  CHECK(rf_basis_read((dir / "missing").c_str(), &b2) == RF_ERR_IO);
  std::filesystem::remove_all(dir);

  rf_solver_options o;
  rf_solver_options_default(&o);
  const double f[2] = {1.0, 0.5};
  rf_system* s = nullptr;
  REQUIRE(rf_system_create(b, &p, f, 2, &o, &s) == RF_OK);
  rf_basis_destroy(b); // the system keeps its own reference
  CHECK(rf_system_size(s) == 8);
  CHECK(rf_system_forcing_l2(s) > 0.0);

  const double v0[8] = {0.1, 0, 0, 0, 0, 0, 0, 0};
  rf_simulation* sim = nullptr;
  CHECK(rf_simulate(s, v0, 7, 0.0, 0.1, 0.01, &sim) == RF_ERR_CONTRACT);
  REQUIRE(rf_simulate(s, v0, 8, 0.0, 0.1, 0.01, &sim) == RF_OK);
  rf_simulation_summary sum;
  REQUIRE(rf_simulation_summarize(sim, &sum) == RF_OK);
  CHECK(sum.steps == 10);
  CHECK(sum.balance_ok == 1);
  double fin[8];
  CHECK(rf_simulation_final_state(sim, fin, 8) == RF_OK);
  rf_regularity reg;
  CHECK(rf_simulation_regularity(s, sim, &reg) == RF_OK);
  CHECK(reg.branch_high == 0);
  rf_pair_report pr;
  CHECK(rf_pair_divergence(s, v0, v0, 8, 0.1, 0.01, 1.1, &pr) == RF_OK);
  CHECK(pr.max_growth == 0.0);
  const auto blocker = std::filesystem::temp_directory_path() / "rfluid_capi_blocker";
  std::fclose(std::fopen(blocker.c_str(), "w"));
  CHECK(rf_simulation_write_ledger_csv(sim, (blocker / "ledger.csv").c_str()) == RF_ERR_IO);
  std::filesystem::remove(blocker);
  rf_simulation_destroy(sim);
  rf_system_destroy(s);
}

TEST_CASE("covering and box counting") {
  rf_constants* c = nullptr;
  rf_constants_create(&c);
  rf_covering_report cr;
  REQUIRE(rf_covering_evaluate(1.0, 1.0, 1.0, 3.0, RF_LAMBDA_TWO_THIRDS, nullptr, 0, c, &cr) == RF_OK);
  CHECK(cr.enumerated_rank == 75);
  CHECK(cr.small_constants_warning == 1);
  CHECK(std::string(rf_lambda_model_name(RF_LAMBDA_HALF)) == "j^(1/2)");
  CHECK(rf_covering_evaluate(1.0, 1.0, 1.0, 3.0, RF_LAMBDA_MEASURED, nullptr, 0, c, &cr) == RF_ERR_CONTRACT);
  rf_distance_report dr;
  REQUIRE(rf_projection_distance(RF_LAMBDA_TWO_THIRDS, nullptr, 0, 60, 20, 1.0, 1.5, 1.0, 1.0, c, 20, 7, &dr) ==
          RF_OK);
  CHECK(dr.samples == 20);
  CHECK(dr.max_distance <= 1.0 / std::sqrt(8.0));
  rf_constants_destroy(c);

  rf_fluid_params p = defaults();
  p.r = 2.6;
  rf_basis* b = nullptr;
  rf_basis_create(RF_GEOMETRY_DISK, 6, &p, 0, &b);
  const double f[1] = {2.0};
  rf_system* s = nullptr;
  REQUIRE(rf_system_create(b, &p, f, 1, nullptr, &s) == RF_OK);
  rf_attractor_options ao;
  rf_attractor_options_default(&ao);
  ao.burn_in = 2;
  ao.samples = 50;
  ao.steps_per_segment = 8;
  const double v0[6] = {0, 0, 0, 0, 0, 0};
  rf_box_counting* bc = nullptr;
  const rf_status st = rf_attractor_dimension(s, v0, 6, 0.05, &ao, &bc);
  INFO(std::string(rf_last_error()));
  REQUIRE(st == RF_OK);
  rf_box_summary bs;
  REQUIRE(rf_box_counting_summarize(bc, &bs) == RF_OK);
  CHECK(bs.segments == 50);
  CHECK(bs.n_epsilons == 8);
  std::vector<double> eps(8);
  std::vector<uint64_t> counts(8);
  CHECK(rf_box_counting_counts(bc, eps.data(), counts.data(), 8) == RF_OK);
  for (int i = 1; i < 8; ++i) CHECK(counts[i] >= counts[i - 1]);
  rf_box_counting_destroy(bc);
  rf_system_destroy(s);
  rf_basis_destroy(b);
}
