// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#include "rfluid/rfluid.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "rfluid/bounds.hpp"
#include "rfluid/error.hpp"
#include "rfluid/inequalities.hpp"
#include "rfluid/io.hpp"
#include "rfluid/solver.hpp"
#include "rfluid/spectral.hpp"
#include "rfluid/trajectories.hpp"

using namespace rfluid;

struct rf_constants {
  ConstantsLedger ledger;
};
struct rf_basis {
  std::shared_ptr<const SpectralBasis> basis;
};
struct rf_system {
  std::unique_ptr<GalerkinSystem> sys;
};
struct rf_simulation {
  Simulation sim;
};
struct rf_box_counting {
  AttractorReport rep;
};

namespace {

thread_local std::string g_last_error;

template <class F>
rf_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return RF_OK;
  } catch (const ContractError& e) {
    g_last_error = e.what();
    return RF_ERR_CONTRACT;
  } catch (const RegimeError& e) {
    g_last_error = e.what();
    return RF_ERR_REGIME;
  } catch (const DomainError& e) {
    g_last_error = e.what();
    return RF_ERR_DOMAIN;
  } catch (const NumericalError& e) {
    g_last_error = e.what();
    return RF_ERR_NUMERICAL;
  } catch (const IoError& e) {
    g_last_error = e.what();
    return RF_ERR_IO;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RF_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RF_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return RF_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw ContractError(std::string(what) + " must not be null");
}

FluidParams to_cpp(const rf_fluid_params* p) {
  need(p, "params");
  FluidParams f;
  f.nu1 = p->nu1;
  f.nu2 = p->nu2;
  f.r = p->r;
  f.q = p->q;
  f.alpha = p->alpha;
  f.beta = p->beta;
  std::copy(p->c, p->c + 7, f.c.begin());
  return f;
}

Provenance to_cpp(rf_provenance p) {
  switch (p) {
  case RF_PROV_CONFIG:
    return Provenance::config;
  case RF_PROV_ESTIMATED:
    return Provenance::estimated;
  default:
    return Provenance::default_value;
  }
}

rf_provenance to_c(Provenance p) {
  switch (p) {
  case Provenance::config:
    return RF_PROV_CONFIG;
  case Provenance::estimated:
    return RF_PROV_ESTIMATED;
  default:
    return RF_PROV_DEFAULT;
  }
}

const ConstantsLedger& ledger_or_default(const rf_constants* c) {
  static const ConstantsLedger defaults;
  return c ? c->ledger : defaults;
}

rf_bound_report to_c(const BoundReport& r) {
  rf_bound_report o{};
  o.f_norm = r.f_norm;
  o.d = r.d;
  o.B0 = r.B0;
  o.B0_overridden = r.B0_overridden;
  o.Br = r.Br;
  o.Br_low_branch = r.Br_low_branch;
  o.Br_high_branch = r.Br_high_branch;
  o.ell = r.ell;
  o.L1 = r.lip.L1;
  o.M_r = r.lip.M_r;
  o.U_const = r.lip.U_const;
  o.W = r.lip.W;
  o.Q = r.lip.Q;
  o.L2 = r.lip.L2;
  o.dim_exponent = r.dim_exponent;
  o.dim_bound = r.dim_bound;
  o.branch_high = r.branch == "r>3";
  o.s_min = r.s_min;
  o.kappa1 = r.kappa1;
  o.kappa2 = r.kappa2;
  o.degenerate = r.degenerate;
  return o;
}

BoundReport to_cpp(const rf_fluid_params* p, const rf_bound_report* o) {
  need(o, "report");
  BoundReport r;
  r.params = to_cpp(p);
  r.f_norm = o->f_norm;
  r.d = o->d;
  r.B0 = o->B0;
  r.B0_overridden = o->B0_overridden != 0;
  r.Br = o->Br;
  r.Br_low_branch = o->Br_low_branch;
  r.Br_high_branch = o->Br_high_branch;
  r.ell = o->ell;
  r.lip = {o->L1, o->M_r, o->U_const, o->W, o->Q, o->L2};
  r.dim_exponent = o->dim_exponent;
  r.dim_bound = o->dim_bound;
  r.branch = o->branch_high ? "r>3" : "r<=3";
  r.s_min = o->s_min;
  r.kappa1 = o->kappa1;
  r.kappa2 = o->kappa2;
  r.degenerate = o->degenerate != 0;
  return r;
}

void copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size();
  if (buf && cap > 0) {
    const size_t n = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
  }
}

LambdaSequence lambda_sequence(rf_lambda_model m, const double* measured, int n_measured) {
  switch (m) {
  case RF_LAMBDA_TWO_THIRDS:
    return LambdaSequence::synthetic(LambdaModel::synthetic_two_thirds);
  case RF_LAMBDA_HALF:
    return LambdaSequence::synthetic(LambdaModel::synthetic_half);
  case RF_LAMBDA_MEASURED:
    need(measured, "measured eigenvalues");
    require(n_measured > 0, "measured eigenvalue count must be positive");
    return LambdaSequence::measured(Eigen::Map<const Eigen::VectorXd>(measured, n_measured));
  }
  throw ContractError("unknown lambda model");
}

Eigen::VectorXd vec(const double* v, int n, int expected, const char* what) {
  need(v, what);
  require(n == expected, std::string(what) + " has length " + std::to_string(n) + ", expected " +
                             std::to_string(expected));
  return Eigen::Map<const Eigen::VectorXd>(v, n);
}

} // namespace

extern "C" {

const char* rf_status_name(rf_status s) {
  switch (s) {
  case RF_OK:
    return "ok";
  case RF_ERR_CONTRACT:
    return "contract";
  case RF_ERR_REGIME:
    return "regime";
  case RF_ERR_DOMAIN:
    return "domain";
  case RF_ERR_NUMERICAL:
    return "numerical";
  case RF_ERR_IO:
    return "io";
  case RF_ERR_INTERNAL:
    return "internal";
  }
  return "unknown";
}

const char* rf_last_error(void) { return g_last_error.c_str(); }

const char* rf_version(void) { return "0.1.0"; }

void rf_fluid_params_default(rf_fluid_params* p) {
  if (!p) return;
  const FluidParams f;
  p->nu1 = f.nu1;
  p->nu2 = f.nu2;
  p->r = f.r;
  p->q = f.q;
  p->alpha = f.alpha;
  p->beta = f.beta;
  std::copy(f.c.begin(), f.c.end(), p->c);
}

rf_status rf_fluid_params_validate(const rf_fluid_params* p) {
  return guarded([&] { to_cpp(p).validate(); });
}

rf_status rf_constants_create(rf_constants** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rf_constants;
  });
}

void rf_constants_destroy(rf_constants* c) { delete c; }

rf_status rf_constants_set(rf_constants* c, const char* name, double value, rf_provenance prov) {
  return guarded([&] {
    need(c, "constants");
    need(name, "name");
    c->ledger.set(name, value, to_cpp(prov));
  });
}

rf_status rf_constants_get(const rf_constants* c, const char* name, double* value, rf_provenance* prov) {
  return guarded([&] {
    need(c, "constants");
    need(name, "name");
    require(ConstantsLedger::known(name), std::string("unknown constant '") + name + "'");
    const auto& e = c->ledger.entry(name);
    if (value) *value = e.value;
    if (prov) *prov = to_c(e.provenance);
  });
}

int rf_constants_count(void) { return static_cast<int>(ConstantsLedger::names().size()); }

const char* rf_constants_name(int index) {
  const auto& n = ConstantsLedger::names();
  if (index < 0 || index >= static_cast<int>(n.size())) return nullptr;
  return n[static_cast<size_t>(index)].c_str();
}

const char* rf_provenance_name(rf_provenance p) {
  switch (p) {
  case RF_PROV_CONFIG:
    return "config";
  case RF_PROV_ESTIMATED:
    return "estimated";
  default:
    return "default";
  }
}

rf_status rf_bounds_evaluate(const rf_fluid_params* p, double f_norm, const rf_constants* c,
                             double B0_override, int d, rf_bound_report* out) {
  return guarded([&] {
    need(out, "out");
    std::optional<double> ov;
    if (B0_override >= 0.0) ov = B0_override;
    *out = to_c(full_pipeline(to_cpp(p), f_norm, ledger_or_default(c), ov, d));
  });
}

rf_status rf_bound_report_csv_header(char* buf, size_t cap, size_t* needed) {
  return guarded([&] { copy_out(io::csv_row(bound_report_columns()), buf, cap, needed); });
}

rf_status rf_bound_report_csv_row(const rf_fluid_params* p, const rf_bound_report* r, char* buf, size_t cap,
                                  size_t* needed) {
  return guarded([&] { copy_out(io::csv_row(bound_report_row(to_cpp(p, r))), buf, cap, needed); });
}

rf_status rf_basis_create(rf_geometry g, int n_modes, const rf_fluid_params* p, int trial_degree,
                          rf_basis** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    const Geometry geo = g == RF_GEOMETRY_SHELL3D ? Geometry::shell3d : Geometry::disk;
    require(g == RF_GEOMETRY_DISK || g == RF_GEOMETRY_SHELL3D, "unknown geometry");
    BasisOptions bo;
    bo.trial_degree = trial_degree;
    auto b = std::make_shared<const SpectralBasis>(build_basis(geo, n_modes, to_cpp(p), bo));
    *out = new rf_basis{std::move(b)};
  });
}

rf_status rf_basis_read(const char* dir, rf_basis** out) {
  return guarded([&] {
    need(dir, "dir");
    need(out, "out");
    *out = new rf_basis{std::make_shared<const SpectralBasis>(read_basis(dir))};
  });
}

void rf_basis_destroy(rf_basis* b) { delete b; }

int rf_basis_size(const rf_basis* b) { return b ? b->basis->size() : 0; }

int rf_basis_trial_degree(const rf_basis* b) { return b ? b->basis->trial_degree() : 0; }

rf_status rf_basis_eigenvalues(const rf_basis* b, double* out, int capacity) {
  return guarded([&] {
    need(b, "basis");
    need(out, "out");
    const auto& ev = b->basis->eigenvalues();
    require(capacity >= ev.size(), "eigenvalue buffer too small");
    std::copy(ev.data(), ev.data() + ev.size(), out);
  });
}

rf_status rf_basis_write(const rf_basis* b, const char* dir) {
  return guarded([&] {
    need(b, "basis");
    need(dir, "dir");
    write_basis(*b->basis, dir);
  });
}

rf_status rf_basis_asymptotics(const rf_basis* b, double tol_exp, rf_asymptotics* out) {
  return guarded([&] {
    need(b, "basis");
    need(out, "out");
    const auto a = check_eigen_asymptotics(*b->basis, tol_exp);
    *out = {a.fitted_exponent, a.intercept, a.fit_residual, a.fit_points, a.upper_exponent,
            a.lower_exponent, a.lower_ok, a.window_ok};
  });
}

rf_status rf_basis_korn(const rf_basis* b, double q, uint64_t seed, double* out) {
  return guarded([&] {
    need(b, "basis");
    need(out, "out");
    KornOptions ko;
    ko.seed = seed;
    *out = estimate_korn_constant(*b->basis, q, ko);
  });
}

void rf_solver_options_default(rf_solver_options* o) {
  if (!o) return;
  const SolverOptions s;
  *o = {s.newton_tol, s.max_newton, s.max_fixed_point, s.fixed_point_damping,
        s.dt_min,     s.eps_jacobian, s.convection,    s.energy_tol};
}

rf_status rf_system_create(const rf_basis* b, const rf_fluid_params* p, const double* forcing, int n_forcing,
                           const rf_solver_options* o, rf_system** out) {
  return guarded([&] {
    need(b, "basis");
    need(out, "out");
    *out = nullptr;
    const int N = b->basis->size();
    require(n_forcing >= 0 && n_forcing <= N, "forcing has more modes than the basis");
    require(n_forcing == 0 || forcing != nullptr, "forcing must not be null");
    Eigen::VectorXd c = Eigen::VectorXd::Zero(N);
    for (int j = 0; j < n_forcing; ++j) c(j) = forcing[j];
    SolverOptions so;
    if (o) {
      so.newton_tol = o->newton_tol;
      so.max_newton = o->max_newton;
      so.max_fixed_point = o->max_fixed_point;
      so.fixed_point_damping = o->fixed_point_damping;
      so.dt_min = o->dt_min;
      so.eps_jacobian = o->eps_jacobian;
      so.convection = o->convection != 0;
      so.energy_tol = o->energy_tol;
    }
    auto sys = std::make_unique<GalerkinSystem>(b->basis, to_cpp(p), forcing_from_modes(*b->basis, c), so);
    *out = new rf_system{std::move(sys)};
  });
}

void rf_system_destroy(rf_system* s) { delete s; }

int rf_system_size(const rf_system* s) { return s ? s->sys->size() : 0; }

double rf_system_forcing_l2(const rf_system* s) { return s ? s->sys->forcing_l2() : 0.0; }

rf_status rf_simulate(const rf_system* s, const double* v0, int n, double t0, double T, double dt,
                      rf_simulation** out) {
  return guarded([&] {
    need(s, "system");
    need(out, "out");
    *out = nullptr;
    FlowState st{vec(v0, n, s->sys->size(), "initial state"), t0};
    auto sim = std::make_unique<rf_simulation>();
    sim->sim = simulate(*s->sys, st, T, dt);
    *out = sim.release();
  });
}

void rf_simulation_destroy(rf_simulation* sim) { delete sim; }

rf_status rf_simulation_summarize(const rf_simulation* sim, rf_simulation_summary* out) {
  return guarded([&] {
    need(sim, "simulation");
    need(out, "out");
    const auto& L = sim->sim.ledger;
    rf_simulation_summary s{};
    s.steps = static_cast<int>(L.entries.size()) - 1;
    s.max_energy_violation = L.max_energy_violation;
    s.balance_ok = L.balance_ok;
    s.initial_norm_H = std::sqrt(L.entries.front().norm_H_sq);
    s.final_norm_H = std::sqrt(L.entries.back().norm_H_sq);
    s.norm_H_nonincreasing = 1;
    for (size_t i = 0; i < L.entries.size(); ++i) {
      s.max_norm_H = std::max(s.max_norm_H, std::sqrt(L.entries[i].norm_H_sq));
      if (i > 0 && L.entries[i].norm_H_sq > L.entries[i - 1].norm_H_sq) s.norm_H_nonincreasing = 0;
    }
    for (const auto& st : sim->sim.trajectory.steps) {
      s.total_newton += st.newton_iterations;
      s.total_fixed_point += st.fixed_point_iterations;
      s.total_halvings += st.halvings;
    }
    *out = s;
  });
}

rf_status rf_simulation_final_state(const rf_simulation* sim, double* out, int n) {
  return guarded([&] {
    need(sim, "simulation");
    need(out, "out");
    const auto& S = sim->sim.trajectory.states;
    require(n == S.rows(), "state buffer has the wrong length");
    Eigen::Map<Eigen::VectorXd>(out, n) = S.col(S.cols() - 1);
  });
}

rf_status rf_simulation_write_trajectory_csv(const rf_simulation* sim, const char* path) {
  return guarded([&] {
    need(sim, "simulation");
    need(path, "path");
    write_trajectory_csv(sim->sim, path);
  });
}

rf_status rf_simulation_write_ledger_csv(const rf_simulation* sim, const char* path) {
  return guarded([&] {
    need(sim, "simulation");
    need(path, "path");
    write_ledger_csv(sim->sim.ledger, path);
  });
}

rf_status rf_simulation_regularity(const rf_system* s, const rf_simulation* sim, rf_regularity* out) {
  return guarded([&] {
    need(s, "system");
    need(sim, "simulation");
    need(out, "out");
    const auto r = track_regularity(*s->sys, sim->sim.trajectory, sim->sim.ledger);
    *out = {r.branch == "r>3", r.c8_hat,        r.branch_c_hat,  r.interp_c_hat,
            r.mu,              r.dt_v_sq_integral, r.U_min,      r.U_equiv_lower,
            r.U_equiv_upper,   r.U_at_least_one, r.discrete_surrogate};
  });
}

rf_status rf_pair_divergence(const rf_system* s, const double* u0, const double* v0, int n, double T,
                             double dt, double headroom, rf_pair_report* out) {
  return guarded([&] {
    need(s, "system");
    need(out, "out");
    const int N = s->sys->size();
    const FlowState a{vec(u0, n, N, "u0"), 0.0}, b{vec(v0, n, N, "v0"), 0.0};
    const auto r = pair_divergence(*s->sys, a, b, T, dt, headroom);
    *out = {r.c7_hat, r.max_growth, r.rate_integral, r.gap_integral, r.headroom, r.gronwall_ok};
  });
}

const char* rf_lambda_model_name(rf_lambda_model m) {
  switch (m) {
  case RF_LAMBDA_MEASURED:
    return "measured";
  case RF_LAMBDA_TWO_THIRDS:
    return "j^(2/3)";
  case RF_LAMBDA_HALF:
    return "j^(1/2)";
  }
  return "unknown";
}

rf_status rf_covering_evaluate(double C1, double C2, double ell, double r, rf_lambda_model m,
                               const double* measured, int n_measured, const rf_constants* c,
                               rf_covering_report* out) {
  return guarded([&] {
    need(out, "out");
    const auto rep = covering_report(C1, C2, ell, r, lambda_sequence(m, measured, n_measured),
                                     ledger_or_default(c));
    *out = {rep.C1,        rep.C2,    rep.ell,          rep.r,          rep.b,
            m,             rep.enumerated_rank, rep.j_max, rep.window_truncated, rep.rank_bound,
            rep.lnK_bound, rep.small_constants_warning};
  });
}

rf_status rf_projection_distance(rf_lambda_model m, const double* measured, int n_measured, int n_modes,
                                 int K, double ell, double b, double C1, double C2, const rf_constants* c,
                                 int n_samples, uint64_t seed, rf_distance_report* out) {
  return guarded([&] {
    need(out, "out");
    const auto seq = lambda_sequence(m, measured, n_measured);
    const auto r = sample_projection_distance(seq, n_modes, K, ell, b, C1, C2, ledger_or_default(c),
                                              n_samples, seed);
    *out = {r.max_distance, r.mean_distance, r.retained_pairs, r.total_pairs,
            static_cast<int>(r.distances.size())};
  });
}

void rf_attractor_options_default(rf_attractor_options* o) {
  if (!o) return;
  const AttractorOptions a;
  *o = {a.burn_in, a.samples, a.K, a.steps_per_segment, nullptr, 0};
}

rf_status rf_attractor_dimension(const rf_system* s, const double* v0, int n, double ell,
                                 const rf_attractor_options* o, rf_box_counting** out) {
  return guarded([&] {
    need(s, "system");
    need(out, "out");
    *out = nullptr;
    AttractorOptions ao;
    if (o) {
      ao.burn_in = o->burn_in;
      ao.samples = o->samples;
      ao.K = o->K;
      ao.steps_per_segment = o->steps_per_segment;
      if (o->n_epsilons > 0) {
        need(o->epsilons, "epsilons");
        ao.epsilons.assign(o->epsilons, o->epsilons + o->n_epsilons);
      }
    }
    const FlowState st{vec(v0, n, s->sys->size(), "initial state"), 0.0};
    auto b = std::make_unique<rf_box_counting>();
    b->rep = attractor_box_dimension(*s->sys, st, ell, ao);
    *out = b.release();
  });
}

void rf_box_counting_destroy(rf_box_counting* b) { delete b; }

rf_status rf_box_counting_summarize(const rf_box_counting* b, rf_box_summary* out) {
  return guarded([&] {
    need(b, "box counting");
    need(out, "out");
    const auto& x = b->rep.box;
    *out = {x.slope,
            x.intercept,
            x.fit_residual,
            x.diameter,
            b->rep.ell,
            x.degenerate,
            static_cast<int>(x.epsilons.size()),
            b->rep.segments};
  });
}

rf_status rf_box_counting_counts(const rf_box_counting* b, double* epsilons, uint64_t* counts, int capacity) {
  return guarded([&] {
    need(b, "box counting");
    const auto& x = b->rep.box;
    require(capacity >= static_cast<int>(x.epsilons.size()), "count buffer too small");
    for (size_t i = 0; i < x.epsilons.size(); ++i) {
      if (epsilons) epsilons[i] = x.epsilons[i];
      if (counts) counts[i] = x.counts[i];
    }
  });
}

rf_status rf_box_counting_write_csv(const rf_box_counting* b, const char* path) {
  return guarded([&] {
    need(b, "box counting");
    need(path, "path");
    write_box_counts_csv(b->rep.box, path);
  });
}

} // extern "C"
