/* Copyright 2026 The rfluid Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the rfluid library. Every function returns an rf_status;
 * on failure rf_last_error() describes the problem (per thread). Handles are
 * opaque and owned by the caller, release them with the matching _destroy.
 */
#ifndef RFLUID_H
#define RFLUID_H

#include <stddef.h>
#include <stdint.h>

#if defined(RFLUID_BUILDING)
#define RF_API __attribute__((visibility("default")))
#else
#define RF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  RF_OK = 0,
  RF_ERR_CONTRACT = 1,  /* invalid argument or violated precondition */
  RF_ERR_REGIME = 2,    /* parameters outside the supported regime */
  RF_ERR_DOMAIN = 3,    /* formula undefined for the inputs */
  RF_ERR_NUMERICAL = 4, /* solver or eigensolver failure */
  RF_ERR_IO = 5,
  RF_ERR_INTERNAL = 6
} rf_status;

RF_API const char* rf_status_name(rf_status s);
RF_API const char* rf_last_error(void);
RF_API const char* rf_version(void);

/* ---- parameters and constants ---- */

typedef struct {
  double nu1, nu2, r, q, alpha, beta;
  double c[7]; /* structural constants of the stress and boundary laws */
} rf_fluid_params;

RF_API void rf_fluid_params_default(rf_fluid_params* p);
RF_API rf_status rf_fluid_params_validate(const rf_fluid_params* p);

typedef struct rf_constants rf_constants;

typedef enum { RF_PROV_DEFAULT = 0, RF_PROV_CONFIG = 1, RF_PROV_ESTIMATED = 2 } rf_provenance;

RF_API rf_status rf_constants_create(rf_constants** out);
RF_API void rf_constants_destroy(rf_constants* c);
RF_API rf_status rf_constants_set(rf_constants* c, const char* name, double value, rf_provenance prov);
RF_API rf_status rf_constants_get(const rf_constants* c, const char* name, double* value,
                                  rf_provenance* prov);
/* Names in a fixed order; index in [0, rf_constants_count()). */
RF_API int rf_constants_count(void);
RF_API const char* rf_constants_name(int index);
RF_API const char* rf_provenance_name(rf_provenance p);

/* ---- bound chain ---- */

typedef struct {
  double f_norm;
  int d;
  double B0;
  int B0_overridden;
  double Br, Br_low_branch, Br_high_branch;
  double ell;
  double L1, M_r, U_const, W, Q, L2;
  double dim_exponent, dim_bound;
  int branch_high; /* 0: r <= 3, 1: r > 3 */
  double s_min, kappa1, kappa2;
  int degenerate;
} rf_bound_report;

/* B0_override < 0 selects the formula value. */
RF_API rf_status rf_bounds_evaluate(const rf_fluid_params* p, double f_norm, const rf_constants* c,
                                    double B0_override, int d, rf_bound_report* out);
/* CSV header and row of a report (with the parameters that produced it).
 * Writes at most cap bytes including the terminator; *needed gets the full
 * length without the terminator. */
RF_API rf_status rf_bound_report_csv_header(char* buf, size_t cap, size_t* needed);
RF_API rf_status rf_bound_report_csv_row(const rf_fluid_params* p, const rf_bound_report* r, char* buf,
                                         size_t cap, size_t* needed);

/* ---- spectral basis ---- */

typedef enum { RF_GEOMETRY_DISK = 0, RF_GEOMETRY_SHELL3D = 1 } rf_geometry;

typedef struct rf_basis rf_basis;

/* trial_degree 0 picks the degree automatically. */
RF_API rf_status rf_basis_create(rf_geometry g, int n_modes, const rf_fluid_params* p, int trial_degree,
                                 rf_basis** out);
RF_API rf_status rf_basis_read(const char* dir, rf_basis** out);
RF_API void rf_basis_destroy(rf_basis* b);
RF_API int rf_basis_size(const rf_basis* b);
RF_API int rf_basis_trial_degree(const rf_basis* b);
RF_API rf_status rf_basis_eigenvalues(const rf_basis* b, double* out, int capacity);
RF_API rf_status rf_basis_write(const rf_basis* b, const char* dir);

typedef struct {
  double fitted_exponent, intercept, fit_residual;
  int fit_points;
  double upper_exponent, lower_exponent;
  int lower_ok, window_ok;
} rf_asymptotics;

RF_API rf_status rf_basis_asymptotics(const rf_basis* b, double tol_exp, rf_asymptotics* out);
/* Empirical Korn constant over the basis span (exact for q = 2). */
RF_API rf_status rf_basis_korn(const rf_basis* b, double q, uint64_t seed, double* out);

/* ---- Galerkin system and simulation ---- */

typedef struct {
  double newton_tol;
  int max_newton;
  int max_fixed_point;
  double fixed_point_damping;
  double dt_min;
  double eps_jacobian;
  int convection;
  double energy_tol;
} rf_solver_options;

RF_API void rf_solver_options_default(rf_solver_options* o);

typedef struct rf_system rf_system;

/* Forcing f = sum_j forcing[j] w_j over the first n_forcing modes. The
 * system keeps its own reference to the basis. */
RF_API rf_status rf_system_create(const rf_basis* b, const rf_fluid_params* p, const double* forcing,
                                  int n_forcing, const rf_solver_options* o, rf_system** out);
RF_API void rf_system_destroy(rf_system* s);
RF_API int rf_system_size(const rf_system* s);
RF_API double rf_system_forcing_l2(const rf_system* s);

typedef struct rf_simulation rf_simulation;

RF_API rf_status rf_simulate(const rf_system* s, const double* v0, int n, double t0, double T, double dt,
                             rf_simulation** out);
RF_API void rf_simulation_destroy(rf_simulation* sim);

typedef struct {
  int steps;
  double max_energy_violation;
  int balance_ok;
  double initial_norm_H, final_norm_H, max_norm_H;
  int norm_H_nonincreasing;
  int total_newton, total_fixed_point, total_halvings;
} rf_simulation_summary;

RF_API rf_status rf_simulation_summarize(const rf_simulation* sim, rf_simulation_summary* out);
RF_API rf_status rf_simulation_final_state(const rf_simulation* sim, double* out, int n);
RF_API rf_status rf_simulation_write_trajectory_csv(const rf_simulation* sim, const char* path);
RF_API rf_status rf_simulation_write_ledger_csv(const rf_simulation* sim, const char* path);

typedef struct {
  int branch_high;
  double c8_hat, branch_c_hat, interp_c_hat, mu;
  double dt_v_sq_integral, U_min, U_equiv_lower, U_equiv_upper;
  int U_at_least_one, discrete_surrogate;
} rf_regularity;

RF_API rf_status rf_simulation_regularity(const rf_system* s, const rf_simulation* sim, rf_regularity* out);

typedef struct {
  double c7_hat, max_growth, rate_integral, gap_integral, headroom;
  int gronwall_ok;
} rf_pair_report;

RF_API rf_status rf_pair_divergence(const rf_system* s, const double* u0, const double* v0, int n, double T,
                                    double dt, double headroom, rf_pair_report* out);

/* ---- trajectories ---- */

typedef enum { RF_LAMBDA_MEASURED = 0, RF_LAMBDA_TWO_THIRDS = 1, RF_LAMBDA_HALF = 2 } rf_lambda_model;

typedef struct {
  double C1, C2, ell, r, b;
  rf_lambda_model lambda_model;
  uint64_t enumerated_rank, j_max;
  int window_truncated;
  double rank_bound, lnK_bound;
  int small_constants_warning;
} rf_covering_report;

RF_API const char* rf_lambda_model_name(rf_lambda_model m);
/* measured/n_measured are used only for RF_LAMBDA_MEASURED (sorted). */
RF_API rf_status rf_covering_evaluate(double C1, double C2, double ell, double r, rf_lambda_model m,
                                      const double* measured, int n_measured, const rf_constants* c,
                                      rf_covering_report* out);

typedef struct {
  double max_distance, mean_distance;
  int retained_pairs, total_pairs, samples;
} rf_distance_report;

RF_API rf_status rf_projection_distance(rf_lambda_model m, const double* measured, int n_measured,
                                        int n_modes, int K, double ell, double b, double C1, double C2,
                                        const rf_constants* c, int n_samples, uint64_t seed,
                                        rf_distance_report* out);

typedef struct {
  int burn_in, samples, K, steps_per_segment;
  const double* epsilons; /* NULL: chosen from the point cloud */
  int n_epsilons;
} rf_attractor_options;

RF_API void rf_attractor_options_default(rf_attractor_options* o);

typedef struct rf_box_counting rf_box_counting;

typedef struct {
  double slope, intercept, fit_residual, diameter, ell;
  int degenerate, n_epsilons, segments;
} rf_box_summary;

/* Iterates the segment map of length ell from v0 and box-counts the
 * collected segments. */
RF_API rf_status rf_attractor_dimension(const rf_system* s, const double* v0, int n, double ell,
                                        const rf_attractor_options* o, rf_box_counting** out);
RF_API void rf_box_counting_destroy(rf_box_counting* b);
RF_API rf_status rf_box_counting_summarize(const rf_box_counting* b, rf_box_summary* out);
RF_API rf_status rf_box_counting_counts(const rf_box_counting* b, double* epsilons, uint64_t* counts,
                                        int capacity);
RF_API rf_status rf_box_counting_write_csv(const rf_box_counting* b, const char* path);

#ifdef __cplusplus
}
#endif

#endif
