// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0
//
// rfluid command line: eigen | simulate | bounds | covering | sweep | attractor-dim

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <openssl/evp.h>
#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "rfluid/rfluid.h"
#include "run_config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rfcli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

class IoFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Library failure carrying the status code.
class LibFailure : public std::runtime_error {
public:
  LibFailure(rf_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  rf_status status;
};

void ok(rf_status s, const char* what) {
  if (s != RF_OK)
    throw LibFailure(s, std::string(what) + ": " + rf_status_name(s) + " error: " + rf_last_error());
}

int exit_code(rf_status s) {
  switch (s) {
  case RF_ERR_CONTRACT:
  case RF_ERR_REGIME:
    return kExitConfig;
  case RF_ERR_IO:
    return kExitIo;
  default:
    return kExitNumerical;
  }
}

template <class T, void (*D)(T*)>
struct Deleter {
  void operator()(T* p) const { D(p); }
};
using BasisPtr = std::unique_ptr<rf_basis, Deleter<rf_basis, rf_basis_destroy>>;
using SystemPtr = std::unique_ptr<rf_system, Deleter<rf_system, rf_system_destroy>>;
using SimPtr = std::unique_ptr<rf_simulation, Deleter<rf_simulation, rf_simulation_destroy>>;
using ConstPtr = std::unique_ptr<rf_constants, Deleter<rf_constants, rf_constants_destroy>>;
using BoxPtr = std::unique_ptr<rf_box_counting, Deleter<rf_box_counting, rf_box_counting_destroy>>;

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw IoFailure("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) throw IoFailure("cannot rename " + tmp.string() + ": " + ec.message());
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Outputs are written into a staging directory and moved into place only
/// when the command succeeds; a failed run leaves no partial files.
class Staging {
public:
  explicit Staging(fs::path out) : out_(std::move(out)) {
    std::error_code ec;
    created_ = !fs::exists(out_, ec);
    fs::create_directories(out_, ec);
    if (ec) throw IoFailure("cannot create " + out_.string() + ": " + ec.message());
    dir_ = out_ / (".staging-" + std::to_string(::getpid()));
    fs::remove_all(dir_, ec);
    fs::create_directories(dir_, ec);
    if (ec) throw IoFailure("cannot create " + dir_.string() + ": " + ec.message());
  }
  ~Staging() {
    std::error_code ec;
    if (committed_) return;
    fs::remove_all(dir_, ec);
    if (created_) fs::remove(out_, ec); // only if still empty
  }
  fs::path path(const std::string& rel) const { return dir_ / rel; }
  void text(const std::string& rel, const std::string& content) {
    fs::create_directories(path(rel).parent_path());
    write_text(path(rel), content);
  }
  /// Moves every staged entry into the output directory.
  void commit() {
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(dir_)) {
      const fs::path dst = out_ / e.path().filename();
      fs::remove_all(dst, ec);
      fs::rename(e.path(), dst, ec);
      if (ec) throw IoFailure("cannot move " + e.path().string() + ": " + ec.message());
    }
    fs::remove(dir_, ec);
    committed_ = true;
  }
  /// Relative path -> SHA-256 of every staged regular file, sorted.
  json hashes() const {
    json h = json::object();
    for (const auto& e : fs::recursive_directory_iterator(dir_))
      if (e.is_regular_file())
        h[fs::relative(e.path(), dir_).generic_string()] = sha256_hex(read_text(e.path()));
    return h;
  }

private:
  fs::path out_;
  fs::path dir_;
  bool committed_ = false;
  bool created_ = false;
};

struct Context {
  std::string command;
  fs::path config_path;
  std::string config_text;
  RunConfig cfg;
  ConstPtr constants;
};

json params_json(const rf_fluid_params& p) {
  json j;
  j["nu1"] = p.nu1;
  j["nu2"] = p.nu2;
  j["r"] = p.r;
  j["q"] = p.q;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["c"] = std::vector<double>(p.c, p.c + 7);
  return j;
}

json constants_json(const rf_constants* c) {
  json j = json::object();
  for (int i = 0; i < rf_constants_count(); ++i) {
    const char* name = rf_constants_name(i);
    double v = 0.0;
    rf_provenance prov = RF_PROV_DEFAULT;
    ok(rf_constants_get(c, name, &v, &prov), "constants");
    j[name] = {{"value", v}, {"provenance", rf_provenance_name(prov)}};
  }
  return j;
}

json bound_json(const rf_fluid_params& p, const rf_bound_report& r) {
  json j;
  j["params"] = params_json(p);
  j["f_norm"] = r.f_norm;
  j["d"] = r.d;
  j["B0"] = r.B0;
  j["B0_overridden"] = r.B0_overridden != 0;
  j["Br"] = r.Br;
  j["Br_low_branch"] = r.Br_low_branch;
  j["Br_high_branch"] = r.Br_high_branch;
  j["ell"] = r.ell;
  j["L1"] = r.L1;
  j["M_r"] = r.M_r;
  j["U_const"] = r.U_const;
  j["W"] = r.W;
  j["Q"] = r.Q;
  j["L2"] = r.L2;
  j["dim_exponent"] = r.dim_exponent;
  j["dim_bound"] = r.dim_bound;
  j["branch"] = r.branch_high ? "r>3" : "r<=3";
  j["s_min"] = r.s_min;
  j["kappa1"] = r.kappa1;
  j["kappa2"] = r.kappa2;
  j["degenerate"] = r.degenerate != 0;
  return j;
}

rf_geometry geometry(const RunConfig& c) {
  return c.geometry == "shell3d" ? RF_GEOMETRY_SHELL3D : RF_GEOMETRY_DISK;
}

BasisPtr make_basis(const RunConfig& c) {
  rf_basis* b = nullptr;
  ok(rf_basis_create(geometry(c), c.N, &c.fluid, c.trial_degree, &b), "basis");
  return BasisPtr(b);
}

SystemPtr make_system(const RunConfig& c, const rf_basis* b) {
  rf_solver_options o;
  rf_solver_options_default(&o);
  rf_system* s = nullptr;
  ok(rf_system_create(b, &c.fluid, c.forcing_modes.data(), static_cast<int>(c.forcing_modes.size()), &o, &s),
     "system");
  return SystemPtr(s);
}

std::vector<double> initial_state(const RunConfig& c, int n) {
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  if (c.initial == "random") {
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> nd;
    for (auto& x : v) x = c.initial_scale * nd(rng);
  } else if (c.initial == "modes") {
    std::copy(c.initial_modes.begin(), c.initial_modes.end(), v.begin());
  }
  return v;
}

/// f_norm from the config, else the L2 norm of the forcing field.
double forcing_norm(const RunConfig& c) {
  if (c.f_norm) return *c.f_norm;
  if (c.forcing_modes.empty()) return 0.0;
  auto b = make_basis(c);
  auto s = make_system(c, b.get());
  return rf_system_forcing_l2(s.get());
}

rf_bound_report evaluate_bounds(const RunConfig& c, const rf_fluid_params& p, double f, const rf_constants* k) {
  rf_bound_report r{};
  ok(rf_bounds_evaluate(&p, f, k, c.B0_override.value_or(-1.0), c.d, &r), "bounds");
  return r;
}

std::string csv_bound_header() {
  size_t n = 0;
  ok(rf_bound_report_csv_header(nullptr, 0, &n), "csv");
  std::string s(n + 1, '\0');
  ok(rf_bound_report_csv_header(s.data(), s.size(), &n), "csv");
  s.resize(n);
  return s;
}

std::string csv_bound_row(const rf_fluid_params& p, const rf_bound_report& r) {
  size_t n = 0;
  ok(rf_bound_report_csv_row(&p, &r, nullptr, 0, &n), "csv");
  std::string s(n + 1, '\0');
  ok(rf_bound_report_csv_row(&p, &r, s.data(), s.size(), &n), "csv");
  s.resize(n);
  return s;
}

// ---- commands ----

json cmd_eigen(Context& ctx, Staging& st) {
  const auto& c = ctx.cfg;
  auto b = make_basis(c);
  const int n = rf_basis_size(b.get());
  std::vector<double> ev(static_cast<std::size_t>(n));
  ok(rf_basis_eigenvalues(b.get(), ev.data(), n), "eigenvalues");
  std::string csv = "j,lambda\n";
  for (int j = 0; j < n; ++j) csv += std::to_string(j + 1) + "," + format_number(ev[static_cast<std::size_t>(j)]) + "\n";
  st.text("eigenvalues.csv", csv);

  json a;
  a["geometry"] = c.geometry;
  a["N"] = n;
  a["trial_degree"] = rf_basis_trial_degree(b.get());
  rf_asymptotics as{};
  const rf_status s = rf_basis_asymptotics(b.get(), c.tol_exp, &as);
  if (s == RF_OK) {
    a["available"] = true;
    a["fitted_exponent"] = as.fitted_exponent;
    a["intercept"] = as.intercept;
    a["fit_residual"] = as.fit_residual;
    a["fit_points"] = as.fit_points;
    a["upper_exponent"] = as.upper_exponent;
    a["lower_exponent"] = as.lower_exponent;
    a["lower_ok"] = as.lower_ok != 0;
    a["window_ok"] = as.window_ok != 0;
  } else if (s == RF_ERR_CONTRACT) {
    a["available"] = false;
    a["reason"] = rf_last_error();
  } else {
    ok(s, "asymptotics");
  }
  if (n >= 2) {
    double korn = 0.0;
    ok(rf_basis_korn(b.get(), 2.0, c.seed, &korn), "korn");
    a["korn_q2"] = korn;
  }
  st.text("asymptotics.json", dump(a));
  if (c.write_basis) ok(rf_basis_write(b.get(), st.path("basis").c_str()), "write basis");
  std::cout << "eigen: N = " << n << ", lambda_1 = " << format_number(ev.front())
            << ", lambda_N = " << format_number(ev.back()) << "\n";
  return a;
}

json cmd_simulate(Context& ctx, Staging& st) {
  const auto& c = ctx.cfg;
  auto b = make_basis(c);
  auto sys = make_system(c, b.get());
  const int n = rf_system_size(sys.get());
  const auto v0 = initial_state(c, n);
  rf_simulation* raw = nullptr;
  ok(rf_simulate(sys.get(), v0.data(), n, 0.0, c.T, c.dt, &raw), "simulate");
  SimPtr sim(raw);
  ok(rf_simulation_write_trajectory_csv(sim.get(), st.path("trajectory.csv").c_str()), "trajectory csv");
  ok(rf_simulation_write_ledger_csv(sim.get(), st.path("ledger.csv").c_str()), "ledger csv");

  rf_simulation_summary s{};
  ok(rf_simulation_summarize(sim.get(), &s), "summary");
  json j;
  j["steps"] = s.steps;
  j["max_energy_violation"] = s.max_energy_violation;
  j["balance_ok"] = s.balance_ok != 0;
  j["initial_norm_H"] = s.initial_norm_H;
  j["final_norm_H"] = s.final_norm_H;
  j["max_norm_H"] = s.max_norm_H;
  j["norm_H_nonincreasing"] = s.norm_H_nonincreasing != 0;
  j["newton_iterations"] = s.total_newton;
  j["fixed_point_iterations"] = s.total_fixed_point;
  j["halvings"] = s.total_halvings;
  j["forcing_l2"] = rf_system_forcing_l2(sys.get());

  if (c.regularity) {
    rf_regularity r{};
    const rf_status rs = rf_simulation_regularity(sys.get(), sim.get(), &r);
    if (rs == RF_OK) {
      j["regularity"] = {{"branch", r.branch_high ? "r>3" : "r<=3"},
                         {"c8_hat", r.c8_hat},
                         {"branch_c_hat", r.branch_c_hat},
                         {"interp_c_hat", r.interp_c_hat},
                         {"mu", r.mu},
                         {"dt_v_sq_integral", r.dt_v_sq_integral},
                         {"U_min", r.U_min},
                         {"U_equiv_lower", r.U_equiv_lower},
                         {"U_equiv_upper", r.U_equiv_upper},
                         {"U_at_least_one", r.U_at_least_one != 0},
                         {"discrete_surrogate", r.discrete_surrogate != 0}};
    } else if (rs == RF_ERR_REGIME || rs == RF_ERR_DOMAIN) {
      j["regularity"] = {{"available", false}, {"reason", rf_last_error()}};
    } else {
      ok(rs, "regularity");
    }
  }
  if (c.pair_perturbation > 0.0) {
    // the basis is H-orthonormal, so this perturbation has H-norm pair_perturbation
    auto u0 = v0;
    u0[0] += c.pair_perturbation;
    rf_pair_report pr{};
    ok(rf_pair_divergence(sys.get(), u0.data(), v0.data(), n, c.T, c.dt, 1.1, &pr), "pair divergence");
    j["pair"] = {{"c7_hat", pr.c7_hat},           {"max_growth", pr.max_growth},
                 {"rate_integral", pr.rate_integral}, {"gap_integral", pr.gap_integral},
                 {"headroom", pr.headroom},       {"gronwall_ok", pr.gronwall_ok != 0}};
  }
  st.text("summary.json", dump(j));
  std::cout << "simulate: " << s.steps << " steps, |v|_H " << format_number(s.initial_norm_H) << " -> "
            << format_number(s.final_norm_H) << ", max energy violation "
            << format_number(s.max_energy_violation) << "\n";
  return j;
}

json cmd_bounds(Context& ctx, Staging& st) {
  const auto& c = ctx.cfg;
  const double f = forcing_norm(c);
  const auto r = evaluate_bounds(c, c.fluid, f, ctx.constants.get());
  json j = bound_json(c.fluid, r);
  j["constants"] = constants_json(ctx.constants.get());
  st.text("bounds.json", dump(j));
  st.text("bounds.csv", csv_bound_header() + csv_bound_row(c.fluid, r));
  if (r.degenerate)
    std::cout << "bounds: zero forcing, degenerate chain (B0 = 0)\n";
  else
    std::cout << "bounds: B0 = " << format_number(r.B0) << ", Br = " << format_number(r.Br)
              << ", ell = " << format_number(r.ell) << ", dim_bound = " << format_number(r.dim_bound) << "\n";
  return j;
}

json cmd_covering(Context& ctx, Staging& st) {
  const auto& c = ctx.cfg;
  rf_lambda_model model = RF_LAMBDA_TWO_THIRDS;
  if (c.lambda_model == "j^(1/2)") model = RF_LAMBDA_HALF;
  if (c.lambda_model == "measured") model = RF_LAMBDA_MEASURED;
  std::vector<double> measured;
  if (model == RF_LAMBDA_MEASURED) {
    auto b = make_basis(c);
    measured.resize(static_cast<std::size_t>(rf_basis_size(b.get())));
    ok(rf_basis_eigenvalues(b.get(), measured.data(), static_cast<int>(measured.size())), "eigenvalues");
  }
  json reports = json::array();
  std::string csv =
      "C1,C2,ell,r,b,lambda_model,enumerated_rank,j_max,window_truncated,rank_bound,lnK_bound,"
      "small_constants_warning\n";
  for (double C1 : c.C1)
    for (double C2 : c.C2)
      for (double ell : c.ell) {
        rf_covering_report r{};
        ok(rf_covering_evaluate(C1, C2, ell, c.r_cover, model, measured.data(),
                                static_cast<int>(measured.size()), ctx.constants.get(), &r),
           "covering");
        json j{{"C1", r.C1},
               {"C2", r.C2},
               {"ell", r.ell},
               {"r", r.r},
               {"b", r.b},
               {"lambda_model", rf_lambda_model_name(r.lambda_model)},
               {"enumerated_rank", r.enumerated_rank},
               {"j_max", r.j_max},
               {"window_truncated", r.window_truncated != 0},
               {"rank_bound", r.rank_bound},
               {"lnK_bound", r.lnK_bound},
               {"small_constants_warning", r.small_constants_warning != 0}};
        if (r.small_constants_warning)
          std::cerr << "warning: C1 = " << format_number(C1) << ", C2 = " << format_number(C2)
                    << " below 2; the projection estimate is stated for large constants\n";
        if (c.distance_samples > 0) {
          const int modes = model == RF_LAMBDA_MEASURED
                                ? std::min(c.distance_modes, static_cast<int>(measured.size()))
                                : c.distance_modes;
          rf_distance_report d{};
          ok(rf_projection_distance(model, measured.data(), static_cast<int>(measured.size()), modes,
                                    c.distance_K, ell, r.b, C1, C2, ctx.constants.get(), c.distance_samples,
                                    c.seed, &d),
             "projection distance");
          j["projection_distance"] = {{"max", d.max_distance},
                                      {"mean", d.mean_distance},
                                      {"bound", 1.0 / std::sqrt(8.0)},
                                      {"samples", d.samples},
                                      {"retained_pairs", d.retained_pairs},
                                      {"total_pairs", d.total_pairs},
                                      {"span_relative", true}};
        }
        csv += format_number(r.C1) + "," + format_number(r.C2) + "," + format_number(r.ell) + "," +
               format_number(r.r) + "," + format_number(r.b) + "," + rf_lambda_model_name(r.lambda_model) + "," +
               std::to_string(r.enumerated_rank) + "," + std::to_string(r.j_max) + "," +
               (r.window_truncated ? "true" : "false") + "," + format_number(r.rank_bound) + "," +
               format_number(r.lnK_bound) + "," + (r.small_constants_warning ? "true" : "false") + "\n";
        std::cout << "covering: C1 = " << format_number(C1) << ", C2 = " << format_number(C2)
                  << ", ell = " << format_number(ell) << ": rank " << r.enumerated_rank << " (bound "
                  << format_number(r.rank_bound) << ")\n";
        reports.push_back(std::move(j));
      }
  json out{{"reports", reports}, {"constants", constants_json(ctx.constants.get())}};
  st.text("covering.json", dump(out));
  st.text("covering.csv", csv);
  return out;
}

json cmd_sweep(Context& ctx, Staging& st) {
  const auto& c = ctx.cfg;
  const std::size_t P = c.sweep_values.size();
  const double f_base = c.sweep_parameter == "f_norm" ? 0.0 : forcing_norm(c);
  std::vector<std::string> rows(P);
  std::vector<rf_status> status(P, RF_OK);
  std::vector<std::string> errors(P);
  std::atomic<std::size_t> next{0};
  std::mutex io_mutex;
  std::string io_error;

  auto worker = [&] {
    for (std::size_t i = next++; i < P; i = next++) {
      rf_fluid_params p = c.fluid;
      double f = f_base;
      const double v = c.sweep_values[i];
      const std::string& k = c.sweep_parameter;
      if (k == "f_norm") f = v;
      else if (k == "nu1") p.nu1 = v;
      else if (k == "nu2") p.nu2 = v;
      else if (k == "r") p.r = v;
      else if (k == "q") p.q = v;
      else if (k == "alpha") p.alpha = v;
      else if (k == "beta") p.beta = v;
      rf_bound_report r{};
      const rf_status s = rf_bounds_evaluate(&p, f, ctx.constants.get(), c.B0_override.value_or(-1.0), c.d, &r);
      if (s != RF_OK) {
        status[i] = s;
        errors[i] = rf_last_error();
        continue;
      }
      try {
        char name[32];
        std::snprintf(name, sizeof name, "points/point_%04zu.json", i);
        json j = bound_json(p, r);
        j["index"] = i;
        j["sweep_parameter"] = k;
        j["sweep_value"] = v;
        st.text(name, dump(j));
        rows[i] = csv_bound_row(p, r);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(io_mutex);
        io_error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const int W = std::max(1, std::min<int>(c.workers, static_cast<int>(P)));
  for (int w = 0; w < W; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (!io_error.empty()) throw IoFailure(io_error);
  for (std::size_t i = 0; i < P; ++i)
    if (status[i] != RF_OK)
      throw LibFailure(status[i], "sweep point " + std::to_string(i) + " (" + c.sweep_parameter + " = " +
                                      format_number(c.sweep_values[i]) + "): " + rf_status_name(status[i]) +
                                      " error: " + errors[i]);
  // merge in index order
  std::string csv = "index,sweep_value," + csv_bound_header();
  for (std::size_t i = 0; i < P; ++i) csv += std::to_string(i) + "," + format_number(c.sweep_values[i]) + "," + rows[i];
  st.text("sweep.csv", csv);
  std::cout << "sweep: " << P << " points over " << c.sweep_parameter << "\n";
  return json{{"points", P}, {"parameter", c.sweep_parameter}, {"workers", W}};
}

json cmd_attractor(Context& ctx, Staging& st) {
  const auto& c = ctx.cfg;
  auto b = make_basis(c);
  auto sys = make_system(c, b.get());
  const int n = rf_system_size(sys.get());
  if (c.forcing_modes.empty()) std::cerr << "warning: unforced run, the attractor is the rest state\n";

  const double f = c.f_norm.value_or(rf_system_forcing_l2(sys.get()));
  json bound = nullptr;
  double dim_bound = NAN;
  double chain_ell = NAN;
  rf_bound_report br{};
  const rf_status bs =
      rf_bounds_evaluate(&c.fluid, f, ctx.constants.get(), c.B0_override.value_or(-1.0), c.d, &br);
  if (bs == RF_OK && !br.degenerate) {
    dim_bound = br.dim_bound;
    chain_ell = br.ell;
    bound = bound_json(c.fluid, br);
  } else if (bs == RF_OK) {
    bound = {{"degenerate", true}};
  } else if (bs == RF_ERR_DOMAIN || bs == RF_ERR_REGIME) {
    bound = {{"available", false}, {"reason", rf_last_error()}};
  } else {
    ok(bs, "bounds");
  }
  double ell = 0.0;
  if (c.attractor_ell)
    ell = *c.attractor_ell;
  else if (std::isfinite(chain_ell))
    ell = chain_ell;
  else
    throw ConfigError("attractor.ell: required when the bound chain gives no segment length");

  const auto v0 = initial_state(c, n);
  rf_attractor_options o;
  rf_attractor_options_default(&o);
  o.burn_in = c.burn_in;
  o.samples = c.samples;
  o.K = c.K;
  o.steps_per_segment = c.M;
  o.epsilons = c.epsilons.empty() ? nullptr : c.epsilons.data();
  o.n_epsilons = static_cast<int>(c.epsilons.size());
  rf_box_counting* raw = nullptr;
  ok(rf_attractor_dimension(sys.get(), v0.data(), n, ell, &o, &raw), "attractor");
  BoxPtr box(raw);
  ok(rf_box_counting_write_csv(box.get(), st.path("box_counts.csv").c_str()), "box counts");
  rf_box_summary s{};
  ok(rf_box_counting_summarize(box.get(), &s), "box summary");

  json j;
  j["slope"] = s.slope;
  j["intercept"] = s.intercept;
  j["fit_residual"] = s.fit_residual;
  j["diameter"] = s.diameter;
  j["degenerate"] = s.degenerate != 0;
  j["ell"] = ell;
  j["segments"] = s.segments;
  j["burn_in"] = c.burn_in;
  j["bound_chain"] = bound;
  if (std::isfinite(dim_bound)) {
    j["dim_bound"] = dim_bound;
    j["slope_within_bound"] = std::isfinite(s.slope) && s.slope >= 0.0 && s.slope <= dim_bound;
  } else {
    j["dim_bound"] = nullptr;
  }
  st.text("attractor.json", dump(j));
  std::cout << "attractor-dim: box-counting slope = " << format_number(s.slope) << ", dim_bound = "
            << (std::isfinite(dim_bound) ? format_number(dim_bound) : std::string("n/a")) << "\n";
  return j;
}

int run(const std::string& command, const std::string& config, const std::optional<std::string>& out,
        const std::optional<std::uint64_t>& seed, const std::optional<int>& workers) {
  const auto t0 = std::chrono::steady_clock::now();
  Context ctx;
  ctx.command = command;
  ctx.config_path = config;
  ctx.config_text = read_text(config);
  ctx.cfg = parse_config(ctx.config_text);
  if (out) ctx.cfg.out = *out;
  if (seed) ctx.cfg.seed = *seed;
  if (workers) ctx.cfg.workers = *workers;
  validate_config(ctx.cfg, command);
  ok(rf_fluid_params_validate(&ctx.cfg.fluid), "fluid");

  rf_constants* k = nullptr;
  ok(rf_constants_create(&k), "constants");
  ctx.constants.reset(k);
  for (const auto& [name, v] : ctx.cfg.constants)
    ok(rf_constants_set(k, name.c_str(), v, RF_PROV_CONFIG), ("constants." + name).c_str());

  Staging st(ctx.cfg.out);
  json result;
  if (command == "eigen") result = cmd_eigen(ctx, st);
  else if (command == "simulate") result = cmd_simulate(ctx, st);
  else if (command == "bounds") result = cmd_bounds(ctx, st);
  else if (command == "covering") result = cmd_covering(ctx, st);
  else if (command == "sweep") result = cmd_sweep(ctx, st);
  else if (command == "attractor-dim") result = cmd_attractor(ctx, st);
  st.text("config.ini", emit_config(ctx.cfg));

  json m;
  m["command"] = command;
  m["config_path"] = fs::absolute(ctx.config_path).string();
  m["config_sha256"] = sha256_hex(ctx.config_text);
  m["seed"] = ctx.cfg.seed;
  m["workers"] = ctx.cfg.workers;
  m["version"] = rf_version();
  m["outputs"] = st.hashes();
  m["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  st.text("manifest.json", dump(m));
  st.commit();
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"rfluid: spectral Galerkin runs, bound chains and covering counts"};
  app.require_subcommand(1, 1);
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  for (const char* name : {"eigen", "simulate", "bounds", "covering", "sweep", "attractor-dim"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "INI configuration file")->required();
    sub->add_option("--out", out, "output directory (overrides run.out)");
    sub->add_option("--seed", seed, "random seed (overrides run.seed)");
    sub->add_option("--workers", workers, "worker threads (overrides run.workers)")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, config, out, seed, workers);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const LibFailure& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.status);
  } catch (const IoFailure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
