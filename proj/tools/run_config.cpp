// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace rfcli {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& raw, const std::string& field) {
  const std::string s = trim(raw);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != end || !std::isfinite(v))
    throw ConfigError(field + ": expected a finite number, got '" + s + "'");
  return v;
}

template <typename T = long long>
T to_integer(const std::string& raw, const std::string& field) {
  const std::string s = trim(raw);
  T v = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != end)
    throw ConfigError(field + ": expected an integer, got '" + s + "'");
  return v;
}

bool to_bool(const std::string& raw, const std::string& field) {
  const std::string s = trim(raw);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(field + ": expected true or false, got '" + s + "'");
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_number(v[i]);
  }
  return s;
}

const char* kFluidC[7] = {"c1", "c2", "c3", "c4", "c5", "c6", "c7"};

bool same(const rf_fluid_params& a, const rf_fluid_params& b) {
  if (a.nu1 != b.nu1 || a.nu2 != b.nu2 || a.r != b.r || a.q != b.q || a.alpha != b.alpha || a.beta != b.beta)
    return false;
  return std::equal(a.c, a.c + 7, b.c);
}

} // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_list(const std::string& s, const std::string& field) {
  std::vector<double> out;
  if (trim(s).empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(item, field));
  return out;
}

RunConfig::RunConfig() { rf_fluid_params_default(&fluid); }

bool RunConfig::operator==(const RunConfig& o) const {
  return geometry == o.geometry && N == o.N && K == o.K && M == o.M && dt == o.dt && T == o.T &&
         seed == o.seed && out == o.out && workers == o.workers && same(fluid, o.fluid) &&
         constants == o.constants && forcing_modes == o.forcing_modes && f_norm == o.f_norm &&
         trial_degree == o.trial_degree && tol_exp == o.tol_exp && write_basis == o.write_basis &&
         initial == o.initial && initial_modes == o.initial_modes && initial_scale == o.initial_scale &&
         regularity == o.regularity && pair_perturbation == o.pair_perturbation &&
         B0_override == o.B0_override && d == o.d && C1 == o.C1 && C2 == o.C2 && ell == o.ell &&
         r_cover == o.r_cover && lambda_model == o.lambda_model && distance_samples == o.distance_samples &&
         distance_modes == o.distance_modes && distance_K == o.distance_K &&
         sweep_parameter == o.sweep_parameter && sweep_values == o.sweep_values &&
         attractor_ell == o.attractor_ell && burn_in == o.burn_in && samples == o.samples && epsilons == o.epsilons;
}

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
  }

  RunConfig c;
  std::set<std::string> seen;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError(section + ": keys must live in a [section]");
    for (const auto& [key, node] : body) {
      const std::string field = section + "." + key;
      const std::string v = node.data();
      auto dbl = [&] { return to_double(v, field); };
      auto intg = [&] {
        const long long x = to_integer(v, field);
        if (x < INT32_MIN || x > INT32_MAX) throw ConfigError(field + ": out of range");
        return static_cast<int>(x);
      };
      auto list = [&] { return parse_list(v, field); };
      seen.insert(field);

      if (section == "run") {
        if (key == "geometry") c.geometry = trim(v);
        else if (key == "N") c.N = intg();
        else if (key == "K") c.K = intg();
        else if (key == "M") c.M = intg();
        else if (key == "dt") c.dt = dbl();
        else if (key == "T") c.T = dbl();
        else if (key == "seed") c.seed = to_integer<std::uint64_t>(v, field);
        else if (key == "out") c.out = trim(v);
        else if (key == "workers") c.workers = intg();
        else throw ConfigError(field + ": unknown key");
      } else if (section == "fluid") {
        if (key == "nu1") c.fluid.nu1 = dbl();
        else if (key == "nu2") c.fluid.nu2 = dbl();
        else if (key == "r") c.fluid.r = dbl();
        else if (key == "q") c.fluid.q = dbl();
        else if (key == "alpha") c.fluid.alpha = dbl();
        else if (key == "beta") c.fluid.beta = dbl();
        else {
          const auto* it = std::find_if(std::begin(kFluidC), std::end(kFluidC),
                                        [&](const char* n) { return key == n; });
          if (it == std::end(kFluidC)) throw ConfigError(field + ": unknown key");
          c.fluid.c[it - std::begin(kFluidC)] = dbl();
        }
      } else if (section == "constants") {
        bool known = false;
        for (int i = 0; i < rf_constants_count(); ++i) known = known || key == rf_constants_name(i);
        if (!known) throw ConfigError(field + ": unknown constant");
        c.constants[key] = dbl();
      } else if (section == "forcing") {
        if (key == "modes") c.forcing_modes = list();
        else if (key == "f_norm") c.f_norm = dbl();
        else throw ConfigError(field + ": unknown key");
      } else if (section == "eigen") {
        if (key == "trial_degree") c.trial_degree = intg();
        else if (key == "tol_exp") c.tol_exp = dbl();
        else if (key == "write_basis") c.write_basis = to_bool(v, field);
        else throw ConfigError(field + ": unknown key");
      } else if (section == "simulate") {
        if (key == "initial") c.initial = trim(v);
        else if (key == "initial_modes") c.initial_modes = list();
        else if (key == "initial_scale") c.initial_scale = dbl();
        else if (key == "regularity") c.regularity = to_bool(v, field);
        else if (key == "pair_perturbation") c.pair_perturbation = dbl();
        else throw ConfigError(field + ": unknown key");
      } else if (section == "bounds") {
        if (key == "B0_override") c.B0_override = dbl();
        else if (key == "d") c.d = intg();
        else throw ConfigError(field + ": unknown key");
      } else if (section == "covering") {
        if (key == "C1") c.C1 = list();
        else if (key == "C2") c.C2 = list();
        else if (key == "ell") c.ell = list();
        else if (key == "r") c.r_cover = dbl();
        else if (key == "lambda_model") c.lambda_model = trim(v);
        else if (key == "distance_samples") c.distance_samples = intg();
        else if (key == "distance_modes") c.distance_modes = intg();
        else if (key == "distance_K") c.distance_K = intg();
        else throw ConfigError(field + ": unknown key");
      } else if (section == "sweep") {
        if (key == "parameter") c.sweep_parameter = trim(v);
        else if (key == "values") c.sweep_values = list();
        else throw ConfigError(field + ": unknown key");
      } else if (section == "attractor") {
        if (key == "ell") c.attractor_ell = dbl();
        else if (key == "burn_in") c.burn_in = intg();
        else if (key == "samples") c.samples = intg();
        else if (key == "epsilons") c.epsilons = list();
        else throw ConfigError(field + ": unknown key");
      } else {
        throw ConfigError("[" + section + "]: unknown section");
      }
    }
  }
  return c;
}

std::string emit_config(const RunConfig& c) {
  std::ostringstream o;
  o << "[run]\n"
    << "geometry = " << c.geometry << "\n"
    << "N = " << c.N << "\nK = " << c.K << "\nM = " << c.M << "\n"
    << "dt = " << format_number(c.dt) << "\nT = " << format_number(c.T) << "\n"
    << "seed = " << c.seed << "\nout = " << c.out << "\nworkers = " << c.workers << "\n\n";
  o << "[fluid]\n"
    << "nu1 = " << format_number(c.fluid.nu1) << "\nnu2 = " << format_number(c.fluid.nu2) << "\n"
    << "r = " << format_number(c.fluid.r) << "\nq = " << format_number(c.fluid.q) << "\n"
    << "alpha = " << format_number(c.fluid.alpha) << "\nbeta = " << format_number(c.fluid.beta) << "\n";
  for (int i = 0; i < 7; ++i) o << kFluidC[i] << " = " << format_number(c.fluid.c[i]) << "\n";
  o << "\n[constants]\n";
  for (const auto& [k, v] : c.constants) o << k << " = " << format_number(v) << "\n";
  o << "\n[forcing]\nmodes = " << join(c.forcing_modes) << "\n";
  if (c.f_norm) o << "f_norm = " << format_number(*c.f_norm) << "\n";
  o << "\n[eigen]\ntrial_degree = " << c.trial_degree << "\ntol_exp = " << format_number(c.tol_exp)
    << "\nwrite_basis = " << (c.write_basis ? "true" : "false") << "\n";
  o << "\n[simulate]\ninitial = " << c.initial << "\ninitial_modes = " << join(c.initial_modes)
    << "\ninitial_scale = " << format_number(c.initial_scale)
    << "\nregularity = " << (c.regularity ? "true" : "false")
    << "\npair_perturbation = " << format_number(c.pair_perturbation) << "\n";
  o << "\n[bounds]\n";
  if (c.B0_override) o << "B0_override = " << format_number(*c.B0_override) << "\n";
  o << "d = " << c.d << "\n";
  o << "\n[covering]\nC1 = " << join(c.C1) << "\nC2 = " << join(c.C2) << "\nell = " << join(c.ell)
    << "\nr = " << format_number(c.r_cover) << "\nlambda_model = " << c.lambda_model
    << "\ndistance_samples = " << c.distance_samples << "\ndistance_modes = " << c.distance_modes
    << "\ndistance_K = " << c.distance_K << "\n";
  o << "\n[sweep]\nparameter = " << c.sweep_parameter << "\nvalues = " << join(c.sweep_values) << "\n";
  o << "\n[attractor]\n";
  if (c.attractor_ell) o << "ell = " << format_number(*c.attractor_ell) << "\n";
  o << "burn_in = " << c.burn_in << "\nsamples = " << c.samples << "\nepsilons = " << join(c.epsilons)
    << "\n";
  return o.str();
}

namespace {

void check(bool ok, const std::string& field, const std::string& msg) {
  if (!ok) throw ConfigError(field + ": " + msg);
}

void check_all(const std::vector<double>& v, bool (*pred)(double), const std::string& field,
               const std::string& msg) {
  for (double x : v) check(pred(x), field, msg);
}

} // namespace

void validate_config(const RunConfig& c, const std::string& command) {
  check(c.geometry == "disk" || c.geometry == "shell3d", "run.geometry", "must be disk or shell3d");
  check(c.N >= 1, "run.N", "must be >= 1");
  check(c.K >= 0, "run.K", "must be >= 0");
  check(c.M >= 1 && 2 * c.K <= c.M, "run.M", "must be >= 1 and >= 2K");
  check(c.dt > 0.0, "run.dt", "must be > 0");
  check(c.T > 0.0, "run.T", "must be > 0");
  check(c.workers >= 1, "run.workers", "must be >= 1");
  check(!c.out.empty(), "run.out", "must not be empty");
  check(c.fluid.nu1 > 0.0, "fluid.nu1", "must be > 0");
  check(c.fluid.nu2 >= 0.0, "fluid.nu2", "must be >= 0");
  check(c.fluid.r >= 2.0, "fluid.r", "must be >= 2");
  check(c.fluid.q >= 2.0, "fluid.q", "must be >= 2");
  check(c.fluid.alpha >= 0.0, "fluid.alpha", "must be >= 0");
  check(c.fluid.beta > 0.0, "fluid.beta", "must be > 0");
  for (const auto& [k, v] : c.constants) check(v > 0.0, "constants." + k, "must be > 0");
  check(static_cast<int>(c.forcing_modes.size()) <= c.N, "forcing.modes", "more entries than run.N");
  if (c.f_norm) check(*c.f_norm >= 0.0, "forcing.f_norm", "must be >= 0");
  check(c.trial_degree >= 0, "eigen.trial_degree", "must be >= 0");
  check(c.tol_exp > 0.0, "eigen.tol_exp", "must be > 0");
  check(c.initial == "zero" || c.initial == "random" || c.initial == "modes", "simulate.initial",
        "must be zero, random or modes");
  if (c.initial == "modes")
    check(static_cast<int>(c.initial_modes.size()) <= c.N, "simulate.initial_modes", "more entries than run.N");
  check(c.initial_scale >= 0.0, "simulate.initial_scale", "must be >= 0");
  check(c.pair_perturbation >= 0.0, "simulate.pair_perturbation", "must be >= 0");
  if (c.B0_override) check(*c.B0_override >= 0.0, "bounds.B0_override", "must be >= 0");
  check(c.d == 2 || c.d == 3, "bounds.d", "must be 2 or 3");
  if (command == "covering") {
    check(!c.C1.empty() && !c.C2.empty() && !c.ell.empty(), "covering", "C1, C2 and ell need values");
    check_all(c.C1, [](double x) { return x >= 1.0; }, "covering.C1", "values must be >= 1");
    check_all(c.C2, [](double x) { return x >= 1.0; }, "covering.C2", "values must be >= 1");
    check_all(c.ell, [](double x) { return x > 0.0; }, "covering.ell", "values must be > 0");
    check(c.r_cover >= 2.0, "covering.r", "must be >= 2");
    check(c.lambda_model == "measured" || c.lambda_model == "j^(2/3)" || c.lambda_model == "j^(1/2)",
          "covering.lambda_model", "must be measured, j^(2/3) or j^(1/2)");
    check(c.distance_samples >= 0, "covering.distance_samples", "must be >= 0");
    check(c.distance_modes >= 1, "covering.distance_modes", "must be >= 1");
    check(c.distance_K >= 0, "covering.distance_K", "must be >= 0");
  }
  if (command == "sweep") {
    static const std::set<std::string> params{"f_norm", "nu1", "nu2", "r", "q", "alpha", "beta"};
    check(params.count(c.sweep_parameter) == 1, "sweep.parameter",
          "must be one of f_norm, nu1, nu2, r, q, alpha, beta");
    check(!c.sweep_values.empty(), "sweep.values", "needs at least one value");
  }
  if (command == "attractor-dim") {
    if (c.attractor_ell) check(*c.attractor_ell > 0.0, "attractor.ell", "must be > 0");
    check(c.burn_in >= 0, "attractor.burn_in", "must be >= 0");
    check(c.samples >= 50, "attractor.samples", "must be >= 50");
    if (!c.epsilons.empty()) {
      check(c.epsilons.size() >= 4, "attractor.epsilons", "needs at least 4 values");
      check_all(c.epsilons, [](double x) { return x > 0.0; }, "attractor.epsilons", "values must be > 0");
      const auto [lo, hi] = std::minmax_element(c.epsilons.begin(), c.epsilons.end());
      check(*hi >= 10.0 * *lo, "attractor.epsilons", "must span at least a decade");
    }
  }
}

} // namespace rfcli
