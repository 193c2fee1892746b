// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#include "rfluid/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "rfluid/error.hpp"
#include "rfluid/io.hpp"

namespace rfluid {

std::string to_string(Provenance p) {
  switch (p) {
  case Provenance::default_value:
    return "default";
  case Provenance::config:
    return "config";
  case Provenance::estimated:
    return "estimated";
  }
  return "default";
}

const std::vector<std::string>& ConstantsLedger::names() {
  static const std::vector<std::string> n{"absorb_c1", "br_c12",   "lip_c1",   "lip_c2",
                                          "lip_c4",    "lip_c5",   "dim_c19",  "cover_c3",
                                          "cover_c4",  "rank_c",   "lnk_c7",   "korn",
                                          "gn"};
  return n;
}

bool ConstantsLedger::known(const std::string& name) {
  const auto& n = names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

ConstantsLedger::ConstantsLedger() {
  for (const auto& n : names()) entries_[n] = Entry{};
}

void ConstantsLedger::set(const std::string& name, double value, Provenance prov) {
  require(known(name), "unknown ledger constant '" + name + "'");
  require(value > 0.0 && std::isfinite(value), "ledger constant '" + name + "' must be > 0");
  entries_[name] = Entry{value, prov};
}

double ConstantsLedger::get(const std::string& name) const { return entry(name).value; }

const ConstantsLedger::Entry& ConstantsLedger::entry(const std::string& name) const {
  const auto it = entries_.find(name);
  require(it != entries_.end(), "unknown ledger constant '" + name + "'");
  return it->second;
}

double absorbing_radius_B0(const FluidParams& p, double f_norm, const ConstantsLedger& L) {
  require(f_norm >= 0.0 && std::isfinite(f_norm), "forcing norm must be >= 0");
  const double k1 = std::min(p.nu1, p.alpha);
  const double k2 = std::min(p.nu2, p.alpha);
  if (!(k1 > 0.0)) throw DomainError("kappa1 = min(nu1, alpha) is zero; B0 is undefined");
  if (!(k2 > 0.0)) throw DomainError("kappa2 = min(nu2, alpha) is zero; B0 is undefined");
  const double s = std::min(p.r, p.q);
  const double a = f_norm / k1;
  const double b = std::pow(f_norm / k2, 1.0 / (s - 1.0));
  return L.get("absorb_c1") * std::min(a, b);
}

double radius_Br_low(double B0, double r, const ConstantsLedger& L) {
  if (!(r > 12.0 / 5.0)) throw RegimeError("B_r needs r > 12/5");
  const double e = 5.0 * (5.0 * r - 6.0) / (2.0 * (5.0 * r - 11.0));
  return L.get("br_c12") * std::pow(B0, e);
}

double radius_Br_high(double B0, const ConstantsLedger& L) { return L.get("br_c12") * std::pow(B0, 5.0); }

double radius_Br(double B0, const FluidParams& p, const ConstantsLedger& L) {
  if (!(p.r > 12.0 / 5.0)) throw RegimeError("B_r needs r > 12/5");
  require(B0 > 0.0, "B_r needs B0 > 0");
  return p.r <= 3.0 ? radius_Br_low(B0, p.r, L) : radius_Br_high(B0, L);
}

double trajectory_length_ell(double Br, const FluidParams& p) {
  require(Br > 0.0, "ell needs Br > 0");
  require(p.r > 1.5, "ell needs r > 3/2");
  const double d = 2.0 * p.r - 3.0;
  return 1.0 / (std::pow(p.nu1, -3.0 / d) * std::pow(Br, 2.0 * p.r / d) + 1.0);
}

LipschitzConstants lipschitz_constants(double ell, double Br, double B0, const FluidParams& p,
                                       const ConstantsLedger& L) {
  require(ell > 0.0 && Br > 0.0 && B0 > 0.0, "Lipschitz constants need positive inputs");
  const double r = p.r;
  if (!(r > 12.0 / 5.0)) throw RegimeError("Lipschitz constants need r > 12/5");
  LipschitzConstants c;
  c.L1 = L.get("lip_c1") / std::sqrt(p.nu1 * ell);
  c.M_r = std::sqrt(p.nu2 / p.nu1) * std::pow(Br, 0.5 * (r - 2.0));
  c.U_const = L.get("lip_c2") * p.nu1 * c.L1 * (1.0 + c.M_r);
  if (r <= 3.0)
    c.W = L.get("lip_c4") * std::pow(B0, (5.0 * r - 12.0) / (5.0 * r - 6.0)) * std::pow(Br, 6.0 / (5.0 * r - 6.0));
  else
    c.W = L.get("lip_c4") * std::pow(B0, (r - 2.0) / r) * std::pow(Br, 2.0 / r);
  c.Q = p.alpha * L.get("lip_c5");
  c.L2 = c.U_const + c.W + c.Q;
  return c;
}

double dimension_exponent(double r) { return 2.0 * (11.0 * r - 6.0) / (3.0 * r); }

double dimension_bound(double L1, double L2, double ell, const FluidParams& p, const ConstantsLedger& L) {
  if (!(L1 > 1.0)) throw DomainError("dimension bound needs L1 > 1 (ln L1 must be positive)");
  const double L1sq = L1 * L1;
  return L.get("dim_c19") * (L1sq * L1sq + ell * std::pow(L1, dimension_exponent(p.r)) * L2) * std::log(L1);
}

BoundReport full_pipeline(const FluidParams& p, double f_norm, const ConstantsLedger& L,
                          std::optional<double> B0_override, int d) {
  p.validate();
  BoundReport rep;
  rep.params = p;
  rep.f_norm = f_norm;
  rep.d = d;
  rep.s_min = std::min(p.r, p.q);
  rep.kappa1 = std::min(p.nu1, p.alpha);
  rep.kappa2 = std::min(p.nu2, p.alpha);
  rep.branch = p.r <= 3.0 ? "r<=3" : "r>3";
  rep.dim_exponent = dimension_exponent(p.r);
  if (B0_override) {
    require(*B0_override >= 0.0 && std::isfinite(*B0_override), "B0 override must be >= 0");
    rep.B0 = *B0_override;
    rep.B0_overridden = true;
  } else {
    rep.B0 = absorbing_radius_B0(p, f_norm, L);
  }
  if (rep.B0 == 0.0) {
    rep.degenerate = true;
    return rep;
  }
  rep.Br = radius_Br(rep.B0, p, L);
  rep.Br_low_branch = radius_Br_low(rep.B0, p.r, L);
  rep.Br_high_branch = radius_Br_high(rep.B0, L);
  rep.ell = trajectory_length_ell(rep.Br, p);
  rep.lip = lipschitz_constants(rep.ell, rep.Br, rep.B0, p, L);
  rep.dim_bound = dimension_bound(rep.lip.L1, rep.lip.L2, rep.ell, p, L);
  return rep;
}

std::vector<std::string> bound_report_columns() {
  return {"nu1", "nu2",   "r",  "q",   "alpha",   "beta", "f_norm", "d",  "B0",        "Br",
          "Br_low_branch", "Br_high_branch", "ell", "L1", "M_r", "U_const", "W", "Q", "L2",
          "dim_exponent",  "dim_bound",      "branch", "s_min", "kappa1", "kappa2", "degenerate"};
}

std::vector<std::string> bound_report_row(const BoundReport& r) {
  using io::format_double;
  const auto& p = r.params;
  return {format_double(p.nu1),         format_double(p.nu2),
          format_double(p.r),           format_double(p.q),
          format_double(p.alpha),       format_double(p.beta),
          format_double(r.f_norm),      std::to_string(r.d),
          format_double(r.B0),          format_double(r.Br),
          format_double(r.Br_low_branch), format_double(r.Br_high_branch),
          format_double(r.ell),         format_double(r.lip.L1),
          format_double(r.lip.M_r),     format_double(r.lip.U_const),
          format_double(r.lip.W),       format_double(r.lip.Q),
          format_double(r.lip.L2),      format_double(r.dim_exponent),
          format_double(r.dim_bound),   r.branch,
          format_double(r.s_min),       format_double(r.kappa1),
          format_double(r.kappa2),      r.degenerate ? "true" : "false"};
}

} // namespace rfluid
