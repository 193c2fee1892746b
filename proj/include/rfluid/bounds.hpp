// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rfluid/params.hpp"

namespace rfluid {

enum class Provenance { default_value, config, estimated };
std::string to_string(Provenance p);

/// Named positive constants of the bound chain. Every entry defaults to 1.
class ConstantsLedger {
public:
  struct Entry {
    double value = 1.0;
    Provenance provenance = Provenance::default_value;
  };

  ConstantsLedger();

  /// Names known to the ledger, in a fixed order.
  static const std::vector<std::string>& names();
  static bool known(const std::string& name);

  /// Throws ContractError for unknown names or values that are not > 0.
  void set(const std::string& name, double value, Provenance prov = Provenance::config);
  double get(const std::string& name) const;
  const Entry& entry(const std::string& name) const;
  const std::map<std::string, Entry>& entries() const { return entries_; }

private:
  std::map<std::string, Entry> entries_;
};

/// c1 min{f / kappa1, (f / kappa2)^{1/(s-1)}}, kappa1 = min(nu1, alpha),
/// kappa2 = min(nu2, alpha), s = min(r, q). DomainError when a kappa is 0.
double absorbing_radius_B0(const FluidParams& p, double f_norm, const ConstantsLedger& L);
/// Branch formulas for r in (12/5, 3] and r > 3; RegimeError for r <= 12/5.
double radius_Br(double B0, const FluidParams& p, const ConstantsLedger& L);
double radius_Br_low(double B0, double r, const ConstantsLedger& L);
double radius_Br_high(double B0, const ConstantsLedger& L);
/// [nu1^{-3/(2r-3)} Br^{2r/(2r-3)} + 1]^{-1}.
double trajectory_length_ell(double Br, const FluidParams& p);

struct LipschitzConstants {
  double L1 = 0.0;
  double M_r = 0.0;
  double U_const = 0.0;
  double W = 0.0;
  double Q = 0.0;
  double L2 = 0.0;
};

LipschitzConstants lipschitz_constants(double ell, double Br, double B0, const FluidParams& p,
                                       const ConstantsLedger& L);
/// 2(11r - 6) / (3r).
double dimension_exponent(double r);
/// c19 (L1^4 + ell L1^{e} L2) ln L1; DomainError for L1 <= 1.
double dimension_bound(double L1, double L2, double ell, const FluidParams& p, const ConstantsLedger& L);

struct BoundReport {
  FluidParams params;
  double f_norm = 0.0;
  int d = 2;
  double B0 = 0.0;
  bool B0_overridden = false;
  double Br = 0.0;
  double Br_low_branch = 0.0;  ///< r <= 3 formula evaluated at r (0 when r <= 12/5)
  double Br_high_branch = 0.0; ///< r > 3 formula
  double ell = 0.0;
  LipschitzConstants lip;
  double dim_exponent = 0.0;
  double dim_bound = 0.0;
  std::string branch;  ///< "r<=3" or "r>3"
  double s_min = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  bool degenerate = false; ///< zero forcing: zero attractor radius, no bound evaluated
};

/// Evaluates the whole chain. An empirical B0 may replace the formula value.
BoundReport full_pipeline(const FluidParams& p, double f_norm, const ConstantsLedger& L,
                          std::optional<double> B0_override = std::nullopt, int d = 2);

/// Column names and one formatted row for sweep CSV files.
std::vector<std::string> bound_report_columns();
std::vector<std::string> bound_report_row(const BoundReport& r);

} // namespace rfluid
