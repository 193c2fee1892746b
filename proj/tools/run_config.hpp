// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rfluid/rfluid.h"

namespace rfcli {

/// Invalid or inconsistent configuration; the message names the field.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  // [run]
  std::string geometry = "disk";
  int N = 16;
  int K = 4;  ///< temporal modes of a segment
  int M = 32; ///< time steps per segment
  double dt = 1e-3;
  double T = 0.2;
  std::uint64_t seed = 1;
  std::string out = "rfluid_out";
  int workers = 1;

  // [fluid]
  rf_fluid_params fluid{};

  // [constants]: only overridden entries
  std::map<std::string, double> constants;

  // [forcing]
  std::vector<double> forcing_modes;
  std::optional<double> f_norm; ///< bounds input; defaults to the forcing L2 norm

  // [eigen]
  int trial_degree = 0;
  double tol_exp = 0.15;
  bool write_basis = false;

  // [simulate]
  std::string initial = "zero"; ///< zero | random | modes
  std::vector<double> initial_modes;
  double initial_scale = 0.1;
  bool regularity = true;
  double pair_perturbation = 0.0; ///< 0 disables the pair run

  // [bounds]
  std::optional<double> B0_override;
  int d = 2;

  // [covering]
  std::vector<double> C1{1.0};
  std::vector<double> C2{1.0};
  std::vector<double> ell{1.0};
  double r_cover = 3.0;
  std::string lambda_model = "j^(2/3)";
  int distance_samples = 0;
  int distance_modes = 60;
  int distance_K = 20;

  // [sweep]
  std::string sweep_parameter = "f_norm";
  std::vector<double> sweep_values;

  // [attractor]
  std::optional<double> attractor_ell; ///< default: the bound-chain ell
  int burn_in = 50;
  int samples = 60;
  std::vector<double> epsilons;

  RunConfig();
  bool operator==(const RunConfig& o) const;
};

/// Parses INI text. Throws ConfigError with line or section.key diagnostics.
RunConfig parse_config(const std::string& text);
/// Canonical INI text; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& c);
/// Checks the preconditions of the command's operations.
void validate_config(const RunConfig& c, const std::string& command);

std::string format_number(double v);
std::vector<double> parse_list(const std::string& s, const std::string& field);

} // namespace rfcli
