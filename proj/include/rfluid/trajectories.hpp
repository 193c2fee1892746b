// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rfluid/bounds.hpp"
#include "rfluid/solver.hpp"
#include "rfluid/temporal.hpp"

namespace rfluid {

/// Integrates from v0 over [0, ell] with step dt (the lift b).
Trajectory lift_b(const GalerkinSystem& sys, const FlowState& v0, double ell, double dt);
/// End point chi(ell) (the evaluation e).
FlowState evaluate_e(const Trajectory& chi);
/// b(e(chi)): the segment that starts where chi ends.
Trajectory shift_L(const GalerkinSystem& sys, const Trajectory& chi, double dt);

enum class LambdaModel { measured, synthetic_two_thirds, synthetic_half };
std::string to_string(LambdaModel m);
/// "measured", "j^(2/3)" or "j^(1/2)"; ContractError otherwise.
LambdaModel parse_lambda_model(const std::string& name);

/// Eigenvalue sequence used by the enumeration, indexed from j = 1.
class LambdaSequence {
public:
  static LambdaSequence synthetic(LambdaModel m);
  static LambdaSequence measured(Eigen::VectorXd eigenvalues);

  LambdaModel model() const { return model_; }
  double operator()(std::uint64_t j) const;
  /// Largest j with lambda_j <= bound (0 if none). For measured sequences the
  /// result is capped at the number of eigenvalues.
  std::uint64_t count_below(double bound) const;
  /// Number of available eigenvalues (0 = unbounded synthetic law).
  std::uint64_t available() const { return static_cast<std::uint64_t>(values_.size()); }

private:
  LambdaModel model_ = LambdaModel::synthetic_two_thirds;
  Eigen::VectorXd values_;
};

/// mu_0 = ell^-2, mu_k = (k pi / ell)^2.
double temporal_frequency(int k, double ell);

struct EnumerationResult {
  std::uint64_t count = 0;
  std::uint64_t j_max = 0;        ///< number of spatial modes in the window
  bool window_truncated = false;  ///< measured eigenvalues ran out inside the window
};

/// Counts pairs (j, k), k >= 0, with lambda_j <= 8 c3 C1^2 and
/// mu_k <= 8 c4 lambda_j^b C2^2. Exact; iterates over k with a binary search
/// over the monotone j-condition.
EnumerationResult projection_rank_enumerate(double C1, double C2, double ell, double b,
                                            const LambdaSequence& lambda, const ConstantsLedger& L);

/// rank_c (C1^4 + ell C1^{2(11r-6)/(3r)} C2).
double projection_rank_bound(double C1, double C2, double ell, double r, const ConstantsLedger& L);
/// lnk_c7 (C1^4 + ell C1^{2(11r-6)/(3r)} C2) ln C1; DomainError for C1 <= 1.
double covering_lnK(double C1, double C2, double ell, double r, const ConstantsLedger& L);

struct CoveringReport {
  double C1 = 0.0;
  double C2 = 0.0;
  double ell = 0.0;
  double r = 0.0;
  double b = 0.0;
  std::string lambda_model;
  std::uint64_t enumerated_rank = 0;
  std::uint64_t j_max = 0;
  bool window_truncated = false;
  double rank_bound = 0.0;
  double lnK_bound = 0.0;
  bool small_constants_warning = false; ///< C1 or C2 below 2
};

/// Enumeration and closed forms for one (C1, C2, ell); b from r.
CoveringReport covering_report(double C1, double C2, double ell, double r, const LambdaSequence& lambda,
                               const ConstantsLedger& L);

struct ProjectionDistanceReport {
  double max_distance = 0.0;
  double mean_distance = 0.0;
  std::vector<double> distances;
  int retained_pairs = 0;
  int total_pairs = 0;
  bool span_relative = true;
};

/// Samples members of the set {sum a_jk^2 lambda_j <= C1^2,
/// sum a_jk^2 lambda_j^-b mu_k <= C2^2} over j <= n_modes, k <= K (Gaussian
/// coefficients scaled onto its boundary) and measures the distance to the
/// enumerated-span projection.
ProjectionDistanceReport sample_projection_distance(const LambdaSequence& lambda, int n_modes, int K,
                                                    double ell, double b, double C1, double C2,
                                                    const ConstantsLedger& L, int n_samples,
                                                    std::uint64_t seed);
/// Squared distance of one coefficient array to the projection.
double projection_distance_sq(const Eigen::MatrixXd& a, const LambdaSequence& lambda, double ell, double b,
                              double C1, double C2, const ConstantsLedger& L);

struct BoxCountingReport {
  double slope = 0.0;
  double intercept = 0.0;
  double fit_residual = 0.0;
  std::vector<double> epsilons;
  std::vector<std::uint64_t> counts;
  double diameter = 0.0;
  bool degenerate = false;
};

/// Greedy farthest-point covering radii of the point cloud in the Euclidean
/// metric, r_n after n centers (r_1 ... r_P).
std::vector<double> greedy_covering_radii(const std::vector<Eigen::VectorXd>& points);

/// Greedy epsilon-net counts N(eps) = min{n : r_n <= eps} and the
/// least-squares slope of ln N against -ln eps. Needs >= 50 points and >= 4
/// epsilons spanning at least a decade.
BoxCountingReport box_counting_dimension(const std::vector<Eigen::VectorXd>& points,
                                         const std::vector<double>& epsilons);
/// Trajectories as points of L^2(0, ell; H) through their temporal
/// coefficients (Frobenius metric).
BoxCountingReport box_counting_dimension(const std::vector<Trajectory>& segments,
                                         const std::vector<double>& epsilons, int K);

struct AttractorOptions {
  int burn_in = 50;
  int samples = 60;
  int K = 4;
  int steps_per_segment = 16;
  std::vector<double> epsilons; ///< empty: 8 values log-spaced over the cloud
};

struct AttractorReport {
  BoxCountingReport box;
  double ell = 0.0;
  int segments = 0;
};

/// Iterates the segment map from v0, discards burn_in iterates, collects the
/// next samples segments and box-counts them.
AttractorReport attractor_box_dimension(const GalerkinSystem& sys, const FlowState& v0, double ell,
                                        const AttractorOptions& opt);

/// Box-count CSV with columns epsilon, count.
void write_box_counts_csv(const BoxCountingReport& r, const std::filesystem::path& path);

} // namespace rfluid
