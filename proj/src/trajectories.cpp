// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#include "rfluid/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rfluid/error.hpp"
#include "rfluid/inequalities.hpp"
#include "rfluid/io.hpp"

namespace rfluid {

Trajectory lift_b(const GalerkinSystem& sys, const FlowState& v0, double ell, double dt) {
  require(ell > 0.0 && std::isfinite(ell), "segment length must be positive");
  return simulate(sys, v0, ell, dt).trajectory;
}

FlowState evaluate_e(const Trajectory& chi) {
  require(chi.states.cols() >= 1, "empty trajectory");
  FlowState s;
  s.a = chi.states.col(chi.states.cols() - 1);
  s.t = chi.t0 + chi.ell;
  return s;
}

Trajectory shift_L(const GalerkinSystem& sys, const Trajectory& chi, double dt) {
  return lift_b(sys, evaluate_e(chi), chi.ell, dt);
}

std::string to_string(LambdaModel m) {
  switch (m) {
  case LambdaModel::measured:
    return "measured";
  case LambdaModel::synthetic_two_thirds:
    return "j^(2/3)";
  case LambdaModel::synthetic_half:
    return "j^(1/2)";
  }
  return "measured";
}

LambdaModel parse_lambda_model(const std::string& name) {
  if (name == "measured") return LambdaModel::measured;
  if (name == "j^(2/3)" || name == "two_thirds") return LambdaModel::synthetic_two_thirds;
  if (name == "j^(1/2)" || name == "half") return LambdaModel::synthetic_half;
  throw ContractError("unknown lambda model '" + name + "' (measured, j^(2/3), j^(1/2))");
}

LambdaSequence LambdaSequence::synthetic(LambdaModel m) {
  require(m != LambdaModel::measured, "synthetic sequence needs a synthetic model");
  LambdaSequence s;
  s.model_ = m;
  return s;
}

LambdaSequence LambdaSequence::measured(Eigen::VectorXd eigenvalues) {
  require(eigenvalues.size() > 0, "measured sequence needs eigenvalues");
  for (Eigen::Index i = 1; i < eigenvalues.size(); ++i)
    require(eigenvalues(i) >= eigenvalues(i - 1), "measured eigenvalues must be sorted");
  LambdaSequence s;
  s.model_ = LambdaModel::measured;
  s.values_ = std::move(eigenvalues);
  return s;
}

double LambdaSequence::operator()(std::uint64_t j) const {
  require(j >= 1, "eigenvalue index starts at 1");
  const double x = static_cast<double>(j);
  switch (model_) {
  case LambdaModel::synthetic_two_thirds: {
    const double c = std::cbrt(x);
    return c * c;
  }
  case LambdaModel::synthetic_half:
    return std::sqrt(x);
  case LambdaModel::measured:
    require(j <= available(), "eigenvalue index beyond the measured window");
    return values_(static_cast<Eigen::Index>(j - 1));
  }
  return 0.0;
}

std::uint64_t LambdaSequence::count_below(double bound) const {
  if (!(bound >= 0.0)) return 0;
  if (model_ == LambdaModel::measured) {
    const double* b = values_.data();
    const double* e = b + values_.size();
    return static_cast<std::uint64_t>(std::upper_bound(b, e, bound) - b);
  }
  // invert the law, then fix the rounding with the exact predicate
  const double guess = model_ == LambdaModel::synthetic_half ? bound * bound : std::pow(bound, 1.5);
  require(guess < 1e18, "spectral window too large to enumerate");
  auto j = static_cast<std::uint64_t>(std::floor(guess));
  while ((*this)(j + 1) <= bound) ++j;
  while (j > 0 && (*this)(j) > bound) --j;
  return j;
}

double temporal_frequency(int k, double ell) {
  require(ell > 0.0, "segment length must be positive");
  if (k == 0) return 1.0 / (ell * ell);
  const double w = k * std::numbers::pi / ell;
  return w * w;
}

EnumerationResult projection_rank_enumerate(double C1, double C2, double ell, double b,
                                            const LambdaSequence& lambda, const ConstantsLedger& L) {
  require(C1 > 0.0 && C2 > 0.0, "C1 and C2 must be positive");
  require(ell > 0.0, "segment length must be positive");
  require(b >= 1.0, "b must be >= 1");
  // thresholds are inclusive; the slack keeps exact ties (e.g. mu_0 = 8 lambda_j^b)
  // from being decided by the last bit of pow
  constexpr double tie = 1.0 + 1e-12;
  const double window = 8.0 * L.get("cover_c3") * C1 * C1 * tie;
  const double tfac = 8.0 * L.get("cover_c4") * C2 * C2 * tie;
  EnumerationResult res;
  const std::uint64_t J = lambda.count_below(window);
  res.j_max = J;
  res.window_truncated = lambda.model() == LambdaModel::measured && J == lambda.available();
  if (J == 0) return res;
  auto admits = [&](std::uint64_t j, double mu) { return mu <= tfac * std::pow(lambda(j), b); };
  for (int k = 0;; ++k) {
    const double mu = temporal_frequency(k, ell);
    if (!admits(J, mu)) break;
    std::uint64_t lo = 1, hi = J; // smallest admitted j
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (admits(mid, mu))
        hi = mid;
      else
        lo = mid + 1;
    }
    res.count += J - lo + 1;
  }
  return res;
}

namespace {

double rank_core(double C1, double C2, double ell, double r) {
  require(r >= 2.0, "r must be >= 2");
  const double e = 2.0 * (11.0 * r - 6.0) / (3.0 * r);
  return std::pow(C1, 4) + ell * std::pow(C1, e) * C2;
}

} // namespace

double projection_rank_bound(double C1, double C2, double ell, double r, const ConstantsLedger& L) {
  return L.get("rank_c") * rank_core(C1, C2, ell, r);
}

double covering_lnK(double C1, double C2, double ell, double r, const ConstantsLedger& L) {
  if (!(C1 > 1.0)) throw DomainError("covering count needs C1 > 1 (ln C1 must be positive)");
  return L.get("lnk_c7") * rank_core(C1, C2, ell, r) * std::log(C1);
}

CoveringReport covering_report(double C1, double C2, double ell, double r, const LambdaSequence& lambda,
                               const ConstantsLedger& L) {
  require(C1 >= 1.0 && C2 >= 1.0, "covering needs C1, C2 >= 1");
  CoveringReport rep;
  rep.C1 = C1;
  rep.C2 = C2;
  rep.ell = ell;
  rep.r = r;
  rep.b = embedding_exponent_b(r);
  rep.lambda_model = to_string(lambda.model());
  const auto e = projection_rank_enumerate(C1, C2, ell, rep.b, lambda, L);
  rep.enumerated_rank = e.count;
  rep.j_max = e.j_max;
  rep.window_truncated = e.window_truncated;
  rep.rank_bound = projection_rank_bound(C1, C2, ell, r, L);
  rep.lnK_bound = C1 > 1.0 ? covering_lnK(C1, C2, ell, r, L) : 0.0;
  rep.small_constants_warning = C1 < 2.0 || C2 < 2.0;
  return rep;
}

double projection_distance_sq(const Eigen::MatrixXd& a, const LambdaSequence& lambda, double ell, double b,
                              double C1, double C2, const ConstantsLedger& L) {
  // thresholds are inclusive; the slack keeps exact ties (e.g. mu_0 = 8 lambda_j^b)
  // from being decided by the last bit of pow
  constexpr double tie = 1.0 + 1e-12;
  const double window = 8.0 * L.get("cover_c3") * C1 * C1 * tie;
  const double tfac = 8.0 * L.get("cover_c4") * C2 * C2 * tie;
  double d = 0.0;
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    const double lj = lambda(static_cast<std::uint64_t>(j + 1));
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const bool kept = lj <= window && temporal_frequency(static_cast<int>(k), ell) <= tfac * std::pow(lj, b);
      if (!kept) d += a(j, k) * a(j, k);
    }
  }
  return d;
}

ProjectionDistanceReport sample_projection_distance(const LambdaSequence& lambda, int n_modes, int K,
                                                    double ell, double b, double C1, double C2,
                                                    const ConstantsLedger& L, int n_samples,
                                                    std::uint64_t seed) {
  require(n_modes >= 1 && K >= 0 && n_samples >= 1, "sampler sizes must be positive");
  require(C1 > 0.0 && C2 > 0.0 && ell > 0.0, "C1, C2, ell must be positive");
  Eigen::VectorXd lam(n_modes), mu(K + 1);
  for (int j = 0; j < n_modes; ++j) {
    lam(j) = lambda(static_cast<std::uint64_t>(j + 1));
    require(lam(j) > 0.0, "sampler needs positive eigenvalues");
  }
  for (int k = 0; k <= K; ++k) mu(k) = temporal_frequency(k, ell);

  ProjectionDistanceReport rep;
  rep.total_pairs = n_modes * (K + 1);
  // thresholds are inclusive; the slack keeps exact ties (e.g. mu_0 = 8 lambda_j^b)
  // from being decided by the last bit of pow
  constexpr double tie = 1.0 + 1e-12;
  const double window = 8.0 * L.get("cover_c3") * C1 * C1 * tie;
  const double tfac = 8.0 * L.get("cover_c4") * C2 * C2 * tie;
  for (int j = 0; j < n_modes; ++j)
    for (int k = 0; k <= K; ++k)
      if (lam(j) <= window && mu(k) <= tfac * std::pow(lam(j), b)) ++rep.retained_pairs;

  const Eigen::MatrixXd g = random_coefficients(rep.total_pairs, n_samples, seed);
  double sum = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    Eigen::MatrixXd a(n_modes, K + 1);
    for (int j = 0; j < n_modes; ++j)
      for (int k = 0; k <= K; ++k) a(j, k) = g(j * (K + 1) + k, s);
    double s1 = 0.0, s2 = 0.0;
    for (int j = 0; j < n_modes; ++j)
      for (int k = 0; k <= K; ++k) {
        const double a2 = a(j, k) * a(j, k);
        s1 += a2 * lam(j);
        s2 += a2 * std::pow(lam(j), -b) * mu(k);
      }
    // scale onto the boundary of the constraint set
    const double scale = std::min(C1 / std::sqrt(s1), C2 / std::sqrt(s2));
    a *= scale;
    const double d = std::sqrt(projection_distance_sq(a, lambda, ell, b, C1, C2, L));
    rep.distances.push_back(d);
    rep.max_distance = std::max(rep.max_distance, d);
    sum += d;
  }
  rep.mean_distance = sum / n_samples;
  return rep;
}

std::vector<double> greedy_covering_radii(const std::vector<Eigen::VectorXd>& points) {
  const std::size_t P = points.size();
  std::vector<double> radii;
  if (P == 0) return radii;
  std::vector<double> dmin(P, std::numeric_limits<double>::infinity());
  std::size_t center = 0;
  for (std::size_t n = 0; n < P; ++n) {
    for (std::size_t i = 0; i < P; ++i) dmin[i] = std::min(dmin[i], (points[i] - points[center]).norm());
    // ties resolve to the lowest index, so the net is deterministic
    std::size_t far = 0;
    for (std::size_t i = 1; i < P; ++i)
      if (dmin[i] > dmin[far]) far = i;
    radii.push_back(dmin[far]);
    center = far;
  }
  return radii;
}

BoxCountingReport box_counting_dimension(const std::vector<Eigen::VectorXd>& points,
                                         const std::vector<double>& epsilons) {
  require(points.size() >= 50, "box counting needs at least 50 points");
  require(epsilons.size() >= 4, "box counting needs at least 4 epsilons");
  for (double e : epsilons) require(e > 0.0 && std::isfinite(e), "epsilons must be positive");
  const auto [emin, emax] = std::minmax_element(epsilons.begin(), epsilons.end());
  require(*emax >= 10.0 * *emin, "epsilons must span at least a decade");
  for (const auto& p : points) require(p.size() == points.front().size(), "points differ in dimension");

  BoxCountingReport rep;
  rep.epsilons = epsilons;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      rep.diameter = std::max(rep.diameter, (points[i] - points[j]).norm());
  if (rep.diameter == 0.0) {
    rep.degenerate = true;
    rep.counts.assign(epsilons.size(), 1);
    return rep;
  }
  const auto radii = greedy_covering_radii(points);
  for (double e : epsilons) {
    std::uint64_t n = 1;
    while (n < radii.size() && radii[n - 1] > e) ++n;
    rep.counts.push_back(n);
  }
  const int n = static_cast<int>(epsilons.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    A(i, 0) = -std::log(epsilons[static_cast<std::size_t>(i)]);
    A(i, 1) = 1.0;
    y(i) = std::log(static_cast<double>(rep.counts[static_cast<std::size_t>(i)]));
  }
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(y);
  rep.slope = c(0);
  rep.intercept = c(1);
  rep.fit_residual = (A * c - y).norm() / std::sqrt(static_cast<double>(n));
  return rep;
}

BoxCountingReport box_counting_dimension(const std::vector<Trajectory>& segments,
                                         const std::vector<double>& epsilons, int K) {
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(segments.size());
  for (const auto& s : segments) {
    const auto c = coefficients(s, K);
    pts.emplace_back(c.a.reshaped());
  }
  return box_counting_dimension(pts, epsilons);
}

AttractorReport attractor_box_dimension(const GalerkinSystem& sys, const FlowState& v0, double ell,
                                        const AttractorOptions& opt) {
  require(opt.burn_in >= 0 && opt.samples >= 50, "attractor sampling needs >= 50 samples");
  require(opt.steps_per_segment >= 2 * opt.K && opt.steps_per_segment >= 1,
          "steps per segment must be >= 2K");
  const double dt = ell / opt.steps_per_segment;
  Trajectory chi = lift_b(sys, v0, ell, dt);
  for (int i = 0; i < opt.burn_in; ++i) chi = shift_L(sys, chi, dt);

  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < opt.samples; ++i) {
    chi = shift_L(sys, chi, dt);
    pts.emplace_back(coefficients(chi, opt.K).a.reshaped());
  }
  std::vector<double> eps = opt.epsilons;
  if (eps.empty()) {
    double diam = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) diam = std::max(diam, (pts[i] - pts[j]).norm());
    if (diam == 0.0) diam = 1.0;
    // 8 values from diam/2 down to diam/200
    for (int i = 0; i < 8; ++i) eps.push_back(0.5 * diam * std::pow(0.01, i / 7.0));
  }
  AttractorReport rep;
  rep.box = box_counting_dimension(pts, eps);
  rep.ell = ell;
  rep.segments = opt.samples;
  return rep;
}

void write_box_counts_csv(const BoxCountingReport& r, const std::filesystem::path& path) {
  std::string out = io::csv_row({"epsilon", "count"});
  for (std::size_t i = 0; i < r.epsilons.size(); ++i)
    out += io::csv_row({io::format_double(r.epsilons[i]), std::to_string(r.counts[i])});
  io::atomic_write(path, out);
}

} // namespace rfluid
