// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#include "rfluid/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "json.hpp"

#include "rfluid/error.hpp"
#include "rfluid/io.hpp"

namespace rfluid {

Geometry parse_geometry(const std::string& name) {
  if (name == "disk") return Geometry::disk;
  if (name == "shell3d") return Geometry::shell3d;
  throw ContractError("unknown geometry '" + name + "'");
}

std::string to_string(Geometry g) { return g == Geometry::disk ? "disk" : "shell3d"; }

int trial_count(int degree) {
  int n = 0;
  for (int m = 0; m <= degree; ++m) n += (m == 0 ? 1 : 2) * ((degree - m) / 2 + 1);
  return n;
}

int auto_trial_degree(int n_modes, double factor) {
  const double target = std::max<double>(n_modes, std::ceil(factor * n_modes));
  // Boundary-layer modes have eigenvalues close to their angular index, so the
  // N lowest modes need angular degrees up to about N/2.
  int P = (n_modes + 1) / 2 + 2;
  while (trial_count(P) < target) ++P;
  return P;
}

namespace {

/// Second-order jet: value and derivatives up to order two in (x, y).
struct Jet {
  double v = 0, x = 0, y = 0, xx = 0, xy = 0, yy = 0;
};

Jet operator+(const Jet& a, const Jet& b) {
  return {a.v + b.v, a.x + b.x, a.y + b.y, a.xx + b.xx, a.xy + b.xy, a.yy + b.yy};
}
Jet operator*(double s, const Jet& a) {
  return {s * a.v, s * a.x, s * a.y, s * a.xx, s * a.xy, s * a.yy};
}
Jet operator*(const Jet& a, const Jet& b) {
  return {a.v * b.v,
          a.x * b.v + a.v * b.x,
          a.y * b.v + a.v * b.y,
          a.xx * b.v + 2 * a.x * b.x + a.v * b.xx,
          a.xy * b.v + a.x * b.y + a.y * b.x + a.v * b.xy,
          a.yy * b.v + 2 * a.y * b.y + a.v * b.yy};
}

/// Jets of (1-s) P_n^{(2,m)}(2s-1) Re/Im (x+iy)^m for n = 0..nmax at one
/// point, s = x^2 + y^2. These stream functions vanish on the unit circle.
void stream_jets(double x, double y, int m, int nmax, bool sine, std::vector<Jet>& out) {
  const Jet s{x * x + y * y, 2 * x, 2 * y, 2, 0, 2};
  const Jet one{1, 0, 0, 0, 0, 0};
  const Jet bubble = one + (-1.0) * s;
  const Jet t = (2.0 * s) + Jet{-1, 0, 0, 0, 0, 0};

  // d/dx z^m = m z^{m-1}, d/dy z^m = i m z^{m-1}.
  const std::complex<double> z(x, y), I(0, 1);
  const std::complex<double> zm = std::pow(z, m);
  const std::complex<double> d1 = m >= 1 ? double(m) * std::pow(z, m - 1) : 0.0;
  const std::complex<double> d2 = m >= 2 ? double(m) * (m - 1) * std::pow(z, m - 2) : 0.0;
  const std::complex<double> dx = d1, dy = I * d1, dxx = d2, dxy = I * d2, dyy = -d2;
  const Jet zj = sine ? Jet{zm.imag(), dx.imag(), dy.imag(), dxx.imag(), dxy.imag(), dyy.imag()}
                      : Jet{zm.real(), dx.real(), dy.real(), dxx.real(), dxy.real(), dyy.real()};
  const Jet base = bubble * zj;

  // Jacobi P_n^{(a,b)}(t), a = 2, b = m, by the three-term recurrence.
  const double a = 2.0, b = m;
  out.resize(nmax + 1);
  Jet prev2 = one, prev1;
  out[0] = base;
  if (nmax >= 1) {
    prev1 = Jet{(a + 1) - 0.5 * (a + b + 2), 0, 0, 0, 0, 0} + (0.5 * (a + b + 2)) * t;
    out[1] = base * prev1;
  }
  for (int n = 2; n <= nmax; ++n) {
    const double c = 2.0 * n + a + b;
    const double d = 2.0 * n * (n + a + b) * (c - 2);
    const Jet lin = Jet{(c - 1) * (a * a - b * b), 0, 0, 0, 0, 0} + ((c - 1) * c * (c - 2)) * t;
    const Jet cur = (1.0 / d) * (lin * prev1 + (-2.0 * (n + a - 1) * (n + b - 1) * c) * prev2);
    out[n] = base * cur;
    prev2 = prev1;
    prev1 = cur;
  }
}

/// Trial velocities w = (psi_y, -psi_x) of one angular block sampled at the
/// nodes of a rule.
struct TrialSamples {
  std::array<Eigen::MatrixXd, 2> values;
  std::array<Eigen::MatrixXd, 4> grads;
};

TrialSamples sample_block(const QuadratureRule& rule, int m, int nmax, bool sine, bool with_grads) {
  const Eigen::Index n = static_cast<Eigen::Index>(rule.size());
  const Eigen::Index T = nmax + 1;
  TrialSamples s;
  for (auto& v : s.values) v.resize(n, T);
  if (with_grads)
    for (auto& g : s.grads) g.resize(n, T);
  std::vector<Jet> jets;
  for (Eigen::Index i = 0; i < n; ++i) {
    stream_jets(rule.nodes[i][0], rule.nodes[i][1], m, nmax, sine, jets);
    for (Eigen::Index k = 0; k < T; ++k) {
      const Jet& psi = jets[k];
      s.values[0](i, k) = psi.y;
      s.values[1](i, k) = -psi.x;
      if (with_grads) {
        s.grads[0](i, k) = psi.xy;
        s.grads[1](i, k) = psi.yy;
        s.grads[2](i, k) = -psi.xx;
        s.grads[3](i, k) = -psi.xy;
      }
    }
  }
  return s;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& A, const Eigen::VectorXd& w) {
  return A.transpose() * w.asDiagonal() * A;
}

Eigen::MatrixXd sym_grad_form(const std::array<Eigen::MatrixXd, 4>& g, const Eigen::VectorXd& w) {
  const Eigen::MatrixXd off = g[1] + g[2];
  Eigen::MatrixXd A = weighted_gram(g[0], w) + weighted_gram(g[3], w) + 0.5 * weighted_gram(off, w);
  return 0.5 * (A + A.transpose());
}

} // namespace

SpectralBasis::SpectralBasis(Data d) : d_(std::move(d)) {
  require(d_.quad != nullptr, "basis needs a quadrature");
  wi_ = to_eigen(d_.quad->interior.weights);
  wb_ = to_eigen(d_.quad->boundary.weights);
  const Eigen::Index N = d_.eigenvalues.size();
  for (const auto& m : d_.values)
    require(m.rows() == wi_.size() && m.cols() == N, "basis value matrix has the wrong shape");
  for (const auto& m : d_.grads)
    require(m.rows() == wi_.size() && m.cols() == N, "basis gradient matrix has the wrong shape");
  for (const auto& m : d_.trace)
    require(m.rows() == wb_.size() && m.cols() == N, "basis trace matrix has the wrong shape");
}

DiscreteField SpectralBasis::field(int j) const {
  require(j >= 0 && j < size(), "mode index out of range");
  Eigen::VectorXd e = Eigen::VectorXd::Zero(size());
  e(j) = 1.0;
  return combine(e);
}

DiscreteField SpectralBasis::combine(const Eigen::VectorXd& a) const {
  require(a.size() == size(), "coefficient vector has the wrong length");
  DiscreteField f(d_.quad, true);
  const Eigen::Index ni = wi_.size(), nb = wb_.size();
  auto& vals = f.raw_values();
  auto& grads = f.raw_gradients();
  auto& tr = f.raw_trace();
  for (int c = 0; c < 2; ++c) {
    const Eigen::VectorXd v = d_.values[c] * a;
    for (Eigen::Index i = 0; i < ni; ++i) vals[2 * i + c] = v(i);
    const Eigen::VectorXd t = d_.trace[c] * a;
    for (Eigen::Index i = 0; i < nb; ++i) tr[2 * i + c] = t(i);
  }
  for (int c = 0; c < 4; ++c) {
    const Eigen::VectorXd g = d_.grads[c] * a;
    for (Eigen::Index i = 0; i < ni; ++i) grads[4 * i + c] = g(i);
  }
  f.solenoidal = true;
  f.tangential = true;
  return f;
}

Eigen::MatrixXd SpectralBasis::interior_gram() const {
  return weighted_gram(d_.values[0], wi_) + weighted_gram(d_.values[1], wi_);
}

Eigen::MatrixXd SpectralBasis::boundary_gram() const {
  return weighted_gram(d_.trace[0], wb_) + weighted_gram(d_.trace[1], wb_);
}

Eigen::MatrixXd SpectralBasis::h_gram() const {
  return interior_gram() + d_.beta * boundary_gram();
}

Eigen::MatrixXd SpectralBasis::sym_grad_gram() const { return sym_grad_form(d_.grads, wi_); }

Eigen::MatrixXd SpectralBasis::v_gram() const {
  return sym_grad_gram() + d_.alpha * boundary_gram();
}

Eigen::MatrixXd SpectralBasis::full_grad_gram() const {
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(size(), size());
  for (const auto& g : d_.grads) G += weighted_gram(g, wi_);
  return G;
}

SpectralBasis SpectralBasis::truncated(int n) const {
  require(n >= 1 && n <= size(), "truncation size out of range");
  Data d = d_;
  d.eigenvalues = d_.eigenvalues.head(n);
  for (auto& m : d.values) m = m.leftCols(n).eval();
  for (auto& m : d.grads) m = m.leftCols(n).eval();
  for (auto& m : d.trace) m = m.leftCols(n).eval();
  return SpectralBasis(std::move(d));
}

SpectralBasis build_basis(Geometry geometry, int n_modes, const FluidParams& p,
                          const BasisOptions& options) {
  require(geometry == Geometry::disk, "geometry '" + to_string(geometry) + "' is not supported");
  require(n_modes >= 1, "N must be >= 1");
  require(p.alpha >= 0.0 && p.beta >= 0.0, "alpha and beta must be >= 0");
  const int P = options.trial_degree > 0 ? options.trial_degree
                                         : auto_trial_degree(n_modes, options.trial_factor);
  require(trial_count(P) >= n_modes, "N = " + std::to_string(n_modes) +
                                         " exceeds the trial space of size " +
                                         std::to_string(trial_count(P)));

  // Exact for the cubic convective integrand of velocities of degree P+1.
  auto quad = std::make_shared<const DiskQuadrature>(DiskQuadrature::exact_for(3 * P + 2));
  const Eigen::VectorXd wi = to_eigen(quad->interior.weights);
  const Eigen::VectorXd wb = to_eigen(quad->boundary.weights);

  // Both forms are rotation invariant and the angular rule integrates the
  // products exactly, so they are block diagonal in (m, phase).
  struct Block {
    int m;
    bool sine;
    Eigen::VectorXd lambda;
    Eigen::MatrixXd vectors;
  };
  std::vector<Block> blocks;
  for (int m = 0; m <= P; ++m)
    for (bool sine : {false, true}) {
      if (m == 0 && sine) continue;
      const int nmax = (P - m) / 2;
      const TrialSamples in = sample_block(quad->interior, m, nmax, sine, true);
      const TrialSamples bd = sample_block(quad->boundary, m, nmax, sine, false);
      const Eigen::MatrixXd Mb = weighted_gram(bd.values[0], wb) + weighted_gram(bd.values[1], wb);
      Eigen::MatrixXd B = weighted_gram(in.values[0], wi) + weighted_gram(in.values[1], wi) + p.beta * Mb;
      Eigen::MatrixXd A = sym_grad_form(in.grads, wi) + p.alpha * Mb;
      B = 0.5 * (B + B.transpose());
      A = 0.5 * (A + A.transpose());

      // Diagonal scaling keeps the Cholesky factor of B well conditioned.
      const Eigen::Index T = B.rows();
      Eigen::VectorXd scale(T);
      for (Eigen::Index k = 0; k < T; ++k) {
        if (!(B(k, k) > 0.0)) throw NumericalError("H-form is not positive definite", B(k, k));
        scale(k) = 1.0 / std::sqrt(B(k, k));
      }
      const Eigen::MatrixXd As = scale.asDiagonal() * A * scale.asDiagonal();
      const Eigen::MatrixXd Bs = scale.asDiagonal() * B * scale.asDiagonal();
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
          As, Bs, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
      if (es.info() != Eigen::Success) throw NumericalError("H-form is not positive definite");
      blocks.push_back({m, sine, es.eigenvalues(), scale.asDiagonal() * es.eigenvectors()});
    }

  struct Pick {
    double lambda;
    std::size_t block;
    Eigen::Index col;
  };
  std::vector<Pick> all;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (Eigen::Index k = 0; k < blocks[b].lambda.size(); ++k) all.push_back({blocks[b].lambda(k), b, k});
  std::stable_sort(all.begin(), all.end(),
                   [](const Pick& x, const Pick& y) { return x.lambda < y.lambda; });
  all.resize(n_modes);

  SpectralBasis::Data d;
  d.quad = quad;
  d.eigenvalues.resize(n_modes);
  for (auto& v : d.values) v.resize(wi.size(), n_modes);
  for (auto& g : d.grads) g.resize(wi.size(), n_modes);
  for (auto& t : d.trace) t.resize(wb.size(), n_modes);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::vector<int> slots;
    for (int j = 0; j < n_modes; ++j)
      if (all[j].block == b) slots.push_back(j);
    if (slots.empty()) continue;
    const Block& blk = blocks[b];
    const int nmax = (P - blk.m) / 2;
    const TrialSamples in = sample_block(quad->interior, blk.m, nmax, blk.sine, true);
    const TrialSamples bd = sample_block(quad->boundary, blk.m, nmax, blk.sine, false);
    for (int j : slots) {
      const Eigen::VectorXd c = blk.vectors.col(all[j].col);
      d.eigenvalues(j) = std::max(0.0, all[j].lambda);
      for (int a = 0; a < 2; ++a) d.values[a].col(j) = in.values[a] * c;
      for (int a = 0; a < 4; ++a) d.grads[a].col(j) = in.grads[a] * c;
      for (int a = 0; a < 2; ++a) d.trace[a].col(j) = bd.values[a] * c;
    }
  }
  d.alpha = p.alpha;
  d.beta = p.beta;
  d.trial_degree = P;
  d.geometry = geometry;
  return SpectralBasis(std::move(d));
}

double rayleigh_quotient(const DiscreteField& f, const FluidParams& p) {
  const auto& q = f.quadrature();
  const auto& g = f.raw_gradients();
  const auto& v = f.raw_values();
  double energy = 0.0, mass = 0.0;
  for (std::size_t i = 0; i < f.n_interior(); ++i) {
    const double w = q.interior.weights[i];
    const double sym = 0.5 * (g[4 * i + 1] + g[4 * i + 2]);
    energy += w * (g[4 * i] * g[4 * i] + g[4 * i + 3] * g[4 * i + 3] + 2 * sym * sym);
    mass += w * (v[2 * i] * v[2 * i] + v[2 * i + 1] * v[2 * i + 1]);
  }
  double bnd = 0.0;
  if (f.has_trace()) {
    const auto& t = f.raw_trace();
    for (std::size_t i = 0; i < f.n_boundary(); ++i)
      bnd += q.boundary.weights[i] * (t[2 * i] * t[2 * i] + t[2 * i + 1] * t[2 * i + 1]);
  } else {
    require(p.alpha == 0.0 && p.beta == 0.0, "boundary terms need a trace");
  }
  const double den = mass + p.beta * bnd;
  require(den > 0.0, "Rayleigh quotient of the zero field");
  return (energy + p.alpha * bnd) / den;
}

AsymptoticsReport check_eigen_asymptotics(const Eigen::VectorXd& lambda, int d, double tol_exp) {
  require(d == 2 || d == 3, "dimension must be 2 or 3");
  require(lambda.size() >= 16, "asymptotics need at least 16 eigenvalues");
  const Eigen::Index n = lambda.size();
  std::vector<double> xs, ys;
  for (Eigen::Index j = n / 2; j < n; ++j) {
    if (!(lambda(j) > 0.0)) continue;
    xs.push_back(std::log(static_cast<double>(j + 1)));
    ys.push_back(std::log(lambda(j)));
  }
  require(xs.size() >= 4, "fewer than 4 positive eigenvalues in the fit window");
  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  AsymptoticsReport r;
  r.fitted_exponent = sxy / sxx;
  r.intercept = my - r.fitted_exponent * mx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (r.intercept + r.fitted_exponent * xs[i]);
    ss += e * e;
  }
  r.fit_residual = std::sqrt(ss / m);
  r.fit_points = static_cast<int>(xs.size());
  r.upper_exponent = 2.0 / d;
  r.lower_ok = r.fitted_exponent >= r.lower_exponent;
  r.window_ok = r.fitted_exponent <= r.upper_exponent + tol_exp && (d == 2 || r.lower_ok);
  return r;
}

AsymptoticsReport check_eigen_asymptotics(const SpectralBasis& basis, double tol_exp) {
  return check_eigen_asymptotics(basis.eigenvalues(), basis.dim(), tol_exp);
}

void write_basis(const SpectralBasis& b, const std::filesystem::path& dir) {
  using io::format_double;
  const auto& q = b.quadrature();
  nlohmann::json header = {{"d", b.dim()},
                           {"N", b.size()},
                           {"alpha", b.alpha()},
                           {"beta", b.beta()},
                           {"geometry", to_string(b.geometry())},
                           {"trial_degree", b.trial_degree()},
                           {"n_radial", q.n_radial},
                           {"n_angular", q.n_angular},
                           {"interior_nodes", q.interior.size()},
                           {"boundary_nodes", q.boundary.size()},
                           {"interior_exact_degree", q.interior.exact_degree},
                           {"boundary_exact_degree", q.boundary.exact_degree}};
  io::atomic_write(dir / "basis.json", header.dump(2) + "\n");

  std::string ev = io::csv_row({"j", "lambda"});
  for (int j = 0; j < b.size(); ++j)
    ev += io::csv_row({std::to_string(j + 1), format_double(b.eigenvalues()(j))});
  io::atomic_write(dir / "eigenvalues.csv", ev);

  std::string nodes = io::csv_row({"kind", "index", "x", "y", "weight"});
  for (std::size_t i = 0; i < q.interior.size(); ++i)
    nodes += io::csv_row({"interior", std::to_string(i), format_double(q.interior.nodes[i][0]),
                          format_double(q.interior.nodes[i][1]), format_double(q.interior.weights[i])});
  for (std::size_t i = 0; i < q.boundary.size(); ++i)
    nodes += io::csv_row({"boundary", std::to_string(i), format_double(q.boundary.nodes[i][0]),
                          format_double(q.boundary.nodes[i][1]), format_double(q.boundary.weights[i])});
  io::atomic_write(dir / "nodes.csv", nodes);

  std::string fields = io::csv_row({"kind", "index", "mode", "v1", "v2", "g11", "g12", "g21", "g22"});
  for (int j = 0; j < b.size(); ++j) {
    for (Eigen::Index i = 0; i < b.values(0).rows(); ++i)
      fields += io::csv_row({"interior", std::to_string(i), std::to_string(j + 1),
                             format_double(b.values(0)(i, j)), format_double(b.values(1)(i, j)),
                             format_double(b.grads(0)(i, j)), format_double(b.grads(1)(i, j)),
                             format_double(b.grads(2)(i, j)), format_double(b.grads(3)(i, j))});
    for (Eigen::Index i = 0; i < b.trace(0).rows(); ++i)
      fields += io::csv_row({"boundary", std::to_string(i), std::to_string(j + 1),
                             format_double(b.trace(0)(i, j)), format_double(b.trace(1)(i, j)), "", "",
                             "", ""});
  }
  io::atomic_write(dir / "fields.csv", fields);
}

SpectralBasis read_basis(const std::filesystem::path& dir) {
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(io::read_file(dir / "basis.json"));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed basis.json: ") + e.what());
  }
  SpectralBasis::Data d;
  int N = 0;
  std::size_t ni = 0, nb = 0;
  DiskQuadrature quad;
  try {
    N = h.at("N").get<int>();
    d.alpha = h.at("alpha").get<double>();
    d.beta = h.at("beta").get<double>();
    d.geometry = parse_geometry(h.at("geometry").get<std::string>());
    d.trial_degree = h.at("trial_degree").get<int>();
    quad.n_radial = h.at("n_radial").get<int>();
    quad.n_angular = h.at("n_angular").get<int>();
    quad.interior.exact_degree = h.at("interior_exact_degree").get<int>();
    quad.boundary.exact_degree = h.at("boundary_exact_degree").get<int>();
    ni = h.at("interior_nodes").get<std::size_t>();
    nb = h.at("boundary_nodes").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("incomplete basis.json: ") + e.what());
  } catch (const ContractError& e) {
    throw IoError(e.what());
  }
  if (N < 1) throw IoError("basis.json: N must be >= 1");

  auto rows_of = [&](const char* name) {
    auto rows = io::parse_csv(io::read_file(dir / name));
    if (rows.empty()) throw IoError(std::string(name) + " is empty");
    rows.erase(rows.begin());
    return rows;
  };
  auto idx_of = [](const std::string& s, std::size_t bound) {
    const double v = io::parse_double(s);
    if (v < 0 || v >= static_cast<double>(bound) || v != std::floor(v))
      throw IoError("index out of range: " + s);
    return static_cast<Eigen::Index>(v);
  };

  d.eigenvalues.resize(N);
  auto ev = rows_of("eigenvalues.csv");
  if (ev.size() != static_cast<std::size_t>(N)) throw IoError("eigenvalues.csv has the wrong row count");
  for (int j = 0; j < N; ++j) {
    if (ev[j].size() != 2) throw IoError("eigenvalues.csv: malformed row");
    d.eigenvalues(j) = io::parse_double(ev[j][1]);
  }

  quad.interior.nodes.resize(ni);
  quad.interior.weights.resize(ni);
  quad.boundary.nodes.resize(nb);
  quad.boundary.weights.resize(nb);
  for (const auto& r : rows_of("nodes.csv")) {
    if (r.size() != 5) throw IoError("nodes.csv: malformed row");
    QuadratureRule& rule = r[0] == "interior" ? quad.interior : quad.boundary;
    if (r[0] != "interior" && r[0] != "boundary") throw IoError("nodes.csv: unknown kind " + r[0]);
    const auto i = idx_of(r[1], rule.size());
    rule.nodes[i] = {io::parse_double(r[2]), io::parse_double(r[3])};
    rule.weights[i] = io::parse_double(r[4]);
  }

  for (auto& m : d.values) m.setZero(static_cast<Eigen::Index>(ni), N);
  for (auto& m : d.grads) m.setZero(static_cast<Eigen::Index>(ni), N);
  for (auto& m : d.trace) m.setZero(static_cast<Eigen::Index>(nb), N);
  for (const auto& r : rows_of("fields.csv")) {
    if (r.size() != 9) throw IoError("fields.csv: malformed row");
    const auto j = idx_of(r[2], static_cast<std::size_t>(N) + 1) - 1;
    if (j < 0) throw IoError("fields.csv: mode index must be >= 1");
    if (r[0] == "interior") {
      const auto i = idx_of(r[1], ni);
      d.values[0](i, j) = io::parse_double(r[3]);
      d.values[1](i, j) = io::parse_double(r[4]);
      for (int c = 0; c < 4; ++c) d.grads[c](i, j) = io::parse_double(r[5 + c]);
    } else if (r[0] == "boundary") {
      const auto i = idx_of(r[1], nb);
      d.trace[0](i, j) = io::parse_double(r[3]);
      d.trace[1](i, j) = io::parse_double(r[4]);
    } else {
      throw IoError("fields.csv: unknown kind " + r[0]);
    }
  }
  d.quad = std::make_shared<const DiskQuadrature>(std::move(quad));
  return SpectralBasis(std::move(d));
}

} // namespace rfluid
