// Copyright 2026 The rfluid Authors
// SPDX-License-Identifier: Apache-2.0

#include "rfluid/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "rfluid/error.hpp"
#include "rfluid/io.hpp"

namespace rfluid {

struct GalerkinSystem::NodeState {
  std::array<Eigen::VectorXd, 2> v;
  std::array<Eigen::VectorXd, 4> g;
  Eigen::VectorXd d00, d11, d01, x, eta;
  std::array<Eigen::VectorXd, 2> t;
  Eigen::VectorXd tx, sigma;
};

GalerkinSystem::GalerkinSystem(std::shared_ptr<const SpectralBasis> basis, const FluidParams& p,
                               const DiscreteField& forcing, SolverOptions opt)
    : basis_(std::move(basis)), p_(p), opt_(opt), law_(ladyzhenskaya_law(p)),
      blaw_(default_boundary_law(p)) {
  require(basis_ != nullptr, "solver needs a basis");
  p_.validate();
  require(static_cast<Eigen::Index>(forcing.n_interior()) == basis_->interior_weights().size(),
          "forcing is sampled on a different quadrature");
  require(opt_.dt_min > 0.0 && opt_.newton_tol > 0.0, "solver tolerances must be positive");
  const auto& wi = basis_->interior_weights();
  const auto& fv = forcing.raw_values();
  const Eigen::Index n = wi.size();
  Eigen::VectorXd f0(n), f1(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    f0(i) = fv[2 * i];
    f1(i) = fv[2 * i + 1];
  }
  load_ = basis_->values(0).transpose() * wi.cwiseProduct(f0) +
          basis_->values(1).transpose() * wi.cwiseProduct(f1);
  forcing_l2_ = std::sqrt(wi.dot(f0.cwiseProduct(f0) + f1.cwiseProduct(f1)));
  mass_ = basis_->h_gram();
  off_ = basis_->grads(1) + basis_->grads(2);
  linear_ = law_.coefficient(0.0) * basis_->sym_grad_gram() +
            p_.alpha * blaw_.coefficient(0.0) * basis_->boundary_gram();
}

GalerkinSystem::NodeState GalerkinSystem::evaluate(const Eigen::VectorXd& a) const {
  require(a.size() == size(), "coefficient vector has the wrong length");
  NodeState s;
  for (int c = 0; c < 2; ++c) s.v[c] = basis_->values(c) * a;
  for (int c = 0; c < 4; ++c) s.g[c] = basis_->grads(c) * a;
  s.d00 = s.g[0];
  s.d11 = s.g[3];
  s.d01 = 0.5 * (s.g[1] + s.g[2]);
  s.x = s.d00.cwiseAbs2() + s.d11.cwiseAbs2() + 2.0 * s.d01.cwiseAbs2();
  s.eta = s.x.unaryExpr([&](double x) { return law_.coefficient(x); });
  for (int c = 0; c < 2; ++c) s.t[c] = basis_->trace(c) * a;
  s.tx = s.t[0].cwiseAbs2() + s.t[1].cwiseAbs2();
  s.sigma = s.tx.unaryExpr([&](double x) { return blaw_.coefficient(x); });
  return s;
}

Eigen::VectorXd GalerkinSystem::convective(const Eigen::VectorXd& a) const {
  const NodeState s = evaluate(a);
  const auto& wi = basis_->interior_weights();
  const Eigen::VectorXd c0 = s.v[0].cwiseProduct(s.g[0]) + s.v[1].cwiseProduct(s.g[1]);
  const Eigen::VectorXd c1 = s.v[0].cwiseProduct(s.g[2]) + s.v[1].cwiseProduct(s.g[3]);
  return basis_->values(0).transpose() * wi.cwiseProduct(c0) +
         basis_->values(1).transpose() * wi.cwiseProduct(c1);
}

double GalerkinSystem::trilinear(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                                 const Eigen::VectorXd& w) const {
  require(u.size() == size() && v.size() == size() && w.size() == size(),
          "coefficient vectors have the wrong length");
  const auto& b = *basis_;
  const auto& wi = b.interior_weights();
  const Eigen::VectorXd u0 = b.values(0) * u, u1 = b.values(1) * u;
  const Eigen::VectorXd w0 = b.values(0) * w, w1 = b.values(1) * w;
  std::array<Eigen::VectorXd, 4> g;
  for (int c = 0; c < 4; ++c) g[c] = b.grads(c) * v;
  const Eigen::VectorXd c0 = u0.cwiseProduct(g[0]) + u1.cwiseProduct(g[1]);
  const Eigen::VectorXd c1 = u0.cwiseProduct(g[2]) + u1.cwiseProduct(g[3]);
  return wi.dot(c0.cwiseProduct(w0) + c1.cwiseProduct(w1));
}

Eigen::VectorXd GalerkinSystem::operator_part(const Eigen::VectorXd& a) const {
  const NodeState s = evaluate(a);
  const auto& b = *basis_;
  const auto& wi = b.interior_weights();
  const auto& wb = b.boundary_weights();
  const Eigen::VectorXd we = wi.cwiseProduct(s.eta);
  Eigen::VectorXd r = b.grads(0).transpose() * we.cwiseProduct(s.d00) +
                      b.grads(3).transpose() * we.cwiseProduct(s.d11) +
                      off_.transpose() * we.cwiseProduct(s.d01);
  if (opt_.convection) {
    const Eigen::VectorXd c0 = s.v[0].cwiseProduct(s.g[0]) + s.v[1].cwiseProduct(s.g[1]);
    const Eigen::VectorXd c1 = s.v[0].cwiseProduct(s.g[2]) + s.v[1].cwiseProduct(s.g[3]);
    r += b.values(0).transpose() * wi.cwiseProduct(c0) + b.values(1).transpose() * wi.cwiseProduct(c1);
  }
  if (p_.alpha != 0.0) {
    const Eigen::VectorXd ws = wb.cwiseProduct(s.sigma);
    r += p_.alpha * (b.trace(0).transpose() * ws.cwiseProduct(s.t[0]) +
                     b.trace(1).transpose() * ws.cwiseProduct(s.t[1]));
  }
  return r;
}

Eigen::MatrixXd GalerkinSystem::operator_jacobian(const Eigen::VectorXd& a) const {
  const NodeState s = evaluate(a);
  const auto& b = *basis_;
  const auto& wi = b.interior_weights();
  const auto& wb = b.boundary_weights();
  const double eps = opt_.eps_jacobian;
  const Eigen::Index n = wi.size();

  // dS[E] = eta E + 2 eta'(|D|^2) (D:E) D, eta' at (|D| + eps)^2.
  Eigen::VectorXd we = wi.cwiseProduct(s.eta), wd(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xr = std::pow(std::sqrt(s.x(i)) + eps, 2);
    wd(i) = 2.0 * wi(i) * law_.coefficient_derivative(xr);
  }
  Eigen::MatrixXd J = b.grads(0).transpose() * we.asDiagonal() * b.grads(0) +
                      b.grads(3).transpose() * we.asDiagonal() * b.grads(3) +
                      0.5 * off_.transpose() * we.asDiagonal() * off_;
  const Eigen::MatrixXd K = s.d00.asDiagonal() * b.grads(0) + s.d11.asDiagonal() * b.grads(3) +
                            s.d01.asDiagonal() * off_;
  J += K.transpose() * wd.asDiagonal() * K;

  if (opt_.convection) {
    const Eigen::MatrixXd X0 = s.g[0].asDiagonal() * b.values(0) + s.g[1].asDiagonal() * b.values(1) +
                               s.v[0].asDiagonal() * b.grads(0) + s.v[1].asDiagonal() * b.grads(1);
    const Eigen::MatrixXd X1 = s.g[2].asDiagonal() * b.values(0) + s.g[3].asDiagonal() * b.values(1) +
                               s.v[0].asDiagonal() * b.grads(2) + s.v[1].asDiagonal() * b.grads(3);
    J += b.values(0).transpose() * wi.asDiagonal() * X0 + b.values(1).transpose() * wi.asDiagonal() * X1;
  }

  if (p_.alpha != 0.0) {
    const Eigen::Index nb = wb.size();
    Eigen::VectorXd ws = wb.cwiseProduct(s.sigma), wds(nb);
    for (Eigen::Index i = 0; i < nb; ++i) {
      const double xr = std::pow(std::sqrt(s.tx(i)) + eps, 2);
      wds(i) = 2.0 * wb(i) * blaw_.coefficient_derivative(xr);
    }
    const Eigen::MatrixXd L = s.t[0].asDiagonal() * b.trace(0) + s.t[1].asDiagonal() * b.trace(1);
    J += p_.alpha * (b.trace(0).transpose() * ws.asDiagonal() * b.trace(0) +
                     b.trace(1).transpose() * ws.asDiagonal() * b.trace(1) +
                     L.transpose() * wds.asDiagonal() * L);
  }
  return J;
}

Eigen::VectorXd GalerkinSystem::weak_residual(const Eigen::VectorXd& a, const Eigen::VectorXd& da) const {
  require(da.size() == size(), "time-derivative vector has the wrong length");
  return mass_ * da + operator_part(a) - load_;
}

Energetics GalerkinSystem::energetics(const Eigen::VectorXd& a) const {
  const NodeState s = evaluate(a);
  const auto& wi = basis_->interior_weights();
  const auto& wb = basis_->boundary_weights();
  Energetics e;
  e.norm_H_sq = a.dot(mass_ * a);
  e.dissipation = wi.dot(s.eta.cwiseProduct(s.x));
  e.boundary_dissipation = p_.alpha * wb.dot(s.sigma.cwiseProduct(s.tx));
  e.work = load_.dot(a);
  for (Eigen::Index i = 0; i < wi.size(); ++i) e.phi_integral += wi(i) * law_.potential(s.x(i));
  for (Eigen::Index i = 0; i < wb.size(); ++i) e.s_integral += wb(i) * blaw_.potential(s.tx(i));
  return e;
}

double GalerkinSystem::gap_integral(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  const NodeState su = evaluate(u), sv = evaluate(v);
  const auto& wi = basis_->interior_weights();
  double total = 0.0;
  for (Eigen::Index i = 0; i < wi.size(); ++i) {
    SymTensor Du(2), Dv(2);
    Du.set(0, 0, su.d00(i));
    Du.set(1, 1, su.d11(i));
    Du.set(0, 1, su.d01(i));
    Dv.set(0, 0, sv.d00(i));
    Dv.set(1, 1, sv.d11(i));
    Dv.set(0, 1, sv.d01(i));
    total += wi(i) * gap_I2(Du, Dv, p_);
  }
  return total;
}

double GalerkinSystem::lp_norm(const Eigen::VectorXd& a, double p) const {
  return norm_Lp(basis_->combine(a), p);
}

double GalerkinSystem::w1p_norm(const Eigen::VectorXd& a, double p) const {
  return norm_W1p(basis_->combine(a), p);
}

Eigen::VectorXd GalerkinSystem::solve_fixed_point(const Eigen::VectorXd& a0, Eigen::VectorXd a, double dt,
                                                  double tol, int& iters, double& res) const {
  const Eigen::MatrixXd L = mass_ / dt + linear_;
  const Eigen::LDLT<Eigen::MatrixXd> lu(L);
  const Eigen::VectorXd base = mass_ * a0 / dt + load_;
  const double theta = opt_.fixed_point_damping;
  for (iters = 1; iters <= opt_.max_fixed_point; ++iters) {
    const Eigen::VectorXd rhs = base - (operator_part(a) - linear_ * a);
    const Eigen::VectorXd next = lu.solve(rhs);
    a += theta * (next - a);
    res = weak_residual(a, (a - a0) / dt).norm();
    if (!std::isfinite(res)) break;
    if (res <= tol) return a;
  }
  throw NumericalError("damped fixed-point iteration did not converge", res);
}

StepOutcome GalerkinSystem::step(const FlowState& s, double dt) const {
  require(dt > 0.0 && std::isfinite(dt), "dt must be positive");
  require(s.a.size() == size(), "state has the wrong length");
  const Eigen::VectorXd& a0 = s.a;
  auto residual = [&](const Eigen::VectorXd& a) { return weak_residual(a, (a - a0) / dt); };
  const double scale = 1.0 + (mass_ * a0).norm() / dt + load_.norm();
  const double tol = opt_.newton_tol * scale;

  StepOutcome out;
  out.state.t = s.t + dt;
  Eigen::VectorXd a = a0;
  Eigen::VectorXd r = residual(a);
  double rn = r.norm();
  bool converged = rn <= tol;
  int it = 0;
  while (!converged && it < opt_.max_newton) {
    ++it;
    const Eigen::MatrixXd J = mass_ / dt + operator_jacobian(a);
    const Eigen::VectorXd delta = J.partialPivLu().solve(-r);
    if (!delta.allFinite()) break;
    double lam = 1.0;
    bool accepted = false;
    Eigen::VectorXd an, rnv;
    double rnn = 0.0;
    for (int ls = 0; ls < 30; ++ls) {
      an = a + lam * delta;
      rnv = residual(an);
      rnn = rnv.norm();
      if (std::isfinite(rnn) && rnn <= (1.0 - 1e-4 * lam) * rn) {
        accepted = true;
        break;
      }
      lam *= 0.5;
    }
    if (!accepted) {
      // Rounding floor just above the tolerance.
      converged = rn <= 100.0 * tol;
      break;
    }
    a = an;
    r = rnv;
    rn = rnn;
    converged = rn <= tol;
  }
  out.newton_iterations = it;
  if (converged) {
    out.state.a = a;
    out.residual = rn;
    return out;
  }
  out.used_fixed_point = true;
  out.state.a = solve_fixed_point(a0, a0, dt, tol, out.fixed_point_iterations, out.residual);
  return out;
}

DiscreteField forcing_from_modes(const SpectralBasis& basis, const Eigen::VectorXd& c) {
  return basis.combine(c);
}

namespace {

struct SubstepTotals {
  double diss = 0, bdiss = 0, work = 0, numdiss = 0, residual = 0;
  int newton = 0, fixed = 0, halvings = 0;
  double max_res = 0;
};

/// Advances by dt, splitting into half steps on failure.
FlowState advance(const GalerkinSystem& sys, const FlowState& s, double dt, SubstepTotals& tot) {
  StepOutcome o;
  try {
    o = sys.step(s, dt);
  } catch (const NumericalError& e) {
    if (dt / 2 < sys.options().dt_min)
      throw NumericalError("step failed at t = " + io::format_double(s.t) + " with dt at the floor: " +
                               e.what(),
                           e.residual());
    ++tot.halvings;
    const FlowState mid = advance(sys, s, dt / 2, tot);
    return advance(sys, mid, dt / 2, tot);
  }
  const Energetics e0 = sys.energetics(s.a);
  const Energetics e1 = sys.energetics(o.state.a);
  const Eigen::VectorXd da = o.state.a - s.a;
  const double numdiss = 0.5 * da.dot(sys.mass() * da);
  tot.diss += dt * e1.dissipation;
  tot.bdiss += dt * e1.boundary_dissipation;
  tot.work += dt * e1.work;
  tot.numdiss += numdiss;
  tot.residual += 0.5 * (e1.norm_H_sq - e0.norm_H_sq) +
                  dt * (e1.dissipation + e1.boundary_dissipation - e1.work) + numdiss;
  tot.newton += o.newton_iterations;
  tot.fixed += o.fixed_point_iterations;
  tot.max_res = std::max(tot.max_res, o.residual);
  return o.state;
}

LedgerEntry initial_entry(const GalerkinSystem& sys, const FlowState& s) {
  const Energetics e = sys.energetics(s.a);
  LedgerEntry le;
  le.t = s.t;
  le.norm_H_sq = e.norm_H_sq;
  le.dissipation = e.dissipation;
  le.boundary_dissipation = e.boundary_dissipation;
  le.work = e.work;
  le.U = e.U();
  le.phi_integral = e.phi_integral;
  le.s_integral = e.s_integral;
  return le;
}

} // namespace

Simulation simulate(const GalerkinSystem& sys, const FlowState& v0, double T, double dt) {
  require(T > 0.0 && std::isfinite(T), "T must be positive");
  require(dt > 0.0 && std::isfinite(dt), "dt must be positive");
  require(v0.a.size() == sys.size(), "initial state has the wrong length");
  const int M = std::max(1, static_cast<int>(std::lround(T / dt)));
  const double h = T / M;
  Simulation sim;
  sim.trajectory.t0 = v0.t;
  sim.trajectory.ell = T;
  sim.trajectory.states.resize(sys.size(), M + 1);
  sim.trajectory.states.col(0) = v0.a;
  sim.ledger.entries.reserve(M + 1);
  sim.ledger.entries.push_back(initial_entry(sys, v0));

  FlowState s = v0;
  for (int m = 1; m <= M; ++m) {
    SubstepTotals tot;
    FlowState next = advance(sys, s, h, tot);
    next.t = v0.t + h * m;
    const Energetics e = sys.energetics(next.a);
    LedgerEntry le;
    le.t = next.t;
    le.dt = h;
    le.norm_H_sq = e.norm_H_sq;
    le.dissipation = tot.diss / h;
    le.boundary_dissipation = tot.bdiss / h;
    le.work = tot.work / h;
    le.numerical_dissipation = tot.numdiss;
    le.energy_residual = tot.residual;
    le.U = e.U();
    le.phi_integral = e.phi_integral;
    le.s_integral = e.s_integral;
    const double viol = std::abs(le.energy_residual) / (h * (1.0 + le.norm_H_sq));
    sim.ledger.max_energy_violation = std::max(sim.ledger.max_energy_violation, viol);
    if (viol > sys.options().energy_tol) sim.ledger.balance_ok = false;
    sim.ledger.entries.push_back(le);
    sim.trajectory.states.col(m) = next.a;
    sim.trajectory.steps.push_back({next.t, h, tot.newton, tot.fixed, tot.halvings, tot.max_res});
    s = next;
  }
  return sim;
}

namespace {

double rate_function(const GalerkinSystem& sys, const Eigen::VectorXd& v) {
  const auto& p = sys.params();
  const double e = 3.0 / (2.0 * p.r - 3.0);
  return std::pow(p.nu1, -e) * std::pow(sys.w1p_norm(v, p.r), e) + 1.0;
}

} // namespace

PairDivergenceReport pair_divergence(const GalerkinSystem& sys, const FlowState& u0, const FlowState& v0,
                                     double T, double dt, double headroom) {
  require(u0.a.size() == sys.size() && v0.a.size() == sys.size(), "initial states have the wrong length");
  require(headroom >= 1.0, "headroom must be >= 1");
  require(sys.params().r > 1.5, "rate function needs r > 3/2");
  const Simulation su = simulate(sys, u0, T, dt);
  const Simulation sv = simulate(sys, v0, T, dt);
  const int M = su.trajectory.intervals();
  const double h = T / M;
  PairDivergenceReport rep;
  rep.headroom = headroom;
  for (int m = 0; m <= M; ++m) {
    const Eigen::VectorXd w = su.trajectory.states.col(m) - sv.trajectory.states.col(m);
    rep.times.push_back(su.trajectory.time(m));
    rep.w_sq.push_back(w.dot(sys.mass() * w));
    rep.rate.push_back(rate_function(sys, sv.trajectory.states.col(m)));
  }
  const double w0 = rep.w_sq[0];
  for (int m = 0; m < M; ++m) {
    if (rep.w_sq[m] > 0.0) {
      const double growth = (rep.w_sq[m + 1] - rep.w_sq[m]) / (h * rep.w_sq[m] * rep.rate[m + 1]);
      rep.c7_hat = std::max(rep.c7_hat, growth);
    }
    rep.gap_integral += h * sys.gap_integral(su.trajectory.states.col(m + 1), sv.trajectory.states.col(m + 1));
  }
  double integral = 0.0;
  rep.bound.push_back(w0);
  rep.max_growth = w0 > 0.0 ? 1.0 : 0.0;
  for (int m = 1; m <= M; ++m) {
    integral += h * rep.rate[m];
    const double bound = std::exp(headroom * rep.c7_hat * integral) * w0;
    rep.bound.push_back(bound);
    if (rep.w_sq[m] > bound * (1.0 + 1e-12)) rep.gronwall_ok = false;
    if (w0 > 0.0) rep.max_growth = std::max(rep.max_growth, rep.w_sq[m] / w0);
  }
  if (w0 == 0.0)
    rep.gronwall_ok = std::all_of(rep.w_sq.begin(), rep.w_sq.end(), [](double x) { return x == 0.0; });
  rep.rate_integral = rep.c7_hat * integral;
  return rep;
}

RegularityReport track_regularity(const GalerkinSystem& sys, const Trajectory& traj,
                                  const EnergyLedger& ledger) {
  const auto& p = sys.params();
  if (!(p.r > 12.0 / 5.0)) throw RegimeError("time-regularity estimates need r > 12/5");
  if (!(p.nu2 > 0.0)) throw DomainError("time-regularity branch estimates need nu2 > 0");
  const int M = traj.intervals();
  require(M >= 1, "trajectory needs at least two samples");
  require(static_cast<int>(ledger.entries.size()) == M + 1, "ledger does not match the trajectory");
  const double h = traj.ell / M;
  const double r = p.r;
  const double f2 = sys.forcing_l2() * sys.forcing_l2();
  const double q_int = 2.0 * r / (r - 2.0);
  const Eigen::MatrixXd Gi = sys.basis().interior_gram();

  RegularityReport rep;
  const bool low = r <= 3.0;
  rep.branch = low ? "r<=3" : "r>3";
  rep.mu = low ? 2.0 * (5.0 * r - 12.0) / (5.0 * r - 6.0) : (2.0 * r + 4.0) / (r * r);
  rep.U_equiv_lower = std::numeric_limits<double>::infinity();
  rep.U_equiv_upper = 0.0;

  auto norms = [&](const Eigen::VectorXd& a, double& l2, double& lq, double& w1r, double& d2, double& dr) {
    const DiscreteField f = sys.basis().combine(a);
    l2 = std::sqrt(std::max(0.0, a.dot(Gi * a)));
    lq = norm_Lp(f, q_int);
    w1r = norm_W1p(f, r);
    d2 = sym_grad_norm_Lp(f, 2.0);
    dr = sym_grad_norm_Lp(f, r);
  };

  for (int m = 0; m <= M; ++m) {
    const LedgerEntry& le = ledger.entries[m];
    const Eigen::VectorXd a = traj.states.col(m);
    double l2, lq, w1r, d2, dr;
    norms(a, l2, lq, w1r, d2, dr);
    rep.U_min = std::min(rep.U_min, le.U);
    if (le.U < 1.0) rep.U_at_least_one = false;
    const double equiv = 1.0 + p.nu1 * d2 * d2 + p.nu2 * std::pow(dr, r) + le.s_integral;
    rep.U_equiv_lower = std::min(rep.U_equiv_lower, le.U / equiv);
    rep.U_equiv_upper = std::max(rep.U_equiv_upper, le.U / equiv);

    if (l2 > 0.0 && w1r > 0.0) {
      const double ai = low ? (5.0 * r - 12.0) / (5.0 * r - 6.0) : (r - 2.0) / r;
      const double interp = lq / (std::pow(l2, ai) * std::pow(w1r, 1.0 - ai));
      rep.interp_c_hat = std::max(rep.interp_c_hat, interp);
    }
    if (m == 0) continue;

    const LedgerEntry& prev = ledger.entries[m - 1];
    const Eigen::VectorXd dv = (traj.states.col(m) - traj.states.col(m - 1)) / h;
    const double dv_sq = dv.dot(sys.mass() * dv);
    rep.dt_v_sq_integral += h * dv_sq;

    const double dUdt = (le.U - prev.U) / h;
    const double base = lq * lq * w1r * w1r;
    const double excess = 0.5 * dv_sq + dUdt - f2;
    if (base > 0.0) rep.c8_hat = std::max(rep.c8_hat, excess / base);

    const double v4 = l2 * l2 * l2 * l2;
    double lhs, factor;
    if (low) {
      lhs = (std::pow(le.U, rep.mu) - std::pow(prev.U, rep.mu)) / h;
      factor = std::pow(p.nu2, -10.0 / (5.0 * r - 6.0)) *
               std::pow(l2, 2.0 * (5.0 * r - 12.0) / (5.0 * r - 6.0)) * le.U;
    } else {
      lhs = dUdt;
      factor = std::pow(p.nu2, -r * r / (2.0 * r + 4.0)) * std::pow(l2, 2.0 * (r - 2.0) / r) *
               std::pow(le.U, rep.mu);
    }
    if (factor > 0.0) rep.branch_c_hat = std::max(rep.branch_c_hat, (lhs - v4 - f2) / factor);
  }
  if (!std::isfinite(rep.U_equiv_lower)) rep.U_equiv_lower = 0.0;
  return rep;
}

void write_trajectory_csv(const Simulation& sim, const std::filesystem::path& path) {
  const auto& tr = sim.trajectory;
  std::vector<std::string> head{"t"};
  for (int j = 1; j <= tr.modes(); ++j) head.push_back("a_" + std::to_string(j));
  head.insert(head.end(), {"norm_H", "U", "energy_residual"});
  std::string out = io::csv_row(head);
  for (int m = 0; m <= tr.intervals(); ++m) {
    const LedgerEntry& le = sim.ledger.entries.at(m);
    std::vector<std::string> row{io::format_double(le.t)};
    for (int j = 0; j < tr.modes(); ++j) row.push_back(io::format_double(tr.states(j, m)));
    row.push_back(io::format_double(std::sqrt(le.norm_H_sq)));
    row.push_back(io::format_double(le.U));
    row.push_back(io::format_double(le.energy_residual));
    out += io::csv_row(row);
  }
  io::atomic_write(path, out);
}

void write_ledger_csv(const EnergyLedger& ledger, const std::filesystem::path& path) {
  std::string out = io::csv_row({"t", "dt", "norm_H_sq", "dissipation", "boundary_dissipation", "work",
                                 "numerical_dissipation", "energy_residual", "U", "phi_integral",
                                 "s_integral"});
  for (const auto& e : ledger.entries)
    out += io::csv_row({io::format_double(e.t), io::format_double(e.dt), io::format_double(e.norm_H_sq),
                        io::format_double(e.dissipation), io::format_double(e.boundary_dissipation),
                        io::format_double(e.work), io::format_double(e.numerical_dissipation),
                        io::format_double(e.energy_residual), io::format_double(e.U),
                        io::format_double(e.phi_integral), io::format_double(e.s_integral)});
  io::atomic_write(path, out);
}

} // namespace rfluid
