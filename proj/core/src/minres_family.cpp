// SPDX-License-Identifier: Apache-2.0

#include "rsmar/minres_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "solver_support.hpp"

namespace rsmar {

namespace {

using detail::kFinalSystemSingularTol;
using detail::SolveContext;

// Full reorthogonalization against the stored Lanczos vectors; only used
// when the caller trades constant memory for orthogonality.
class LanczosBasis {
 public:
  explicit LanczosBasis(bool enabled) : enabled_(enabled) {}

  void push(const Vector& unit) {
    if (enabled_) basis_.push_back(unit);
  }

  void orthogonalize(Vector& v) const {
    if (!enabled_) return;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& q : basis_) v -= q.dot(v) * q;
    }
  }

 private:
  bool enabled_;
  std::vector<Vector> basis_;
};

Termination termination_for(StopMonitor mon) {
  return mon != StopMonitor::none ? Termination::converged : Termination::happy_breakdown;
}

}  // namespace

SolveReport minres_solve(const LinearOperator& a, const Vector& b, const Vector& x0,
                         const SolveOptions& opts) {
  SolveReport report;
  SolveContext ctx(a, b, x0, opts, report, false, false);
  if (ctx.trivially_solved()) {
    ctx.finish_trivial(true);
    return report;
  }
  const Index n = a.size();
  const double eps = std::numeric_limits<double>::epsilon();

  Vector x = x0;
  Vector r1 = ctx.r0();
  Vector r2 = ctx.r0();
  Vector y = ctx.r0();
  Vector w = Vector::Zero(n);
  Vector w1 = Vector::Zero(n);
  Vector w2 = Vector::Zero(n);

  double oldb = 0.0;
  double beta = ctx.beta1();
  double dbar = 0.0;
  double epsln = 0.0;
  double phibar = ctx.beta1();
  double cs = -1.0;
  double sn = 0.0;
  double tnorm2 = 0.0;
  LanczosBasis lanczos(opts.reorthogonalize);

  for (int k = 1;; ++k) {
    if (!ctx.budget_left()) {
      ctx.finish(x, Termination::maxit, StopMonitor::none, true);
      return report;
    }
    const Vector v = y / beta;
    lanczos.push(v);
    y = ctx.apply(v);
    const double av_norm = norm2(y);
    if (k >= 2) y -= (beta / oldb) * r1;
    const double alfa = v.dot(y);
    y -= (alfa / beta) * r2;
    lanczos.orthogonalize(y);
    r1 = r2;
    r2 = y;
    oldb = beta;
    beta = norm2(y);
    const bool broke = beta <= opts.breakdown_tol * std::max(1.0, av_norm);
    if (broke) beta = 0.0;
    tnorm2 += alfa * alfa + oldb * oldb + beta * beta;

    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;

    // ||A r_{k-1}|| becomes available one step late.
    const double arnorm = phibar * std::hypot(gbar, dbar);
    if (k >= 2 && ctx.patch_aresidual(k - 1, arnorm)) {
      ctx.finish(x, Termination::converged, StopMonitor::aresidual, true);
      return report;
    }

    double gamma = std::hypot(gbar, beta);
    if (broke) {
      report.detected_ell = k;
      if (gamma <= kFinalSystemSingularTol * std::sqrt(tnorm2)) {
        ctx.finish(x, Termination::singular_final_system, StopMonitor::none, true);
        return report;
      }
    }
    gamma = std::max(gamma, eps);
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    w1 = w2;
    w2 = w;
    w = (v - oldeps * w1 - delta * w2) / gamma;
    x += phi * w;

    const double res_est = std::abs(phibar);
    const StopMonitor mon = ctx.record([&] { return x; }, res_est, std::nullopt, res_est);
    if (mon != StopMonitor::none || broke) {
      ctx.finish(x, termination_for(mon), mon, true);
      return report;
    }
  }
}

SolveReport minares1_solve(const LinearOperator& a, const Vector& b, const Vector& x0,
                           const SolveOptions& opts) {
  SolveReport report;
  SolveContext ctx(a, b, x0, opts, report, true, true);
  if (ctx.trivially_solved()) {
    ctx.finish_trivial(true);
    return report;
  }
  const Index n = a.size();
  const double betahat1 = ctx.betahat1();

  Vector x = x0;
  Vector v_prev = Vector::Zero(n);         // v_{k-1}
  Vector v = ctx.ar0() / betahat1;         // v_k
  Vector w_prev = Vector::Zero(n);         // w_{k-1}
  Vector w = ctx.r0() / betahat1;          // w_k
  Vector p_prev2 = Vector::Zero(n);        // p_{k-2}
  Vector p_prev = Vector::Zero(n);         // p_{k-1}
  double c_prev = -1.0;
  double s_prev = 0.0;
  double lamtilde_prev = 0.0;
  double eta_prev2 = 0.0;                  // eta_{k-2}
  double beta_k = betahat1;
  double t_tilde = betahat1;
  double tscale = 0.0;
  LanczosBasis lanczos(opts.reorthogonalize);
  lanczos.push(v);

  for (int k = 1;; ++k) {
    if (!ctx.budget_left()) {
      ctx.finish(x, Termination::maxit, StopMonitor::none, true);
      return report;
    }
    Vector v_next = ctx.apply(v);
    const double av_norm = norm2(v_next);
    v_next -= beta_k * v_prev;
    const double alpha = v.dot(v_next);
    v_next -= alpha * v;
    lanczos.orthogonalize(v_next);
    double beta_next = norm2(v_next);
    const bool broke = beta_next <= opts.breakdown_tol * std::max(1.0, av_norm);
    if (broke) {
      beta_next = 0.0;
    } else {
      v_next /= beta_next;
      lanczos.push(v_next);
    }
    tscale = std::max({tscale, std::abs(alpha), beta_next});

    const double lambda_prev = c_prev * lamtilde_prev + s_prev * alpha;
    const double dtilde = s_prev * lamtilde_prev - c_prev * alpha;
    const double eta_prev = s_prev * beta_next;
    const double lamtilde = -c_prev * beta_next;
    const double delta = std::hypot(dtilde, beta_next);
    if (broke) {
      report.detected_ell = k;
      if (delta <= kFinalSystemSingularTol * tscale) {
        ctx.finish(x, Termination::singular_final_system, StopMonitor::none, true);
        return report;
      }
    }
    const double c = dtilde / delta;
    const double s = beta_next / delta;
    const double t_hat = c * t_tilde;
    t_tilde = s * t_tilde;
    const double rho = std::abs(t_tilde);

    const Vector p = (w - eta_prev2 * p_prev2 - lambda_prev * p_prev) / delta;
    x += t_hat * p;

    const StopMonitor mon = ctx.record([&] { return x; }, std::nullopt, rho, rho);
    if (mon != StopMonitor::none || broke) {
      ctx.finish(x, termination_for(mon), mon, true);
      return report;
    }

    Vector w_next = (v - beta_k * w_prev - alpha * w) / beta_next;
    w_prev = std::move(w);
    w = std::move(w_next);
    p_prev2 = std::move(p_prev);
    p_prev = p;
    v_prev = std::move(v);
    v = std::move(v_next);
    beta_k = beta_next;
    c_prev = c;
    s_prev = s;
    lamtilde_prev = lamtilde;
    eta_prev2 = eta_prev;
  }
}

}  // namespace rsmar
