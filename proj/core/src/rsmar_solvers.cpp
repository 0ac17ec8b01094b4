// SPDX-License-Identifier: Apache-2.0

#include "rsmar/rsmar_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "rsmar/arnoldi.hpp"
#include "rsmar/hessenberg_qr.hpp"
#include "solver_support.hpp"
#include "two_level.hpp"

namespace rsmar {

namespace {

using detail::cached;
using detail::kFinalSystemSingularTol;
using detail::kMidRunSingularTol;
using detail::SolveContext;

Termination termination_for(StopMonitor mon) {
  return mon != StopMonitor::none ? Termination::converged : Termination::happy_breakdown;
}

}  // namespace

SolveReport rsmar1_solve(const LinearOperator& a, const Vector& b, const Vector& x0,
                         const SolveOptions& opts) {
  SolveReport report;
  SolveContext ctx(a, b, x0, opts, report, true, true);
  if (ctx.trivially_solved()) {
    ctx.finish_trivial(true);
    return report;
  }
  const LinearOperator op = ctx.counted();
  const int cycle = opts.restart.value_or(opts.maxit);

  Vector x_start = x0;
  Vector r = ctx.r0();
  Vector ar = ctx.ar0();
  for (bool first = true;; first = false) {
    if (!first) {
      if (!ctx.budget_left()) {
        ctx.finish(x_start, Termination::maxit, StopMonitor::none, true);
        return report;
      }
      r = b - ctx.apply(x_start);
      ar = ctx.apply(r);
    }
    const double beta = norm2(r);
    std::optional<ArnoldiState> arn;
    try {
      arn = ArnoldiState::init(ar, opts.breakdown_tol, opts.reorthogonalize);
    } catch (const ZeroSeedError&) {
      ctx.finish(x_start, Termination::converged, StopMonitor::aresidual, true);
      return report;
    }
    const double betahat = arn->seed_norm();
    HessenbergQr qr(betahat);
    std::vector<double> c{arn->basis()[0].dot(r)};

    // x = x_start + [r, V_{k-1}] Rtilde_k^{-1} zhat with
    // Rtilde_k = [betahat e_1, H_{k,k-1}].
    auto iterate = [&](const Vector& zhat) {
      const int k = static_cast<int>(zhat.size());
      if (k == 0) return x_start;
      DenseMatrix rt = DenseMatrix::Zero(k, k);
      rt(0, 0) = betahat;
      for (int i = 1; i < k; ++i) rt.col(i).head(i + 1) = arn->column(i - 1).head(i + 1);
      const auto y = solve_upper(rt, zhat, k, 0.0);
      Vector x = x_start + (*y)[0] * r;
      return detail::combine(x, arn->basis(), y->tail(k - 1));
    };
    Vector zhat_prev(0);

    for (int j = 1; j <= cycle; ++j) {
      if (!ctx.budget_left()) {
        ctx.finish(iterate(zhat_prev), Termination::maxit, StopMonitor::none, true);
        return report;
      }
      const bool broke = arn->step(op) == StepOutcome::breakdown;
      c.push_back(broke ? 0.0 : arn->basis()[static_cast<std::size_t>(j)].dot(r));
      const double rho = qr.append_column(arn->column(j - 1));
      if (broke) report.detected_ell = arn->breakdown_step();
      const auto zhat = qr.solve(std::nullopt, broke ? kFinalSystemSingularTol : kMidRunSingularTol);
      if (!zhat) {
        ctx.finish(iterate(zhat_prev), Termination::singular_final_system, StopMonitor::none, true);
        return report;
      }
      zhat_prev = *zhat;

      // r_j = r - V_j zhat.
      double proj = 0.0;
      double mismatch = 0.0;
      for (int i = 0; i < j; ++i) {
        const double ci = c[static_cast<std::size_t>(i)];
        proj += ci * ci;
        mismatch += (ci - zhat_prev[i]) * (ci - zhat_prev[i]);
      }
      const double res_est = std::sqrt(std::max(0.0, mismatch + beta * beta - proj));

      auto make_x = cached([&, z = zhat_prev] { return iterate(z); });
      const StopMonitor mon = ctx.record(std::ref(make_x), res_est, rho, rho);
      if (mon != StopMonitor::none || broke) {
        ctx.finish(make_x(), termination_for(mon), mon, true);
        return report;
      }
    }
    x_start = iterate(zhat_prev);
  }
}

SolveReport rsmar2_solve(const LinearOperator& a, const Vector& b, const Vector& x0,
                         const SolveOptions& opts) {
  return detail::two_level_solve(a, b, x0, opts, false);
}

namespace detail {

SolveReport two_level_solve(const LinearOperator& a, const Vector& b, const Vector& x0,
                            const SolveOptions& opts, bool seed_is_aresidual) {
  const bool lifted = !seed_is_aresidual;
  SolveReport report;
  SolveContext ctx(a, b, x0, opts, report, true, true);
  if (ctx.trivially_solved()) {
    ctx.finish_trivial(lifted);
    return report;
  }
  const LinearOperator op = ctx.counted();
  const int cycle = opts.restart.value_or(opts.maxit);

  Vector x_start = x0;
  Vector r = ctx.r0();
  Vector ar = ctx.ar0();
  for (bool first = true;; first = false) {
    if (!first) {
      if (!ctx.budget_left()) {
        ctx.finish(x_start, Termination::maxit, StopMonitor::none, lifted);
        return report;
      }
      r = b - ctx.apply(x_start);
      if (seed_is_aresidual) ar = ctx.apply(r);
    }
    const double beta = norm2(r);
    std::optional<ArnoldiState> arn;
    try {
      arn = ArnoldiState::init(seed_is_aresidual ? ar : r, opts.breakdown_tol,
                               opts.reorthogonalize);
    } catch (const ZeroSeedError&) {
      ctx.finish(x_start, Termination::converged,
                 seed_is_aresidual ? StopMonitor::aresidual : StopMonitor::residual, lifted);
      return report;
    }
    const double seed_norm = arn->seed_norm();
    // Projections c_i = v_i^T r; only the first is nonzero for seed r.
    std::vector<double> c{seed_is_aresidual ? arn->basis()[0].dot(r) : seed_norm};
    double sumc2 = c[0] * c[0];
    auto project = [&](int i) {
      const double ci = seed_is_aresidual && !arn->broke_down()
                            ? arn->basis()[static_cast<std::size_t>(i)].dot(r)
                            : 0.0;
      c.push_back(ci);
      sumc2 += ci * ci;
    };

    arn->step(op);
    project(1);
    const Vector& first_col = arn->column(0);

    // Inner QR of H_{k+1,k} against c; outer QR against the A-residual
    // right-hand side in the basis V_{k+2}.
    HessenbergQr inner(c[0]);
    BandedQr outer = seed_is_aresidual
                         ? BandedQr(seed_norm, 0.0)
                         : BandedQr(seed_norm * first_col[0], seed_norm * first_col[1]);
    Vector z_prev(0);
    auto iterate = [&](const Vector& z) { return detail::combine(x_start, arn->basis(), z); };

    for (int k = 1; k <= cycle; ++k) {
      if (!ctx.budget_left()) {
        ctx.finish(iterate(z_prev), Termination::maxit, StopMonitor::none, lifted);
        return report;
      }
      // Column k+1 of H; a zero column once the process has terminated.
      Vector next;
      if (!arn->broke_down()) {
        arn->step(op);
        project(k + 1);
        next = arn->column(k);
      } else {
        next = Vector::Zero(k + 2);
      }
      const bool final_step = arn->breakdown_step() == k;

      inner.append_column(arn->column(k - 1), c[static_cast<std::size_t>(k)]);
      if (final_step) {
        report.detected_ell = k;
        const double max_diag = inner.r().diagonal().cwiseAbs().maxCoeff();
        if (inner.last_diagonal() <= kFinalSystemSingularTol * max_diag) {
          ctx.finish(iterate(z_prev), Termination::singular_final_system, StopMonitor::none,
                     lifted);
          return report;
        }
      }

      // Column k of H_{k+2,k+1} Q_{k+1} [I_k; 0].
      Vector e = Vector::Zero(k + 1);
      e[k - 1] = 1.0;
      const Vector q = inner.apply_q(e);
      Vector col = Vector::Zero(k + 2);
      for (int i = 0; i < k; ++i) col.head(i + 2) += q[i] * arn->column(i);
      col += q[k] * next;
      outer.append_column(col);
      const double rho = outer.residual();

      const double guard = final_step ? kFinalSystemSingularTol : kMidRunSingularTol;
      const auto ztilde = outer.solve(guard);
      const auto z = ztilde ? solve_upper(inner.r(), *ztilde, k, guard) : std::nullopt;
      if (!z) {
        ctx.finish(iterate(z_prev), Termination::singular_final_system, StopMonitor::none,
                   lifted);
        return report;
      }
      z_prev = *z;

      // ||c - H_{k+1,k} z|| = ||(t_{1:k} - R z, t_{k+1})||, plus the part of
      // r outside span(V_{k+1}).
      const Vector& t = inner.rhs();
      const double fit = std::hypot(norm2(t.head(k) - *ztilde), t[k]);
      const double res_est = std::sqrt(std::max(0.0, fit * fit + beta * beta - sumc2));

      auto make_x = cached([&, zz = z_prev] { return iterate(zz); });
      const StopMonitor mon = ctx.record(std::ref(make_x), res_est, rho, rho);
      if (mon != StopMonitor::none || final_step) {
        ctx.finish(make_x(), termination_for(mon), mon, lifted);
        return report;
      }
    }
    x_start = iterate(z_prev);
  }
}

}  // namespace detail

}  // namespace rsmar
