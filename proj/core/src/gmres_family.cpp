// SPDX-License-Identifier: Apache-2.0

#include "rsmar/gmres_family.hpp"

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

}  // namespace

SolveReport rrgmres_solve(const LinearOperator& a, const Vector& b, const Vector& x0,
                          const SolveOptions& opts) {
  SolveReport report;
  SolveContext ctx(a, b, x0, opts, report, true, false);
  if (ctx.trivially_solved()) {
    ctx.finish_trivial(false);
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
        ctx.finish(x_start, Termination::maxit, StopMonitor::none, false);
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
      ctx.finish(x_start, Termination::converged, StopMonitor::aresidual, false);
      return report;
    }
    const double betahat = arn->seed_norm();
    std::vector<double> c{arn->basis()[0].dot(r)};
    double sumc2 = c[0] * c[0];
    HessenbergQr qr(c[0]);
    Vector z_prev(0);
    auto iterate = [&](const Vector& z) { return detail::combine(x_start, arn->basis(), z); };

    for (int j = 1; j <= cycle; ++j) {
      if (!ctx.budget_left()) {
        ctx.finish(iterate(z_prev), Termination::maxit, StopMonitor::none, false);
        return report;
      }
      const bool broke = arn->step(op) == StepOutcome::breakdown;
      const double c_next = broke ? 0.0 : arn->basis()[static_cast<std::size_t>(j)].dot(r);
      c.push_back(c_next);
      sumc2 += c_next * c_next;

      if (!opts.record_explicit && j > 1) {
        const Vector y = detail::hessenberg_times(*arn, j - 1, z_prev);
        Vector d = -detail::hessenberg_times(*arn, j, y);
        d[0] += betahat;
        if (ctx.patch_aresidual(ctx.iteration(), norm2(d))) {
          ctx.finish(iterate(z_prev), Termination::converged, StopMonitor::aresidual, false);
          return report;
        }
      }

      const double tail = qr.append_column(arn->column(j - 1), c_next);
      if (broke) report.detected_ell = arn->breakdown_step();
      const auto z = qr.solve(std::nullopt, broke ? kFinalSystemSingularTol : kMidRunSingularTol);
      if (!z) {
        ctx.finish(iterate(z_prev), Termination::singular_final_system, StopMonitor::none, false);
        return report;
      }
      z_prev = *z;

      const double res_est = std::sqrt(std::max(0.0, tail * tail + beta * beta - sumc2));
      auto make_x = cached([&, z = z_prev] { return iterate(z); });
      const StopMonitor mon = ctx.record(std::ref(make_x), res_est, std::nullopt, res_est);
      if (mon != StopMonitor::none || broke) {
        ctx.finish(make_x(), mon != StopMonitor::none ? Termination::converged
                                                      : Termination::happy_breakdown,
                   mon, false);
        return report;
      }
    }
    x_start = iterate(z_prev);
  }
}


SolveReport gmres_solve(const LinearOperator& a, const Vector& b, const Vector& x0,
                        const SolveOptions& opts) {
  SolveReport report;
  SolveContext ctx(a, b, x0, opts, report, false, false);
  if (ctx.trivially_solved()) {
    ctx.finish_trivial(true);
    return report;
  }
  const LinearOperator op = ctx.counted();
  const int cycle = opts.restart.value_or(opts.maxit);

  Vector x_start = x0;
  Vector r = ctx.r0();
  for (bool first = true;; first = false) {
    if (!first) {
      if (!ctx.budget_left()) {
        ctx.finish(x_start, Termination::maxit, StopMonitor::none, true);
        return report;
      }
      r = b - ctx.apply(x_start);
    }
    std::optional<ArnoldiState> arn;
    try {
      arn = ArnoldiState::init(r, opts.breakdown_tol, opts.reorthogonalize);
    } catch (const ZeroSeedError&) {
      ctx.finish(x_start, Termination::converged, StopMonitor::residual, true);
      return report;
    }
    HessenbergQr qr(arn->seed_norm());
    Vector z_prev(0);
    auto iterate = [&](const Vector& z) { return detail::combine(x_start, arn->basis(), z); };

    for (int j = 1; j <= cycle; ++j) {
      if (!ctx.budget_left()) {
        ctx.finish(iterate(z_prev), Termination::maxit, StopMonitor::none, true);
        return report;
      }
      // Small residual vector of iterate j-1: r_{j-1} = V_j g.
      Vector g;
      if (!opts.record_explicit && j > 1) {
        Vector e = Vector::Zero(j);
        e[j - 1] = qr.rhs()[j - 1];
        g = qr.apply_q(e);
      }
      const bool broke = arn->step(op) == StepOutcome::breakdown;
      if (!opts.record_explicit && j > 1) {
        const double ar = norm2(detail::hessenberg_times(*arn, j, g));
        if (ctx.patch_aresidual(ctx.iteration(), ar)) {
          ctx.finish(iterate(z_prev), Termination::converged, StopMonitor::aresidual, true);
          return report;
        }
      }
      const double tail = qr.append_column(arn->column(j - 1));
      if (broke) report.detected_ell = arn->breakdown_step();
      const auto z = qr.solve(std::nullopt, broke ? kFinalSystemSingularTol : kMidRunSingularTol);
      if (!z) {
        // Singular H_ell: b is not in range(A) and x_{ell-1} is a least
        // squares solution.
        ctx.finish(iterate(z_prev), Termination::singular_final_system, StopMonitor::none, true);
        return report;
      }
      z_prev = *z;
      auto make_x = cached([&, z = z_prev] { return iterate(z); });
      const StopMonitor mon = ctx.record(std::ref(make_x), tail, std::nullopt, tail);
      if (mon != StopMonitor::none || broke) {
        ctx.finish(make_x(), mon != StopMonitor::none ? Termination::converged
                                                      : Termination::happy_breakdown,
                   mon, true);
        return report;
      }
    }
    x_start = iterate(z_prev);
  }
}

SolveReport dgmres_solve(const LinearOperator& a, const Vector& b, const Vector& x0,
                         const SolveOptions& opts) {
  return detail::two_level_solve(a, b, x0, opts, true);
}

}  // namespace rsmar
