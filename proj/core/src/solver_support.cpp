// SPDX-License-Identifier: Apache-2.0

#include "solver_support.hpp"

#include <algorithm>
#include <cmath>

#include "rsmar/lifting.hpp"

namespace rsmar::detail {

SolveContext::SolveContext(const LinearOperator& a, const Vector& b, const Vector& x0,
                           const SolveOptions& opts, SolveReport& report, bool ar0_counted,
                           bool native_is_aresidual)
    : a_(a), b_(b), x0_(x0), opts_(opts), report_(report) {
  opts_.validate();
  if (b.size() != a.size() || x0.size() != a.size()) {
    throw DimensionError("solve: operator, right-hand side and initial guess sizes differ");
  }
  r0_ = b_ - apply(x0_);
  ar0_ = a_.apply(r0_);
  if (ar0_counted) ++matvecs_;
  beta1_ = norm2(r0_);
  betahat1_ = norm2(ar0_);

  report_ = SolveReport{};
  report_.explicit_histories = opts_.record_explicit;
  report_.initial_residual = beta1_;
  report_.initial_aresidual = betahat1_;
  report_.residual_history.push_back(beta1_);
  report_.aresidual_history.push_back(betahat1_);
  report_.estimate_history.push_back(native_is_aresidual ? betahat1_ : beta1_);
  report_.matvec_history.push_back(matvecs_);
}

bool SolveContext::trivially_solved() const {
  return beta1_ == 0.0 || betahat1_ <= opts_.breakdown_tol;
}

void SolveContext::finish_trivial(bool allow_lift) {
  finish(x0_, Termination::converged,
         beta1_ == 0.0 ? StopMonitor::residual : StopMonitor::aresidual, allow_lift);
}

StopMonitor SolveContext::check(double res, double ares) const {
  if (res <= opts_.tol * beta1_) return StopMonitor::residual;
  if (ares <= opts_.tol * betahat1_) return StopMonitor::aresidual;
  return StopMonitor::none;
}

StopMonitor SolveContext::record(const std::function<Vector()>& make_x,
                                 std::optional<double> res_estimate,
                                 std::optional<double> ares_estimate, double native_estimate) {
  ++iteration_;
  double res = kNaN;
  double ares = kNaN;
  if (opts_.record_explicit) {
    const Vector x = make_x();
    const Vector r = b_ - a_.apply(x);
    res = norm2(r);
    ares = norm2(a_.apply(r));
  } else {
    res = res_estimate.value_or(kNaN);
    ares = ares_estimate.value_or(kNaN);
  }
  report_.residual_history.push_back(res);
  report_.aresidual_history.push_back(ares);
  report_.estimate_history.push_back(native_estimate);
  report_.matvec_history.push_back(matvecs_);
  return check(res, ares);
}

bool SolveContext::patch_aresidual(int k, double value) {
  if (opts_.record_explicit) return false;
  auto& h = report_.aresidual_history;
  if (k < 0 || static_cast<std::size_t>(k) >= h.size()) return false;
  if (std::isnan(h[static_cast<std::size_t>(k)])) h[static_cast<std::size_t>(k)] = value;
  return value <= opts_.tol * betahat1_;
}

void SolveContext::rollback_last() {
  if (iteration_ == 0) return;
  --iteration_;
  report_.residual_history.pop_back();
  report_.aresidual_history.pop_back();
  report_.estimate_history.pop_back();
  report_.matvec_history.pop_back();
}

void SolveContext::finish(const Vector& x, Termination termination, StopMonitor monitor,
                          bool allow_lift) {
  report_.solution = x;
  report_.iterations = iteration_;
  report_.termination = termination;
  report_.monitor = monitor;
  report_.matvec_count = matvecs_;
  if (!allow_lift || beta1_ == 0.0) return;
  const Vector r = b_ - a_.apply(x);
  if (norm2(r) > std::max(opts_.tol, kLiftFloor) * beta1_) {
    report_.lifted_solution = lift(x, x0_, r);
  }
}

Vector hessenberg_times(const ArnoldiState& arnoldi, int k, const Vector& y) {
  Vector out = Vector::Zero(k + 1);
  for (int j = 0; j < k; ++j) {
    const Vector& col = arnoldi.column(j);
    out.head(col.size()) += y[j] * col;
  }
  return out;
}

Vector combine(const Vector& x_start, const std::vector<Vector>& basis, const Vector& z,
               std::size_t offset) {
  Vector x = x_start;
  for (Index j = 0; j < z.size(); ++j) x += z[j] * basis[offset + static_cast<std::size_t>(j)];
  return x;
}

}  // namespace rsmar::detail
