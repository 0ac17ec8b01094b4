// SPDX-License-Identifier: Apache-2.0
//
// Solver and kernel timings on the convection-diffusion problem and on
// random range-symmetric systems.

#include <benchmark/benchmark.h>

#include <rsmar/rsmar.hpp>

using namespace rsmar;

namespace {

void BM_BvpMatvec(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto a = make_bvp_matrix(BvpSpec{m, 10.0});
  Rng rng(1);
  const Vector x = random_uniform_vector(a.rows(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(a.apply(x));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.nonzeros()));
}
BENCHMARK(BM_BvpMatvec)->Arg(30)->Arg(100)->Arg(300);

void BM_BvpSolve(benchmark::State& state, Method method, BvpRhsKind kind) {
  const BvpSpec spec{static_cast<int>(state.range(0)), 10.0};
  const LinearOperator op(make_bvp_matrix(spec));
  const Vector b = make_bvp_rhs(spec, kind, 1);
  const Vector x0 = Vector::Zero(b.size());
  SolveOptions opts;
  opts.tol = 1e-8;
  opts.maxit = 2000;
  opts.record_explicit = false;
  SolveReport rep;
  for (auto _ : state) {
    rep = solve(method, op, b, x0, opts);
    benchmark::DoNotOptimize(rep.solution.data());
  }
  state.counters["iters"] = rep.iterations;
  state.counters["matvecs"] = static_cast<double>(rep.matvec_count);
}

void BM_RandomSolve(benchmark::State& state, Method method) {
  const Index n = state.range(0);
  const RandomSpec spec{n, (3 * n) / 4, 1e2, 7};
  const GeneratedSystem sys = method == Method::minres || method == Method::minares
                                  ? make_random_symmetric_singular(spec)
                                  : make_random_range_symmetric(spec);
  const LinearOperator op(sys.a);
  Rng rng(8);
  const Vector b = sys.a * random_gaussian_vector(n, rng);
  const Vector x0 = Vector::Zero(n);
  SolveOptions opts;
  opts.maxit = static_cast<int>(4 * n);
  opts.record_explicit = false;
  SolveReport rep;
  for (auto _ : state) {
    rep = solve(method, op, b, x0, opts);
    benchmark::DoNotOptimize(rep.solution.data());
  }
  state.counters["iters"] = rep.iterations;
}

void BM_DenseOracle(benchmark::State& state) {
  const Index n = state.range(0);
  const auto sys = make_random_range_symmetric({n, (3 * n) / 4, 1e3, 3});
  Rng rng(2);
  const Vector b = random_gaussian_vector(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(pseudoinverse_solve(sys.a, b));
}
BENCHMARK(BM_DenseOracle)->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_CAPTURE(BM_BvpSolve, gmres_consistent, Method::gmres, BvpRhsKind::consistent_random)->Arg(30)->Arg(60);
BENCHMARK_CAPTURE(BM_BvpSolve, rrgmres_xy, Method::rrgmres, BvpRhsKind::inconsistent_xy)->Arg(30)->Arg(60);
BENCHMARK_CAPTURE(BM_BvpSolve, dgmres_xy, Method::dgmres, BvpRhsKind::inconsistent_xy)->Arg(30)->Arg(60);
BENCHMARK_CAPTURE(BM_BvpSolve, rsmar1_xy, Method::rsmar1, BvpRhsKind::inconsistent_xy)->Arg(30)->Arg(60);
BENCHMARK_CAPTURE(BM_BvpSolve, rsmar2_xy, Method::rsmar2, BvpRhsKind::inconsistent_xy)->Arg(30)->Arg(60);

BENCHMARK_CAPTURE(BM_RandomSolve, gmres, Method::gmres)->Arg(200);
BENCHMARK_CAPTURE(BM_RandomSolve, rsmar2, Method::rsmar2)->Arg(200);
BENCHMARK_CAPTURE(BM_RandomSolve, minres, Method::minres)->Arg(200);
BENCHMARK_CAPTURE(BM_RandomSolve, minares, Method::minares)->Arg(200);

BENCHMARK_MAIN();
