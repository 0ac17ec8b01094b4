// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>

#include "support.hpp"

using namespace rsmar;
using rsmar::test::final_iterate;
using rsmar::test::mat;
using rsmar::test::nonincreasing;
using rsmar::test::rel_err;
using rsmar::test::small_system;
using rsmar::test::tight;
using rsmar::test::vec;

namespace {

const DenseMatrix kProjector = mat(2, 2, {1, 0, 0, 0});

// x_{ell-1} for symmetric A, x0 = 0 and b outside range(A): the residual
// polynomial vanishes at every nonzero eigenvalue, which leaves
// A^+ b + (sum 1/lambda_j) b_N.
Vector last_iterate_closed_form(const DenseMatrix& a, const DenseMatrix& pinv, const Vector& b) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(a);
  const double cut = 1e-10 * eig.eigenvalues().cwiseAbs().maxCoeff();
  double inv_sum = 0.0;
  for (Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double lam = eig.eigenvalues()[i];
    if (std::abs(lam) > cut) inv_sum += 1.0 / lam;
  }
  const Vector bn = b - a * (pinv * b);
  return pinv * b + inv_sum * bn;
}

}  // namespace

TEST_CASE("identity systems converge in one iteration") {
  const LinearOperator id3(DenseMatrix(DenseMatrix::Identity(3, 3)));
  const LinearOperator id2(DenseMatrix(DenseMatrix::Identity(2, 2)));
  const Vector b3 = vec({1, 2, 3});
  const Vector b2 = vec({1, 2});
  for (Method m : all_methods()) {
    CAPTURE(to_string(m));
    const auto r3 = solve(m, id3, b3, Vector::Zero(3));
    CHECK(r3.iterations == 1);
    CHECK((r3.solution - b3).norm() <= 1e-14);
    const auto r2 = solve(m, id2, b2, Vector::Zero(2));
    CHECK((r2.solution - b2).norm() <= 1e-14);
  }
  CHECK((minres_solve(id2, vec({5, 6}), Vector::Zero(2)).solution - vec({5, 6})).norm() <= 1e-14);
}

TEST_CASE("projector with inconsistent b") {
  const LinearOperator a(kProjector);
  const Vector b = vec({1, 1});
  const Vector z = Vector::Zero(2);

  for (Method m : {Method::gmres, Method::rsmar1, Method::rsmar2, Method::minres, Method::minares}) {
    CAPTURE(to_string(m));
    const auto rep = solve(m, a, b, z);
    CHECK((rep.solution - vec({1, 1})).norm() <= 1e-14);
    REQUIRE(rep.lifted_solution);
    CHECK((*rep.lifted_solution - vec({1, 0})).norm() <= 1e-14);
    CHECK(rep.aresidual_history.back() <= 1e-15);
  }
  for (Method m : {Method::rrgmres, Method::dgmres}) {
    CAPTURE(to_string(m));
    const auto rep = solve(m, a, b, z);
    CHECK((rep.solution - vec({1, 0})).norm() <= 1e-14);
    CHECK_FALSE(rep.lifted_solution);
  }
  for (Method m : {Method::rsmar1, Method::rsmar2, Method::minares}) {
    CHECK(solve(m, a, b, z).estimate_history[1] <= 1e-15);
  }
}

TEST_CASE("diag(2,-1,0)") {
  const LinearOperator a(mat(3, 3, {2, 0, 0, 0, -1, 0, 0, 0, 0}));
  const Vector b = vec({1, 1, 1});
  const Vector z = Vector::Zero(3);
  const Vector pinv_b = vec({0.5, -1, 0});
  const auto r2 = rsmar2_solve(a, b, z);
  const auto ma = minares1_solve(a, b, z);
  CHECK((ma.solution - r2.solution).cwiseAbs().maxCoeff() <= 1e-9);
  REQUIRE(ma.lifted_solution);
  CHECK((*ma.lifted_solution - pinv_b).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK((*r2.lifted_solution - pinv_b).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK((dgmres_solve(a, b, z).solution - pinv_b).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((rrgmres_solve(a, b, z).solution - pinv_b).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("RSMAR-I and RSMAR-II agree on diag(1,2,0)") {
  const LinearOperator a(mat(3, 3, {1, 0, 0, 0, 2, 0, 0, 0, 0}));
  const Vector b = vec({1, 1, 1});
  const auto r1 = rsmar1_solve(a, b, Vector::Zero(3));
  const auto r2 = rsmar2_solve(a, b, Vector::Zero(3));
  CHECK((r1.solution - r2.solution).cwiseAbs().maxCoeff() <= 1e-10);
  // Brute force: x = t1 b + t2 A b minimizing ||A(b - A x)||.
  DenseMatrix basis(3, 2);
  basis << b, a(b);
  const DenseMatrix m = mat(3, 3, {1, 0, 0, 0, 4, 0, 0, 0, 0}) * basis;
  const Vector t = m.colPivHouseholderQr().solve(a(b));
  CHECK((r2.solution - basis * t).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("random consistent systems reach the pseudoinverse solution") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RandomSpec spec{20, 15, 1e2, seed};
    const auto sys = make_random_range_symmetric(spec);
    Rng rng(seed + 3);
    const Vector b = sys.a * random_gaussian_vector(20, rng);
    const Vector exact = sys.pinv * b;
    const LinearOperator op(sys.a);
    for (Method m : {Method::gmres, Method::rrgmres, Method::dgmres, Method::rsmar1, Method::rsmar2}) {
      CAPTURE(to_string(m));
      CHECK(rel_err(final_iterate(solve(m, op, b, Vector::Zero(20), tight(true, 20))), exact) <= 1e-8);
    }
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RandomSpec spec{30, 20, 1e2, seed};
    const auto sys = make_random_symmetric_singular(spec);
    Rng rng(seed + 3);
    const Vector b = sys.a * random_gaussian_vector(30, rng);
    const LinearOperator op(sys.a);
    for (Method m : {Method::minres, Method::minares}) {
      CAPTURE(to_string(m));
      CHECK(rel_err(final_iterate(solve(m, op, b, Vector::Zero(30), tight(true, 30))), sys.pinv * b) <= 1e-7);
    }
  }
}

TEST_CASE("random inconsistent systems reach the pseudoinverse solution") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RandomSpec spec{20, 15, 1e2, seed};
    const auto sys = make_random_range_symmetric(spec);
    Rng rng(seed + 5);
    const Vector b = random_gaussian_vector(20, rng);
    const Vector exact = sys.pinv * b;
    const LinearOperator op(sys.a);
    for (Method m : {Method::gmres, Method::rrgmres, Method::dgmres, Method::rsmar2}) {
      CAPTURE(to_string(m));
      CHECK(rel_err(final_iterate(solve(m, op, b, Vector::Zero(20), tight(false, 20))), exact) <= 1e-8);
    }
  }
}

TEST_CASE("DGMRES on the convection-diffusion problem with the x+y right-hand side") {
  const BvpSpec spec{30, 10.0};
  const auto a = make_bvp_matrix(spec);
  const Vector b = make_bvp_rhs(spec, BvpRhsKind::inconsistent_xy);
  const LinearOperator op(a);
  const auto rep = dgmres_solve(op, b, Vector::Zero(b.size()));
  const Vector exact = pseudoinverse_solve(a.to_dense(), b);
  CHECK(norm2(a.apply(b - a.apply(rep.solution))) <= 1e-8 * rep.initial_aresidual);
  CHECK(rel_err(rep.solution, exact) <= 1e-6);
}

TEST_CASE("residual histories are nonincreasing") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const bool consistent = seed % 2 == 0;
    const auto s = small_system(seed, false, consistent);
    const LinearOperator op(s.sys.a);
    const Index n = s.b.size();
    const Vector z = Vector::Zero(n);
    const auto opts = tight(consistent, n);
    CHECK(nonincreasing(gmres_solve(op, s.b, z, opts).residual_history));
    CHECK(nonincreasing(rrgmres_solve(op, s.b, z, opts).residual_history));
    CHECK(nonincreasing(dgmres_solve(op, s.b, z, opts).aresidual_history));
    CHECK(nonincreasing(rsmar1_solve(op, s.b, z, opts).aresidual_history));
    CHECK(nonincreasing(rsmar2_solve(op, s.b, z, opts).aresidual_history));
  }
}

TEST_CASE("A-residual estimates track explicit values") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = small_system(seed, seed % 2 == 0, false);
    const LinearOperator op(s.sys.a);
    const Index n = s.b.size();
    std::vector<Method> methods{Method::rsmar1, Method::rsmar2};
    if (seed % 2 == 0) methods.push_back(Method::minares);
    for (Method m : methods) {
      CAPTURE(to_string(m));
      const auto rep = solve(m, op, s.b, Vector::Zero(n), tight(false, n));
      for (std::size_t k = 0; k < rep.estimate_history.size(); ++k) {
        CHECK(std::abs(rep.estimate_history[k] - rep.aresidual_history[k]) <=
              1e-8 * rep.initial_aresidual);
      }
    }
  }
}

TEST_CASE("GMRES and RSMAR-II end at the same least squares solution") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = small_system(seed, false, false);
    const LinearOperator op(s.sys.a);
    const Index n = s.b.size();
    const auto g = gmres_solve(op, s.b, Vector::Zero(n), tight(false, n));
    const auto r = rsmar2_solve(op, s.b, Vector::Zero(n), tight(false, n));
    CHECK(rel_err(r.solution, g.solution) <= 1e-7);
    // A^2 x = A b.
    const Vector ab = s.sys.a * s.b;
    CHECK((s.sys.a * (s.sys.a * r.solution) - ab).norm() <= 1e-8 * ab.norm());
  }
}

TEST_CASE("MINARES-I matches the closed-form last iterate") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = small_system(seed, true, false);
    const LinearOperator op(s.sys.a);
    const Index n = s.b.size();
    const Vector exact_last = last_iterate_closed_form(s.sys.a, s.sys.pinv, s.b);
    const auto ma = minares1_solve(op, s.b, Vector::Zero(n), tight(false, n));
    const auto r2 = rsmar2_solve(op, s.b, Vector::Zero(n), tight(false, n));
    CHECK(rel_err(ma.solution, exact_last) <= 1e-7);
    CHECK(rel_err(r2.solution, ma.solution) <= 1e-7);
    REQUIRE(ma.lifted_solution);
    CHECK(rel_err(*ma.lifted_solution, s.exact) <= 1e-7);
  }
}

TEST_CASE("lifting GMRES with a general x0 projects x0 onto the solution set") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto s = small_system(seed, false, false);
    const Index n = s.b.size();
    Rng rng(seed + 41);
    const Vector x0 = random_gaussian_vector(n, rng);
    const LinearOperator op(s.sys.a);
    const auto rep = gmres_solve(op, s.b, x0, tight(false, n));
    REQUIRE(rep.lifted_solution);
    const Vector expected = s.exact + x0 - s.sys.pinv * (s.sys.a * x0);
    CHECK(rel_err(*rep.lifted_solution, expected) <= 1e-7);
  }
}

TEST_CASE("skew-symmetric GMRES needs no lift") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Index n = 11 + 2 * static_cast<Index>(seed % 10);
    const DenseMatrix a = make_random_skew_singular(n, seed);
    Rng rng(seed + 9);
    const Vector b = random_gaussian_vector(n, rng);
    const auto rep = gmres_solve(LinearOperator(a), b, Vector::Zero(n), tight(false, n));
    const Vector exact = pseudoinverse_solve(a, b);
    CHECK(rel_err(rep.solution, exact) <= 1e-7);
    REQUIRE(rep.lifted_solution);
    CHECK((*rep.lifted_solution - rep.solution).norm() <= 1e-9 * rep.solution.norm());
  }
}

TEST_CASE("termination bookkeeping") {
  const LinearOperator id(DenseMatrix(DenseMatrix::Identity(4, 4)));
  const Vector b = vec({1, 2, 3, 4});
  for (Method m : all_methods()) {
    CAPTURE(to_string(m));
    const auto rep = solve(m, id, b, b);
    CHECK(rep.iterations == 0);
    CHECK(rep.solution == b);
    CHECK(rep.residual_history.size() == 1);
  }

  RandomSpec spec{40, 40, 1e3, 7};
  const auto sys = make_random_range_symmetric(spec);
  Rng rng(3);
  const Vector rhs = random_gaussian_vector(40, rng);
  SolveOptions few;
  few.maxit = 3;
  for (Method m : {Method::gmres, Method::rrgmres, Method::dgmres, Method::rsmar1, Method::rsmar2}) {
    CAPTURE(to_string(m));
    const auto rep = solve(m, LinearOperator(sys.a), rhs, Vector::Zero(40), few);
    CHECK(rep.termination == Termination::maxit);
    CHECK(rep.iterations == 3);
    CHECK(rep.residual_history.size() == 4);
    CHECK(rep.aresidual_history.size() == 4);
    CHECK(rep.matvec_history.back() == rep.matvec_count);
  }
}

TEST_CASE("matvec counts") {
  RandomSpec spec{30, 30, 10.0, 11};
  const auto sys = make_random_range_symmetric(spec);
  Rng rng(5);
  const Vector b = random_gaussian_vector(30, rng);
  std::int64_t calls = 0;
  const LinearOperator counted(30, [&](const Vector& v) {
    ++calls;
    return Vector(sys.a * v);
  });
  SolveOptions o;
  o.record_explicit = false;
  // Counted: A x0, A r0 when the method uses it, one product per Arnoldi
  // step. Not counted: A r0 for GMRES and the final residual for lifting.
  const auto rep = gmres_solve(counted, b, Vector::Zero(30), o);
  CHECK(rep.matvec_count == 1 + rep.iterations);
  CHECK(calls == rep.matvec_count + 2);
  calls = 0;
  const auto rep2 = rsmar2_solve(counted, b, Vector::Zero(30), o);
  CHECK(rep2.matvec_count == 2 + rep2.iterations);
  CHECK(calls == rep2.matvec_count + 1);
}

TEST_CASE("estimate mode reaches the same solution") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = small_system(seed, false, true);
    const LinearOperator op(s.sys.a);
    const Index n = s.b.size();
    auto o = tight(true, n);
    o.record_explicit = false;
    for (Method m : {Method::gmres, Method::rrgmres, Method::dgmres, Method::rsmar2}) {
      CAPTURE(to_string(m));
      CHECK(rel_err(final_iterate(solve(m, op, s.b, Vector::Zero(n), o)), s.exact) <= 1e-7);
    }
  }
}

TEST_CASE("restarted solvers converge on well-conditioned nonsingular systems") {
  Rng rng(8);
  const DenseMatrix a = 2.0 * DenseMatrix::Identity(40, 40) +
                        random_gaussian_matrix(40, 40, rng) / (2.0 * std::sqrt(40.0));
  const Vector b = random_gaussian_vector(40, rng);
  const Vector exact = a.lu().solve(b);
  SolveOptions o;
  o.restart = 8;
  o.tol = 1e-10;
  o.maxit = 400;
  for (Method m : {Method::gmres, Method::rrgmres, Method::dgmres, Method::rsmar1, Method::rsmar2}) {
    CAPTURE(to_string(m));
    const auto rep = solve(m, LinearOperator(a), b, Vector::Zero(40), o);
    CHECK(rep.termination == Termination::converged);
    CHECK(rel_err(rep.solution, exact) <= 1e-7);
  }
}

TEST_CASE("method names round trip") {
  for (Method m : all_methods()) CHECK(method_from_string(to_string(m)) == m);
  CHECK_FALSE(method_from_string("cg"));
  CHECK(requires_symmetric(Method::minres));
  CHECK(requires_symmetric(Method::minares));
  CHECK_FALSE(requires_symmetric(Method::rsmar2));
}
