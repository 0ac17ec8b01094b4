// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "support.hpp"

using namespace rsmar;
using rsmar::test::vec;

TEST_CASE("matvec on small matrices") {
  CHECK(matvec(SparseMatrix::identity(3), vec({1, 2, 3})) == vec({1, 2, 3}));

  const auto a = SparseMatrix::from_triplets(2, 2, {{0, 1, 1.0}, {1, 0, 2.0}});
  CHECK(matvec(a, vec({3, 4})) == vec({4, 6}));
  CHECK_THROWS_AS(matvec(a, vec({1, 2, 3})), DimensionError);
}

TEST_CASE("bvp matrix annihilates constants") {
  const auto a = make_bvp_matrix(BvpSpec{10, 10.0});
  CHECK(norm2(matvec(a, Vector::Ones(100))) <= 1e-12);
}

TEST_CASE("norm2 and dot") {
  CHECK(norm2(vec({0, 0, 0})) == 0.0);
  CHECK(norm2(vec({3, 4})) == doctest::Approx(5.0));
  CHECK(norm2(vec({1, 1, 1, 1})) == doctest::Approx(2.0));
  CHECK(dot(vec({1, 0}), vec({0, 1})) == 0.0);
  CHECK(dot(vec({1, 2}), vec({3, 4})) == 11.0);
  CHECK(dot(vec({3, 4}), vec({3, 4})) == 25.0);
  CHECK_THROWS_AS(dot(vec({1, 2}), vec({1})), DimensionError);
}

TEST_CASE("triplet construction sums duplicates and sorts columns") {
  const auto a = SparseMatrix::from_triplets(2, 3, {{0, 2, 1.0}, {0, 0, 2.0}, {0, 2, 0.5}, {1, 1, 4.0}});
  CHECK(a.nonzeros() == 3);
  CHECK(a.row_offsets() == std::vector<Index>{0, 2, 3});
  CHECK(a.col_indices() == std::vector<Index>{0, 2, 1});
  CHECK(a.values() == std::vector<double>{2.0, 1.5, 4.0});
  CHECK_THROWS(SparseMatrix::from_triplets(2, 2, {{2, 0, 1.0}}));
}

TEST_CASE("sparse and dense matvecs agree on random inputs") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const Index n = 5 + static_cast<Index>(rng.next() % 30);
    std::vector<Triplet> t;
    DenseMatrix dense = DenseMatrix::Zero(n, n);
    for (int k = 0; k < 4 * n; ++k) {
      const auto i = static_cast<Index>(rng.next() % static_cast<std::uint64_t>(n));
      const auto j = static_cast<Index>(rng.next() % static_cast<std::uint64_t>(n));
      const double v = rng.gaussian();
      t.push_back({i, j, v});
      dense(i, j) += v;
    }
    const auto a = SparseMatrix::from_triplets(n, n, t);
    const Vector x = random_gaussian_vector(n, rng);
    const Vector ys = matvec(a, x);
    const Vector yd = dense * x;
    CHECK((ys - yd).norm() <= 1e-14 * std::max(1.0, yd.norm()) * n);
    CHECK((a.to_dense() - dense).norm() <= 1e-14 * dense.norm() * n);
  }
}

TEST_CASE("matvec is linear") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed + 100);
    const auto a = SparseMatrix::from_dense(random_gaussian_matrix(25, 25, rng));
    const Vector u = random_gaussian_vector(25, rng);
    const Vector v = random_gaussian_vector(25, rng);
    const double alpha = rng.gaussian();
    const double beta = rng.gaussian();
    const Vector au = matvec(a, u);
    const Vector av = matvec(a, v);
    const Vector lhs = matvec(a, Vector(alpha * u + beta * v));
    CHECK((lhs - alpha * au - beta * av).norm() <= 1e-12 * (au.norm() + av.norm()));
  }
}

TEST_CASE("linear operator wraps every representation") {
  const DenseMatrix d = rsmar::test::mat(2, 2, {1, 2, 3, 4});
  const LinearOperator from_dense(d);
  const LinearOperator from_sparse(SparseMatrix::from_dense(d));
  const LinearOperator from_fn(2, [&](const Vector& v) { return Vector(d * v); });
  const Vector x = vec({1, -1});
  CHECK(from_dense(x) == vec({-1, -1}));
  CHECK(from_sparse(x) == vec({-1, -1}));
  CHECK(from_fn(x) == vec({-1, -1}));
  CHECK_THROWS_AS(from_dense(vec({1, 2, 3})), DimensionError);
  CHECK_THROWS_AS(LinearOperator(DenseMatrix(2, 3)), DimensionError);
}

TEST_CASE("solve options validation") {
  SolveOptions o;
  CHECK_NOTHROW(o.validate());
  o.tol = 0.0;
  CHECK_THROWS(o.validate());
  o = {};
  o.maxit = 0;
  CHECK_THROWS(o.validate());
  o = {};
  o.restart = 0;
  CHECK_THROWS(o.validate());
}
