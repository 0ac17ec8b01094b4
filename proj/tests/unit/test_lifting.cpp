// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "support.hpp"

using namespace rsmar;
using rsmar::test::vec;

TEST_CASE("lift examples") {
  CHECK((lift(vec({1, 1}), vec({0, 0}), vec({0, 1})) - vec({1, 0})).norm() == 0.0);
  CHECK(lift(vec({1, 1}), vec({0, 0}), vec({1, -1})) == vec({1, 1}));
  CHECK(lift(vec({2, 0}), vec({1, 0}), vec({1, 0})) == vec({1, 0}));
  CHECK_THROWS_WITH(lift(vec({1, 1}), vec({0, 0}), vec({0, 0})),
                    "no lifting needed: residual is zero");
  CHECK_THROWS_AS(lift(vec({1, 1}), vec({0}), vec({1, 0})), DimensionError);
}

TEST_CASE("lift is idempotent and orthogonal to r") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed);
    const Index n = 1 + static_cast<Index>(rng.next() % 40);
    const Vector x = random_gaussian_vector(n, rng);
    const Vector x0 = random_gaussian_vector(n, rng);
    const Vector r = random_gaussian_vector(n, rng);
    const Vector once = lift(x, x0, r);
    const Vector twice = lift(once, x0, r);
    CHECK((twice - once).norm() <= 1e-14 * std::max(1.0, once.norm()));
    CHECK(std::abs(r.dot(once - x0)) <= 1e-12 * r.norm() * (x - x0).norm());
  }
}
