// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>

#include "support.hpp"

using namespace rsmar;
using rsmar::test::vec;

namespace {

SparseMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return read_matrix_market(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("minimal general file") {
  const auto a = parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 3.0\n");
  CHECK(a.rows() == 2);
  CHECK(a.nonzeros() == 1);
  CHECK(a.to_dense()(0, 1) == 3.0);
}

TEST_CASE("symmetric files are expanded") {
  const auto a = parse(
      "%%MatrixMarket matrix coordinate real symmetric\n% comment\n2 2 2\n1 1 4\n2 1 5\n");
  const DenseMatrix d = a.to_dense();
  CHECK(d(1, 0) == 5.0);
  CHECK(d(0, 1) == 5.0);
  CHECK(d(0, 0) == 4.0);
  CHECK(a.nonzeros() == 3);
}

TEST_CASE("duplicates are summed") {
  const auto a = parse("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.5\n1 1 2.5\n");
  CHECK(a.nonzeros() == 1);
  CHECK(a.to_dense()(0, 0) == 4.0);
}

TEST_CASE("parse errors name the line") {
  const std::string head = "%%MatrixMarket matrix coordinate real general\n";
  CHECK(error_line(head + "2 2 1\n0 1 3.0\n") == 3);
  CHECK(error_line(head + "% c\n2 2 2\n1 1 1\n3 1 1\n") == 5);
  CHECK(error_line(head + "2 2 1\n1 x 3.0\n") == 3);
  CHECK(error_line(head + "2 3 1\n1 1 3.0\n") == 2);
  CHECK(error_line(head + "2 2 2\n1 1 3.0\n") > 0);
  CHECK(error_line("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n") == 1);
  CHECK(error_line("%%MatrixMarket matrix coordinate complex general\n2 2 1\n1 1 1 0\n") == 1);
  CHECK(error_line("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n") == 1);
  CHECK(error_line("not a header\n") == 1);
  CHECK_THROWS(read_matrix_market(std::filesystem::path("/nonexistent/file.mtx")));
}

TEST_CASE("matrix market round trip") {
  Rng rng(3);
  const auto a = SparseMatrix::from_dense(random_gaussian_matrix(6, 6, rng));
  std::stringstream buf;
  write_matrix_market(buf, a);
  const auto back = read_matrix_market(buf);
  CHECK(back.to_dense() == a.to_dense());
}

TEST_CASE("vector round trip") {
  Rng rng(4);
  const Vector v = random_gaussian_vector(17, rng);
  std::stringstream buf;
  write_vector(buf, v);
  CHECK(read_vector(buf) == v);
}

TEST_CASE("history CSV") {
  std::ostringstream empty;
  write_history_csv(empty, {});
  CHECK(empty.str() == "method,iter,res_norm,ares_norm,matvecs\n");

  HistoryRecord rec{"gmres", {{0, 1.0, 2.0, 1}, {1, 0.5, 0.25, 2}, {2, 0.1, 1.0 / 3.0, 3}}, "converged", 0.0};
  std::ostringstream out;
  write_history_csv(out, {rec}, std::string("explicit"));
  const std::string text = out.str();
  CHECK(text.rfind("# residual_mode=explicit\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}

TEST_CASE("history CSV round trip keeps every digit") {
  Rng rng(11);
  std::vector<HistoryRecord> recs;
  for (const char* name : {"rsmar2", "dgmres"}) {
    HistoryRecord r{name, {}, "maxit", 0.0};
    for (int k = 0; k < 20; ++k) {
      r.rows.push_back({k, std::exp(-30.0 * rng.uniform()) * rng.uniform(),
                        std::ldexp(rng.uniform(), -900), static_cast<std::int64_t>(k + 2)});
    }
    recs.push_back(r);
  }
  std::stringstream buf;
  write_history_csv(buf, recs, std::string("estimate"));
  const auto back = read_history_csv(buf);
  REQUIRE(back.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back[i].method == recs[i].method);
    REQUIRE(back[i].rows.size() == recs[i].rows.size());
    for (std::size_t k = 0; k < recs[i].rows.size(); ++k) {
      CHECK(back[i].rows[k].iter == recs[i].rows[k].iter);
      CHECK(back[i].rows[k].res_norm == recs[i].rows[k].res_norm);
      CHECK(back[i].rows[k].ares_norm == recs[i].rows[k].ares_norm);
      CHECK(back[i].rows[k].matvecs == recs[i].rows[k].matvecs);
    }
  }
}

TEST_CASE("history record from a report") {
  const LinearOperator id(DenseMatrix(DenseMatrix::Identity(2, 2)));
  const auto rep = gmres_solve(id, vec({1, 2}), Vector::Zero(2));
  const auto rec = make_history_record("gmres", rep);
  CHECK(rec.rows.size() == static_cast<std::size_t>(rep.iterations) + 1);
  CHECK(rec.termination == "converged");
  CHECK(format_double(0.1) == "0.1");
}
