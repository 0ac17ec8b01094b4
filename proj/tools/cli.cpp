// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <iomanip>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <rsmar/rsmar.hpp>

namespace rsmar::cli {

namespace {

struct SystemArgs {
  std::string matrix;
  std::string rhs;
  std::string rhs_kind;
  std::string x0;
  bool scale = false;
  std::uint64_t seed = 1;
};

struct SolverArgs {
  double tol = 1e-10;
  int maxit = 1000;
  int restart = 0;
  bool reorthogonalize = false;
  bool estimate = false;
};

struct System {
  SparseMatrix a;
  Vector b;
  Vector x0;
  double scale = 1.0;
};

void add_system_flags(CLI::App& cmd, SystemArgs& s, bool rhs_required) {
  cmd.add_option("--matrix", s.matrix, "Matrix Market file")->required()->check(CLI::ExistingFile);
  auto* rhs = cmd.add_option("--rhs", s.rhs, "right-hand side: vector file or 'ones'");
  auto* kind = cmd.add_option("--rhs-kind", s.rhs_kind, "Ae | e | xy | rand")
                   ->check(CLI::IsMember({"Ae", "e", "xy", "rand"}));
  rhs->excludes(kind);
  if (rhs_required) {
    cmd.callback([rhs, kind] {
      if (rhs->count() == 0 && kind->count() == 0) {
        throw CLI::ValidationError("one of --rhs or --rhs-kind is required");
      }
    });
  }
  cmd.add_option("--x0", s.x0, "initial guess vector file (default zero)")
      ->check(CLI::ExistingFile);
  cmd.add_flag("--scale", s.scale, "divide A by max |a_ij| before solving");
  cmd.add_option("--seed", s.seed, "seed for --rhs-kind rand");
}

void add_solver_flags(CLI::App& cmd, SolverArgs& s) {
  cmd.add_option("--tol", s.tol, "relative tolerance")->check(CLI::PositiveNumber);
  cmd.add_option("--maxit", s.maxit, "iteration budget")->check(CLI::PositiveNumber);
  cmd.add_option("--restart", s.restart, "restart length (GMRES-type methods)")
      ->check(CLI::PositiveNumber);
  cmd.add_flag("--reorthogonalize", s.reorthogonalize, "second Gram-Schmidt pass");
  cmd.add_flag("--estimate", s.estimate, "record recurrence estimates instead of explicit norms");
}

SolveOptions to_options(const SolverArgs& s) {
  SolveOptions o;
  o.tol = s.tol;
  o.maxit = s.maxit;
  if (s.restart > 0) o.restart = s.restart;
  o.reorthogonalize = s.reorthogonalize;
  o.record_explicit = !s.estimate;
  return o;
}

Vector make_rhs(const SparseMatrix& a, const SystemArgs& s) {
  const Index n = a.rows();
  if (!s.rhs.empty()) {
    if (s.rhs == "ones") return Vector::Ones(n);
    Vector b = read_vector(s.rhs);
    if (b.size() != n) throw DimensionError("--rhs length does not match the matrix");
    return b;
  }
  if (s.rhs_kind == "Ae") return a.apply(Vector::Ones(n));
  if (s.rhs_kind == "e") return Vector::Ones(n);
  if (s.rhs_kind == "rand") {
    Rng rng(s.seed);
    return a.apply(random_uniform_vector(n, rng));
  }
  const auto m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (static_cast<Index>(m) * m != n) {
    throw std::invalid_argument("--rhs-kind xy needs an m*m grid matrix");
  }
  return make_bvp_rhs(BvpSpec{m, 0.0}, BvpRhsKind::inconsistent_xy);
}

System load_system(const SystemArgs& s, bool need_rhs) {
  System sys;
  sys.a = read_matrix_market(s.matrix);
  if (s.scale) std::tie(sys.a, sys.scale) = scale_max_abs(sys.a);
  const Index n = sys.a.rows();
  sys.b = need_rhs || !s.rhs.empty() || !s.rhs_kind.empty() ? make_rhs(sys.a, s) : Vector();
  sys.x0 = s.x0.empty() ? Vector::Zero(n) : read_vector(s.x0);
  if (sys.x0.size() != n) throw DimensionError("--x0 length does not match the matrix");
  return sys;
}

bool is_symmetric(const SparseMatrix& a) {
  const auto& off = a.row_offsets();
  const auto& col = a.col_indices();
  const auto& val = a.values();
  const double tol = 1e-14 * std::max(1.0, a.max_abs());
  auto lookup = [&](Index i, Index j) {
    const auto first = col.begin() + off[static_cast<std::size_t>(i)];
    const auto last = col.begin() + off[static_cast<std::size_t>(i) + 1];
    const auto it = std::lower_bound(first, last, j);
    return it != last && *it == j ? val[static_cast<std::size_t>(it - col.begin())] : 0.0;
  };
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index p = off[static_cast<std::size_t>(i)]; p < off[static_cast<std::size_t>(i) + 1];
         ++p) {
      const auto k = static_cast<std::size_t>(p);
      if (std::abs(val[k] - lookup(col[k], i)) > tol) return false;
    }
  }
  return true;
}

Method parse_method(const std::string& name) {
  const auto m = method_from_string(name);
  if (!m) throw std::invalid_argument("unknown method '" + name + "'");
  return *m;
}

void require_symmetry(Method m, const SparseMatrix& a) {
  if (requires_symmetric(m) && !is_symmetric(a)) {
    throw std::invalid_argument(std::string(to_string(m)) + " needs a symmetric matrix");
  }
}

struct Timed {
  SolveReport report;
  double seconds = 0.0;
};

Timed timed_solve(Method m, const LinearOperator& op, const System& sys, const SolveOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  Timed t{solve(m, op, sys.b, sys.x0, o), 0.0};
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return t;
}

void print_summary(std::ostream& out, Method m, const SparseMatrix& a, const System& sys,
                   const Timed& t) {
  const SolveReport& r = t.report;
  const Vector& x = r.lifted_solution ? *r.lifted_solution : r.solution;
  const Vector res = sys.b - a.apply(x);
  const double rel = r.initial_residual > 0.0 ? norm2(res) / r.initial_residual : 0.0;
  const double arel =
      r.initial_aresidual > 0.0 ? norm2(a.apply(res)) / r.initial_aresidual : 0.0;
  out << "method        " << to_string(m) << '\n'
      << "termination   " << to_string(r.termination) << '\n'
      << "monitor       " << to_string(r.monitor) << '\n'
      << "iterations    " << r.iterations << '\n'
      << "matvecs       " << r.matvec_count << '\n'
      << "res_rel       " << format_double(rel) << '\n'
      << "ares_rel      " << format_double(arel) << '\n'
      << "lifted        " << (r.lifted_solution ? "yes" : "no") << '\n'
      << "wall_seconds  " << format_double(t.seconds) << '\n';
}

std::string residual_mode(const SolverArgs& s) { return s.estimate ? "estimate" : "explicit"; }

int run_generate(const std::string& kind, int m, double d, Index n, Index rank, double cond,
                 std::uint64_t seed, const std::string& output, const std::string& pinv_out,
                 std::ostream& out) {
  std::optional<DenseMatrix> pinv;
  SparseMatrix a;
  if (kind == "bvp") {
    a = make_bvp_matrix(BvpSpec{m, d});
  } else if (kind == "random-skew") {
    a = SparseMatrix::from_dense(make_random_skew_singular(n, seed));
  } else {
    const RandomSpec spec{n, rank, cond, seed};
    GeneratedSystem g = kind == "random-rs" ? make_random_range_symmetric(spec)
                                            : make_random_symmetric_singular(spec);
    a = SparseMatrix::from_dense(g.a);
    pinv = std::move(g.pinv);
  }
  write_matrix_market(output, a);
  if (!pinv_out.empty()) {
    if (!pinv) throw std::invalid_argument("--pinv is only available for random-rs and random-sym");
    write_matrix_market(pinv_out, SparseMatrix::from_dense(*pinv));
  }
  out << "wrote " << output << " (" << a.rows() << "x" << a.cols() << ", " << a.nonzeros()
      << " nonzeros)\n";
  return 0;
}

int run_solve(const std::string& method, const SystemArgs& sa, const SolverArgs& so,
              const std::string& history, const std::string& solution, std::ostream& out) {
  const Method m = parse_method(method);
  const System sys = load_system(sa, true);
  require_symmetry(m, sys.a);
  const LinearOperator op(sys.a);
  const Timed t = timed_solve(m, op, sys, to_options(so));
  print_summary(out, m, sys.a, sys, t);
  if (!history.empty()) {
    write_history_csv(history, {make_history_record(std::string(to_string(m)), t.report, t.seconds)},
                      residual_mode(so));
  }
  if (!solution.empty()) {
    write_vector(solution, t.report.lifted_solution ? *t.report.lifted_solution
                                                    : t.report.solution);
  }
  return 0;
}

int run_compare(const std::vector<std::string>& names, const SystemArgs& sa, const SolverArgs& so,
                const std::string& output, std::ostream& out) {
  std::vector<Method> methods;
  for (const auto& name : names) methods.push_back(parse_method(name));
  const System sys = load_system(sa, true);
  for (Method m : methods) require_symmetry(m, sys.a);
  const LinearOperator op(sys.a);
  const SolveOptions opts = to_options(so);

  std::vector<std::future<Timed>> jobs;
  jobs.reserve(methods.size());
  for (Method m : methods) {
    jobs.push_back(std::async(std::launch::async, [&, m] { return timed_solve(m, op, sys, opts); }));
  }
  std::vector<HistoryRecord> records;
  std::vector<Timed> results;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    results.push_back(jobs[i].get());
    records.push_back(make_history_record(std::string(to_string(methods[i])), results.back().report,
                                          results.back().seconds));
  }

  if (output == "-") {
    write_history_csv(out, records, residual_mode(so));
    return 0;
  }
  write_history_csv(output, records, residual_mode(so));
  out << std::left << std::setw(10) << "method" << std::setw(24) << "termination"
      << std::setw(8) << "iters" << std::setw(10) << "matvecs"
      << "final ares/betahat1\n";
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const SolveReport& r = results[i].report;
    const double ares = r.aresidual_history.back() / r.initial_aresidual;
    out << std::setw(10) << to_string(methods[i]) << std::setw(24) << to_string(r.termination)
        << std::setw(8) << r.iterations << std::setw(10) << r.matvec_count << format_double(ares)
        << '\n';
  }
  return 0;
}

int run_check(const SystemArgs& sa, const std::string& solution, std::ostream& out) {
  const System sys = load_system(sa, false);
  const DenseMatrix a = sys.a.to_dense();
  if (a.rows() > kOracleDenseCap) {
    throw OracleCapError("check: n = " + std::to_string(a.rows()) + " exceeds the dense cap of " +
                         std::to_string(kOracleDenseCap));
  }
  out << "n               " << a.rows() << '\n'
      << "rank            " << numerical_rank(a) << '\n'
      << "index           " << index_of(a) << '\n'
      << "range_symmetric " << (is_range_symmetric(a) ? "true" : "false") << '\n'
      << "kappa           " << format_double(cond_number(a)) << '\n';
  if (sys.b.size() > 0) {
    const Vector x = pseudoinverse_solve(a, sys.b);
    const Vector r = sys.b - a * x;
    out << "pinv_norm       " << format_double(x.norm()) << '\n'
        << "consistent      " << (r.norm() <= 1e-10 * sys.b.norm() ? "true" : "false") << '\n';
    if (!solution.empty()) write_vector(solution, x);
  } else if (!solution.empty()) {
    throw std::invalid_argument("--solution needs a right-hand side");
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Krylov solvers for singular range-symmetric systems", "rsmar"};
  app.require_subcommand(1);

  std::string gen_kind;
  int gen_m = 100;
  double gen_d = 10.0;
  Index gen_n = 20;
  Index gen_rank = 15;
  double gen_cond = 1e2;
  std::uint64_t gen_seed = 1;
  std::string gen_output;
  std::string gen_pinv;
  auto* gen = app.add_subcommand("generate", "write a test matrix in Matrix Market format");
  gen->add_option("kind", gen_kind, "bvp | random-rs | random-sym | random-skew")
      ->required()
      ->check(CLI::IsMember({"bvp", "random-rs", "random-sym", "random-skew"}));
  gen->add_option("--m", gen_m, "grid size (bvp)");
  gen->add_option("--d", gen_d, "convection coefficient (bvp)");
  gen->add_option("--n", gen_n, "order (random kinds)");
  gen->add_option("--rank", gen_rank, "rank (random-rs, random-sym)");
  gen->add_option("--cond", gen_cond, "condition number (random-rs, random-sym)");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("-o,--output", gen_output, "output .mtx path")->required();
  gen->add_option("--pinv", gen_pinv, "also write the closed-form pseudoinverse");

  SystemArgs solve_sys;
  SolverArgs solve_opts;
  std::string solve_method;
  std::string solve_history;
  std::string solve_solution;
  auto* sol = app.add_subcommand("solve", "run one method");
  sol->add_option("--method", solve_method,
                  "gmres | rrgmres | dgmres | rsmar1 | rsmar2 | minres | minares")
      ->required();
  add_system_flags(*sol, solve_sys, true);
  add_solver_flags(*sol, solve_opts);
  sol->add_option("--history", solve_history, "write the history CSV here");
  sol->add_option("--solution", solve_solution, "write the final (lifted) iterate here");

  SystemArgs cmp_sys;
  SolverArgs cmp_opts;
  std::vector<std::string> cmp_methods;
  std::string cmp_output = "-";
  auto* cmp = app.add_subcommand("compare", "run several methods and write one history CSV");
  cmp->add_option("--methods", cmp_methods, "comma-separated method list")
      ->required()
      ->delimiter(',');
  add_system_flags(*cmp, cmp_sys, true);
  add_solver_flags(*cmp, cmp_opts);
  cmp->add_option("-o,--output", cmp_output, "CSV path, '-' for stdout");

  SystemArgs chk_sys;
  std::string chk_solution;
  auto* chk = app.add_subcommand("check", "dense oracle: rank, index, range symmetry, kappa, pinv");
  add_system_flags(*chk, chk_sys, false);
  chk->add_option("--solution", chk_solution, "write A^+ b here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen) {
      return run_generate(gen_kind, gen_m, gen_d, gen_n, gen_rank, gen_cond, gen_seed, gen_output,
                          gen_pinv, out);
    }
    if (*sol) return run_solve(solve_method, solve_sys, solve_opts, solve_history, solve_solution, out);
    if (*cmp) return run_compare(cmp_methods, cmp_sys, cmp_opts, cmp_output, out);
    return run_check(chk_sys, chk_solution, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace rsmar::cli
