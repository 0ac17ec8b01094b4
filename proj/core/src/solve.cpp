// SPDX-License-Identifier: Apache-2.0

#include "rsmar/solve.hpp"

#include <stdexcept>

namespace rsmar {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::gmres: return "gmres";
    case Method::rrgmres: return "rrgmres";
    case Method::dgmres: return "dgmres";
    case Method::rsmar1: return "rsmar1";
    case Method::rsmar2: return "rsmar2";
    case Method::minres: return "minres";
    case Method::minares: return "minares";
  }
  return "unknown";
}

std::optional<Method> method_from_string(std::string_view name) {
  for (Method m : all_methods()) {
    if (to_string(m) == name) return m;
  }
  if (name == "minares1") return Method::minares;
  return std::nullopt;
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods{Method::gmres,  Method::rrgmres, Method::dgmres,
                                           Method::rsmar1, Method::rsmar2,  Method::minres,
                                           Method::minares};
  return methods;
}

bool requires_symmetric(Method m) { return m == Method::minres || m == Method::minares; }

SolveReport solve(Method m, const LinearOperator& a, const Vector& b, const Vector& x0,
                  const SolveOptions& opts) {
  switch (m) {
    case Method::gmres: return gmres_solve(a, b, x0, opts);
    case Method::rrgmres: return rrgmres_solve(a, b, x0, opts);
    case Method::dgmres: return dgmres_solve(a, b, x0, opts);
    case Method::rsmar1: return rsmar1_solve(a, b, x0, opts);
    case Method::rsmar2: return rsmar2_solve(a, b, x0, opts);
    case Method::minres: return minres_solve(a, b, x0, opts);
    case Method::minares: return minares1_solve(a, b, x0, opts);
  }
  throw std::invalid_argument("solve: unknown method");
}

}  // namespace rsmar
