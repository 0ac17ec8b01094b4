// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "rsmar/gmres_family.hpp"
#include "rsmar/minres_family.hpp"
#include "rsmar/operators.hpp"
#include "rsmar/rsmar_solvers.hpp"

namespace rsmar {

enum class Method { gmres, rrgmres, dgmres, rsmar1, rsmar2, minres, minares };

std::string_view to_string(Method m);
/// Accepts the names printed by to_string (and "minares1" for minares).
std::optional<Method> method_from_string(std::string_view name);
const std::vector<Method>& all_methods();
/// True for methods whose contract requires a symmetric operator.
bool requires_symmetric(Method m);

SolveReport solve(Method m, const LinearOperator& a, const Vector& b, const Vector& x0,
                  const SolveOptions& opts = {});

}  // namespace rsmar
