// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rsmar/arnoldi.hpp"
#include "rsmar/gmres_family.hpp"
#include "rsmar/hessenberg_qr.hpp"
#include "rsmar/io.hpp"
#include "rsmar/lifting.hpp"
#include "rsmar/minres_family.hpp"
#include "rsmar/operators.hpp"
#include "rsmar/oracle.hpp"
#include "rsmar/problems.hpp"
#include "rsmar/rsmar_solvers.hpp"
#include "rsmar/solve.hpp"
