#pragma once

#include <fovgmres/types.hpp>

namespace fovgmres {

/// Solution of the linear minimax problem
///   minimize over x in R^d:  max_i (A.row(i) . x - b(i)).
/// Solved through the simplex method on the dual (a convex-combination
/// program with d+1 equality rows), which stays cheap for thousands of rows
/// and few unknowns.
struct MinimaxSolution {
  Vector x;
  Real value = 0.0;
  bool optimal = false;
};

MinimaxSolution solve_linear_minimax(const Matrix& A, const Vector& b);

}  // namespace fovgmres
