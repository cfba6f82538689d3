#pragma once

#include <fovgmres/types.hpp>

namespace fovgmres {

/// Nodes and weights on [-1, 1] for the weight (1-x)^a (1+x)^b, computed by
/// Golub-Welsch on the Jacobi recurrence. a = b = 0 is Gauss-Legendre,
/// a = b = 1/2 is Gauss-Chebyshev of the second kind.
struct QuadRule {
  Vector nodes;
  Vector weights;
};

QuadRule gauss_jacobi(Index n, Real a, Real b);

}  // namespace fovgmres
