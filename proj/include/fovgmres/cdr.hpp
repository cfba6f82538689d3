#pragma once

#include <fovgmres/types.hpp>

namespace fovgmres {

/// Convection-diffusion-reaction test problem on [-1,1]^2 with homogeneous
/// Dirichlet boundary, P1 elements on a uniform right-triangle mesh.
/// nx counts interior grid points per dimension, so the system has nx^2
/// unknowns and mesh width h = 2/(nx+1).
struct CdrProblemSpec {
  Index nx = 16;
  Real c0 = 1.0;   // reaction coefficient, > 0
  Real nu = 1.0;   // viscosity, > 0
  Real eta = 100.0;  // convection strength
};

/// A = M + N exactly, with M symmetric positive definite and N
/// skew-symmetric. All entries are real-valued.
struct AssembledProblem {
  ComplexMatrix A, M, N;
  ComplexVector b;
  CdrProblemSpec spec;
  Index n = 0;
};

/// Convection field a(x,y) = eta*pi*(-y-0.8, x) and source
/// f(x,y) = exp(-2.5(x^2+(y+0.8)^2)). The symmetric part assembles
/// c0*(u,v) + nu*(grad u, grad v); the skew part 1/2(a.grad u, v) -
/// 1/2(a.grad v, u). Mass/stiffness integrals are exact; the convection
/// moments use the edge-midpoint rule (exact for quadratics) and the load
/// vector uses vertex quadrature.
AssembledProblem build_cdr(const CdrProblemSpec& spec);

}  // namespace fovgmres
