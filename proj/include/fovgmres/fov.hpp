#pragma once

#include <fovgmres/cdr.hpp>
#include <fovgmres/deflation.hpp>
#include <fovgmres/linalg.hpp>
#include <fovgmres/types.hpp>

#include <vector>

namespace fovgmres {

/// Complex-plane rectangle [re_min, re_max] x i[-im_half, im_half],
/// symmetric about the real axis and strictly right of the origin.
struct Rectangle {
  Real re_min = 1.0;
  Real re_max = 1.0;
  Real im_half = 0.0;
};

/// Dilation-invariant shape parameters: the rectangle scale*([1,mu] x
/// i[-rho,rho]).
struct NormalizedRectangle {
  Real mu = 1.0;
  Real rho = 0.0;
  Real scale = 1.0;
};

struct FovSample {
  std::vector<Complex> boundary;  // support points ordered by angle
  std::string weight;             // description of the inner product
};

/// Boundary of the field of values in the W-inner product by the rotation
/// method: for each angle the top eigenvector of the W-Hermitian part of
/// e^{i theta} B supplies a support point.
FovSample fov_boundary(const ComplexMatrix& B, const InnerProduct& ip, Index n_angles = 360);

/// Convex-hull membership with absolute slack; used to validate enclosures.
bool hull_contains(const std::vector<Complex>& points, Complex p, Real slack);

/// [lambda_min(HM), lambda_max(HM)] + i[-rho(NH), rho(NH)]. Requires the
/// Hermitian part to be positive definite under H (throws NotPd otherwise).
Rectangle enclosure_omega1(const AssembledProblem& problem, const ComplexMatrix& H);

/// Same real extent, imaginary half-height rho(M^{-1}N) * lambda_max(HM).
Rectangle enclosure_omega2(const AssembledProblem& problem, const ComplexMatrix& H);

/// Deflation shrinks only the imaginary extent: hn spaces give i[-tau, tau],
/// minv-n spaces i*lambda_max(HM)*[-tau, tau]. The space must have been built
/// against the same H and M (throws MismatchedOperators).
Rectangle enclosure_tau(const AssembledProblem& problem, const ComplexMatrix& H,
                        const SpectralDeflationSpace& space);

NormalizedRectangle normalize(const Rectangle& rect);

}  // namespace fovgmres
