#pragma once

#include <fovgmres/exterior_map.hpp>
#include <fovgmres/types.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fovgmres {

enum class BoundMethod { Elman, Disk, DiskSegment, Ellipse, Conformal, Faber, Best };

std::string method_name(BoundMethod m);
std::vector<BoundMethod> all_bound_methods();

/// Ellipse circumscribing the normalized rectangle, centered at c = (mu+1)/2
/// with the four corners on its boundary. alpha parametrizes the horizontal
/// semi-axis; beta = rho [1 - (mu-1)^2/(4 alpha^2)]^{-1/2}. When beta > alpha
/// the ellipse is vertical and semi-major axis / focal distance become
/// imaginary (their ratio stays real).
struct EllipseParams {
  Real c = 0.0;
  Real alpha = 0.0;
  Real beta = 0.0;
  bool vertical = false;
  Real rate = 1.0;  // asymptotic factor |(a+sqrt(a^2-d^2))/(c+sqrt(c^2-d^2))|

  Complex a() const { return vertical ? Complex(0, beta) : Complex(alpha, 0); }
  Complex d() const {
    const Real f = std::sqrt(std::abs(alpha * alpha - beta * beta));
    return vertical ? Complex(0, f) : Complex(f, 0);
  }
};

/// [1 - 1/(4(mu^2+rho^2))]^{k/2}.
Real elman_bound(Real mu, Real rho, Index k);

/// [rho/sqrt(1+rho^2)]^k, valid only when the rectangle fits in the optimal
/// disk over its left edge, i.e. mu <= 2 rho^2 + 1. Not applicable otherwise.
std::optional<Real> disk_bound(Real mu, Real rho, Index k);

/// min{2+g, 2/(1-g^{k+1})} g^k with cos(beta) = 1/sqrt(mu^2+rho^2) and
/// g = 2 sin(beta/(4 - 2 beta/pi)).
Real disk_segment_bound(Real mu, Real rho, Index k);

/// Grid search over alpha in ]( mu-1)/2, (mu+1)/2 [ with step 1/n_grid
/// minimizing the asymptotic rate. rho = 0 collapses to the segment limit
/// alpha = (mu-1)/2. Throws DegenerateRectangle for mu = 1.
EllipseParams optimal_ellipse(Real mu, Real rho, Index n_grid = 100);

/// C_k(a/d)/|C_k(c/d)| evaluated in log-magnitude space.
Real ellipse_bound(Real mu, Real rho, Index k, const EllipseParams& params);

/// min{2+gamma, 2/(1-gamma^{k+1})} gamma^k and 2/|F_k(0)|; both fall back to
/// analytic segment maps for degenerate rectangles. The convenience forms
/// rebuild the exterior map per call.
Real conformal_bound(Real mu, Real rho, Index k);
Real faber_bound(Real mu, Real rho, Index k);
/// Lower companion of the conformal bound: gamma^k <= K_k.
Real conformal_lower(Real gamma, Index k);

struct BoundCurve {
  BoundMethod method = BoundMethod::Best;
  bool applicable = true;
  std::vector<Real> raw;     // k = 0..k_max, before post-processing
  std::vector<Real> values;  // clipped at 1, then running minimum
  std::map<std::string, Real> params;
};

/// One curve per requested method (SC map built once and shared), plus a
/// final Best curve equal to the pointwise minimum of the processed values.
std::vector<BoundCurve> evaluate_bounds(Real mu, Real rho, Index k_max,
                                        const std::vector<BoundMethod>& methods);
BoundCurve best_curve(Real mu, Real rho, Index k_max, const std::vector<BoundMethod>& methods);

/// Direct numerical solution of the min-max problem on the rectangle for
/// small k: boundary sampling, modulus constraints turned into rotated linear
/// cuts, solved as a sequence of linear programs with cutting-plane
/// refinement. Polynomial coefficients are real unless complex_coeffs is set
/// (the rectangle is symmetric about the real axis).
Real minmax_oracle(Real mu, Real rho, Index k, Index n_boundary = 512, Index n_rot = 64,
                   bool complex_coeffs = false);

}  // namespace fovgmres
