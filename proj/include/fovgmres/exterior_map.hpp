#pragma once

#include <fovgmres/types.hpp>

#include <array>
#include <vector>

namespace fovgmres {

/// Conformal map psi from the exterior of the unit disk onto the exterior of
/// the normalized rectangle [1, mu] x i[-rho, rho], psi(inf) = inf. The
/// prevertices sit at +-e^{+-i alpha_pre} and
///   psi'(w) = capacity * prod_k (1 - w_k/w)^{1/2},
/// so psi(w) = center + capacity*(w - sum_{m>=1} g_m w^{1-2m}/(2m-1)) with
/// real coefficients. e^{i alpha_pre} maps to the corner mu + i rho; the arc
/// through w = 1 covers the right vertical edge. gamma = 1/|phi(0)| with
/// phi = psi^{-1} drives the asymptotic min-max decay.
struct ExteriorMapRectangle {
  Real mu = 2.0;
  Real rho = 1.0;
  Real alpha_pre = 0.0;             // prevertex angle in (0, pi/2)
  Real capacity = 0.0;              // leading Laurent coefficient c_1 (> 0)
  Real center = 0.0;                // c_0 = (mu+1)/2
  std::vector<Real> laurent_neg;    // c_{-1}, c_{-2}, ... (even entries 0)
  std::array<Complex, 4> corners{}; // quadrature images of the prevertices
  Real phi0 = 0.0;                  // |phi(0)| > 1
  Real gamma = 0.0;                 // 1/phi0, in (0, 1)

  Index truncation() const { return static_cast<Index>(laurent_neg.size()); }
  std::array<Complex, 4> prevertices() const;
};

/// Prevertex angle for a proper rectangle (mu > 1, rho > 0): the unique root
/// of the side-length ratio equation horizontal/vertical = (mu-1)/(2 rho),
/// where the side lengths are boundary integrals of |psi'| between adjacent
/// prevertices. Strictly decreasing in alpha; solved by bisection to 1e-12.
/// Throws DegenerateRectangle when rho = 0 or mu = 1.
Real solve_parameter(Real mu, Real rho);

/// Builds the full map. k_max sizes the Laurent truncation
/// (J = max(k_max, 128) + 16) so Faber polynomials up to k_max are available.
ExteriorMapRectangle build_exterior_map(Real mu, Real rho, Index k_max = 128);

/// psi'(w), valid for |w| >= 1 (continuous up to the circle).
Complex psi_derivative(const ExteriorMapRectangle& map, Complex w);

/// psi(w) for |w| >= 1: Laurent series away from the circle, a series anchor
/// plus radial path integral in the shell near it. Throws InsideDisk.
Complex psi_eval(const ExteriorMapRectangle& map, Complex w);

/// Solves psi(w) = 0 on the negative real ray (the origin sits left of the
/// rectangle on the symmetry axis); returns {phi0, gamma}.
std::pair<Real, Real> gamma_phi0(const ExteriorMapRectangle& map);

/// Faber polynomials F_0..F_kmax generated from the Laurent coefficients of
/// psi; F_k is the polynomial part of phi^k at infinity. deg F_k = k with
/// leading coefficient c_1^{-k}, and |F_k(0)|^{1/k} -> 1/gamma.
struct FaberSet {
  Index k_max = 0;
  std::vector<std::vector<Complex>> polynomials;  // ascending-degree coefficients
  std::vector<Real> at_zero;                      // |F_k(0)|
};

/// Generic generator (used directly by tests that inject disk/ellipse maps):
/// psi(w) = c1 w + c0 + sum_j tail[j-1] w^{-j}.
FaberSet faber_from_laurent(Complex c1, Complex c0, const std::vector<Complex>& tail,
                            Index k_max);

/// Throws TruncationTooShort unless the map was built with J >= k_max + 5.
FaberSet faber_polys(const ExteriorMapRectangle& map, Index k_max);

/// Exterior-map gamma of the degenerate rectangles: the horizontal segment
/// [1, mu] and the vertical segment [1 - i rho, 1 + i rho].
Real segment_gamma_horizontal(Real mu);
Real segment_gamma_vertical(Real rho);

}  // namespace fovgmres
