#pragma once

#include <fovgmres/cdr.hpp>
#include <fovgmres/linalg.hpp>
#include <fovgmres/types.hpp>

namespace fovgmres {

enum class GevpKind { HN, MinvN };
enum class PairingVariant { YhAZ, ZequalsY, ZequalsNY };

/// Deflation projectors built from full-rank bases Y, Z with invertible core
/// Y^* A Z:
///   P_D = I - A Z (Y^* A Z)^{-1} Y^*    (acts on residuals)
///   Q_D = I - Z (Y^* A Z)^{-1} Y^* A    (acts on iterates)
/// They satisfy P_D A = A Q_D. An operator with m = 0 is the identity.
struct DeflationOperator {
  ComplexMatrix Y, Z;     // n x m
  ComplexMatrix AZ;       // cached A*Z
  ComplexMatrix AadjY;    // cached A^* Y (drives Q_D)
  ComplexMatrix core;     // Y^* A Z
  ComplexMatrix core_inv; // explicit inverse (m is small)
  Real core_rcond = 1.0;  // sigma_min/sigma_max of the core
  Index m = 0;
  Index n = 0;

  ComplexVector apply_pd(const ComplexVector& v) const;
  ComplexVector apply_qd(const ComplexVector& v) const;
  ComplexMatrix pd_matrix() const;
  ComplexMatrix qd_matrix() const;

  /// Recovers the solution of the original system from the minimizer of the
  /// deflated one: x = Q_D x_tilde + Z (Y^*AZ)^{-1} Y^* b. The full residual
  /// b - A x then equals the deflated residual P_D(b - A x_tilde).
  ComplexVector compose_full_solution(const ComplexVector& x_tilde, const ComplexVector& b) const;
};

/// Validates the bases and the core; when H is supplied, additionally checks
/// that Y^* H^{-1} Z is invertible (no-breakdown condition). Throws
/// SingularCore when the reciprocal condition of a required core drops below
/// 1e-12.
DeflationOperator build_projectors(const ComplexMatrix& A, const ComplexMatrix& Y,
                                   const ComplexMatrix& Z, const ComplexMatrix* H = nullptr);

/// Real basis spanning the top-modulus eigenvectors of one of the pencils
///   hn:     N x = lambda H^{-1} x
///   minv-n: N x = lambda M x
/// Columns hold [Re x | Im x] for one representative per conjugate pair
/// (positive imaginary part), phase-fixed for determinism. tau is the modulus
/// of the first eigenvalue left out.
struct SpectralDeflationSpace {
  GevpKind kind = GevpKind::HN;
  Index m = 0;
  Real tau = 0.0;
  ComplexMatrix basis;     // n x m, real-valued entries
  ComplexVector spectrum;  // all pencil eigenvalues, modulus-ordered
  Real h_fingerprint = 0.0;
  Real m_fingerprint = 0.0;
};

SpectralDeflationSpace build_spectral_space(const AssembledProblem& problem,
                                            const ComplexMatrix& H, GevpKind kind, Index m);

struct Pairing {
  ComplexMatrix Y, Z;
  /// True when Y = H A Z holds exactly by construction (the hypothesis of the
  /// tau-rectangle bounds); the other variants only guarantee the projector
  /// existence conditions.
  bool exact_hypothesis = false;
};

/// hn spaces admit three variants: y-haz (Z = A^{-1} H^{-1} Y, exact
/// hypothesis), z-equals-y and z-equals-ny. minv-n spaces always use
/// Z = basis, Y = H A Z and require the y-haz variant.
Pairing make_pairing(const SpectralDeflationSpace& space, const AssembledProblem& problem,
                     const ComplexMatrix& H, PairingVariant variant);

}  // namespace fovgmres
