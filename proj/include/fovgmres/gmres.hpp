#pragma once

#include <fovgmres/deflation.hpp>
#include <fovgmres/preconditioner.hpp>
#include <fovgmres/types.hpp>

#include <vector>

namespace fovgmres {

struct GmresConfig {
  Real tol = 1e-10;    // relative residual threshold
  Index max_it = 200;  // iteration cap (full GMRES, no restarts)
  ComplexVector x0;    // empty means zero initial guess
};

/// Per-iteration history of ||HL PD r_k||_W starting at k = 0. The norms are
/// non-increasing; convergence is declared against tol * reference_norm with
/// reference_norm = ||HL PD b||_W (equal to the initial residual norm for a
/// zero initial guess).
struct GmresTrace {
  std::vector<Real> residual_norms;
  Index iterations_to_tol = -1;  // -1 when not converged
  bool converged = false;
  ComplexVector solution;  // minimizer of the (deflated) residual
  Real reference_norm = 0.0;

  std::vector<Real> relative() const;
};

/// W-weighted GMRES on HL (PD) A HR with modified Gram-Schmidt (one
/// reorthogonalization pass on significant cancellation) and Givens rotations
/// for the running least-squares problem. Throws Breakdown when the Arnoldi
/// basis is exhausted before the tolerance is met.
GmresTrace gmres_solve(const ComplexMatrix& A, const ComplexVector& b,
                       const PreconditionerSetup& setup, const DeflationOperator* defl,
                       const GmresConfig& cfg);

struct OracleResult {
  Real value = 0.0;
  bool lucky_breakdown = false;  // Krylov space exhausted below k
  Index rank = 0;                // dimension actually used
};

/// Dense evaluation of min ||HL PD (b - A x)||_W over x in the span of the
/// k-dimensional Krylov space of (H PD A, H PD b), zero initial guess. Kept
/// independent of the Arnoldi/Givens path above: the space is built by raw
/// operator powers with classical-Gram-Schmidt span maintenance and the
/// weighted least-squares problem is solved by a dense QR factorization.
OracleResult krylov_ls_oracle(const ComplexMatrix& A, const ComplexVector& b,
                              const PreconditionerSetup& setup, const DeflationOperator* defl,
                              Index k);

}  // namespace fovgmres
