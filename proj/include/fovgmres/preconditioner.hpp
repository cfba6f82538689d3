#pragma once

#include <fovgmres/cdr.hpp>
#include <fovgmres/linalg.hpp>
#include <fovgmres/types.hpp>

namespace fovgmres {

enum class PrecondKind { ExactM, JacobiM, BlockJacobiM };
enum class Placement { Left, Right, Split };

/// Split preconditioning data: GMRES runs on HL*A*HR in the W-inner product,
/// with combined preconditioner H = HR*HL. The three placements all satisfy
/// H = HL^* W HL, so the minimized residual norm is ||r||_H in every case:
///   left:  HL = H,        HR = I,        W = H^{-1}
///   right: HL = I,        HR = H,        W = H
///   split: HL = chol(H)^*, HR = chol(H), W = I
struct PreconditionerSetup {
  PrecondKind kind = PrecondKind::ExactM;
  Placement placement = Placement::Right;
  Index blocks = 1;
  ComplexMatrix H;   // combined preconditioner, hpd
  ComplexMatrix HL;  // left factor
  ComplexMatrix HR;  // right factor
  InnerProduct W;

  Index size() const { return H.rows(); }
};

/// Wraps an arbitrary hpd H in the requested placement.
PreconditionerSetup make_setup_from_h(const ComplexMatrix& H, Placement placement);

/// Builds H from the Hermitian part of the assembled problem:
/// exact-m H = M^{-1}; jacobi-m H = diag(M)^{-1}; block-jacobi-m the inverse
/// of the block diagonal of M with nb contiguous blocks.
PreconditionerSetup build_preconditioner(const AssembledProblem& problem, PrecondKind kind,
                                         Placement placement, Index nb = 4);

}  // namespace fovgmres
