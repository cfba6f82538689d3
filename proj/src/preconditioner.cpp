#include <fovgmres/errors.hpp>
#include <fovgmres/preconditioner.hpp>

#include <algorithm>
#include <string>

namespace fovgmres {

namespace {

ComplexMatrix hpd_inverse(const ComplexMatrix& B) {
  const ComplexMatrix L = cholesky_hpd(B);
  ComplexMatrix inv = ComplexMatrix::Identity(B.rows(), B.cols());
  L.triangularView<Eigen::Lower>().solveInPlace(inv);
  L.adjoint().triangularView<Eigen::Upper>().solveInPlace(inv);
  return ((inv + inv.adjoint()) / Real(2)).eval();
}

}  // namespace

PreconditionerSetup make_setup_from_h(const ComplexMatrix& H, Placement placement) {
  check_square(H, "preconditioner");
  if (!is_hermitian(H)) throw NotHermitian("preconditioner H is not Hermitian");
  PreconditionerSetup s;
  s.placement = placement;
  s.H = (H + H.adjoint()) / Real(2);
  const Index n = H.rows();
  const ComplexMatrix C = cholesky_hpd(s.H);
  switch (placement) {
    case Placement::Left:
      s.HL = s.H;
      s.HR = ComplexMatrix::Identity(n, n);
      s.W = InnerProduct::from_weight(hpd_inverse(s.H));
      break;
    case Placement::Right:
      s.HL = ComplexMatrix::Identity(n, n);
      s.HR = s.H;
      s.W = InnerProduct::from_weight(s.H);
      break;
    case Placement::Split:
      s.HL = C.adjoint();
      s.HR = C;
      s.W = InnerProduct::standard(n);
      break;
  }
  return s;
}

PreconditionerSetup build_preconditioner(const AssembledProblem& problem, PrecondKind kind,
                                         Placement placement, Index nb) {
  const Index n = problem.n;
  ComplexMatrix H;
  switch (kind) {
    case PrecondKind::ExactM:
      H = hpd_inverse(problem.M);
      break;
    case PrecondKind::JacobiM: {
      H = ComplexMatrix::Zero(n, n);
      for (Index i = 0; i < n; ++i) {
        const Real d = problem.M(i, i).real();
        if (!(d > 0.0)) throw NotPositiveDefinite("nonpositive diagonal in M");
        H(i, i) = Complex(1.0 / d, 0.0);
      }
      break;
    }
    case PrecondKind::BlockJacobiM: {
      if (nb < 1 || nb > n)
        throw Error("InvalidArgument", "block count must be in [1, n], got " + std::to_string(nb));
      H = ComplexMatrix::Zero(n, n);
      const Index base = n / nb, extra = n % nb;
      Index start = 0;
      for (Index blk = 0; blk < nb; ++blk) {
        const Index len = base + (blk < extra ? 1 : 0);
        H.block(start, start, len, len) = hpd_inverse(problem.M.block(start, start, len, len));
        start += len;
      }
      break;
    }
  }
  PreconditionerSetup s = make_setup_from_h(H, placement);
  s.kind = kind;
  s.blocks = (kind == PrecondKind::BlockJacobiM) ? nb : 1;
  return s;
}

}  // namespace fovgmres
