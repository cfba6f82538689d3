#include <fovgmres/deflation.hpp>
#include <fovgmres/errors.hpp>

#include <cmath>
#include <string>

namespace fovgmres {

ComplexVector DeflationOperator::apply_pd(const ComplexVector& v) const {
  if (m == 0) return v;
  return v - AZ * (core_inv * (Y.adjoint() * v));
}

ComplexVector DeflationOperator::apply_qd(const ComplexVector& v) const {
  if (m == 0) return v;
  return v - Z * (core_inv * (AadjY.adjoint() * v));
}

ComplexMatrix DeflationOperator::pd_matrix() const {
  ComplexMatrix I = ComplexMatrix::Identity(n, n);
  if (m == 0) return I;
  return I - AZ * core_inv * Y.adjoint();
}

ComplexMatrix DeflationOperator::qd_matrix() const {
  ComplexMatrix I = ComplexMatrix::Identity(n, n);
  if (m == 0) return I;
  return I - Z * core_inv * AadjY.adjoint();
}

ComplexVector DeflationOperator::compose_full_solution(const ComplexVector& x_tilde,
                                                       const ComplexVector& b) const {
  if (m == 0) return x_tilde;
  return apply_qd(x_tilde) + Z * (core_inv * (Y.adjoint() * b));
}

namespace {

Real rcond_of(const ComplexMatrix& C) {
  Eigen::JacobiSVD<ComplexMatrix> svd(C);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

}  // namespace

DeflationOperator build_projectors(const ComplexMatrix& A, const ComplexMatrix& Y,
                                   const ComplexMatrix& Z, const ComplexMatrix* H) {
  check_square(A, "deflated operator");
  DeflationOperator d;
  d.n = A.rows();
  d.m = Y.cols();
  if (Y.cols() != Z.cols() || Y.rows() != d.n || Z.rows() != d.n)
    throw DimensionMismatch("deflation bases must be n x m with a common m");
  d.Y = Y;
  d.Z = Z;
  if (d.m == 0) return d;

  if (Eigen::ColPivHouseholderQR<ComplexMatrix>(Y).rank() < d.m)
    throw RankLoss("basis Y is rank deficient");
  if (Eigen::ColPivHouseholderQR<ComplexMatrix>(Z).rank() < d.m)
    throw RankLoss("basis Z is rank deficient");

  d.AZ = A * Z;
  d.AadjY = A.adjoint() * Y;
  d.core = Y.adjoint() * d.AZ;
  d.core_rcond = rcond_of(d.core);
  if (!(d.core_rcond >= 1e-12))
    throw SingularCore("Y^*AZ reciprocal condition " + std::to_string(d.core_rcond));
  d.core_inv = d.core.partialPivLu().inverse();

  if (H != nullptr) {
    // Second existence condition: Y^* H^{-1} Z invertible.
    const ComplexMatrix L = cholesky_hpd(*H);
    ComplexMatrix HiZ = L.triangularView<Eigen::Lower>().solve(Z);
    L.adjoint().triangularView<Eigen::Upper>().solveInPlace(HiZ);
    const Real rc = rcond_of(Y.adjoint() * HiZ);
    if (!(rc >= 1e-12))
      throw SingularCore("Y^*H^{-1}Z reciprocal condition " + std::to_string(rc));
  }
  return d;
}

namespace {

// Phase-fix an eigenvector so its largest entry is real positive; keeps the
// exported bases reproducible across runs.
ComplexVector fix_phase(const ComplexVector& x) {
  Index imax = 0;
  x.cwiseAbs().maxCoeff(&imax);
  const Complex piv = x(imax);
  if (std::abs(piv) == 0.0) return x;
  return x * (std::conj(piv) / std::abs(piv));
}

}  // namespace

SpectralDeflationSpace build_spectral_space(const AssembledProblem& problem,
                                            const ComplexMatrix& H, GevpKind kind, Index m) {
  if (m % 2 != 0) throw OddRequest("deflation dimension must be even, got " + std::to_string(m));
  if (m >= problem.n) throw Error("InvalidArgument", "deflation dimension must be below n");

  SpectralDeflationSpace sp;
  sp.kind = kind;
  sp.m = m;
  sp.h_fingerprint = H.norm();
  sp.m_fingerprint = problem.M.norm();

  EigenPairs pairs;
  if (kind == GevpKind::HN) {
    const ComplexMatrix L = cholesky_hpd(H);
    ComplexMatrix Hinv = ComplexMatrix::Identity(problem.n, problem.n);
    L.triangularView<Eigen::Lower>().solveInPlace(Hinv);
    L.adjoint().triangularView<Eigen::Upper>().solveInPlace(Hinv);
    Hinv = (Hinv + Hinv.adjoint()) / Real(2);
    pairs = skew_gen_eig(problem.N, Hinv);
  } else {
    pairs = skew_gen_eig(problem.N, problem.M);
  }
  sp.spectrum = pairs.values;

  if (m == 0) {
    sp.basis.resize(problem.n, 0);
    sp.tau = pairs.spectral_radius();
    return sp;
  }

  // Walk conjugate pairs in modulus order, realify the positive-imaginary
  // representative, and keep only columns that increase the rank. A pair that
  // contributes a single independent column (real eigenvector) is kept as one
  // column and the next pair fills the gap.
  ComplexMatrix basis(problem.n, m);
  Index filled = 0;
  Index idx = 0;
  const Real zero_tol = 1e-12 * std::max(pairs.spectral_radius(), Real(1));
  Index next_index_after = 0;  // index of the first eigenvalue not deflated
  while (filled < m && idx < pairs.count()) {
    const Complex lam = pairs.values(idx);
    if (std::abs(lam) <= zero_tol) break;  // zero modes never enter the space
    if (lam.imag() < 0.0) {
      ++idx;
      continue;  // conjugate partner of an already-processed value
    }
    const ComplexVector x = fix_phase(pairs.vectors.col(idx));
    const Vector re = x.real();
    const Vector im = x.imag();
    for (const Vector* col : {&re, &im}) {
      if (filled >= m) break;
      if (col->norm() <= 1e-13) continue;
      basis.col(filled) = (*col / col->norm()).cast<Complex>();
      const Index rank =
          Eigen::ColPivHouseholderQR<ComplexMatrix>(basis.leftCols(filled + 1)).rank();
      if (rank == filled + 1) ++filled;
    }
    ++idx;
    next_index_after = idx;
    // Skip over the conjugate partner in the count of consumed eigenvalues.
    while (next_index_after < pairs.count() &&
           std::abs(std::abs(pairs.values(next_index_after)) - std::abs(lam)) <=
               1e-14 * std::max(std::abs(lam), Real(1)) &&
           pairs.values(next_index_after).imag() < 0.0)
      ++next_index_after;
  }
  if (filled < m)
    throw RankLoss("could only realify " + std::to_string(filled) + " independent columns");

  sp.basis = basis;
  sp.tau = (next_index_after < pairs.count()) ? std::abs(pairs.values(next_index_after)) : 0.0;
  return sp;
}

Pairing make_pairing(const SpectralDeflationSpace& space, const AssembledProblem& problem,
                     const ComplexMatrix& H, PairingVariant variant) {
  Pairing p;
  if (space.kind == GevpKind::MinvN) {
    if (variant != PairingVariant::YhAZ)
      throw IncompatibleVariant("minv-n spaces only support the exact pairing Y = H A Z");
    p.Z = space.basis;
    p.Y = H * (problem.A * p.Z);
    p.exact_hypothesis = true;
    return p;
  }
  p.Y = space.basis;
  switch (variant) {
    case PairingVariant::YhAZ: {
      // Z = A^{-1} H^{-1} Y so that H A Z = Y exactly; spans the same space
      // as A^{-1} N Y and yields the identical projector.
      const ComplexMatrix L = cholesky_hpd(H);
      ComplexMatrix HiY = L.triangularView<Eigen::Lower>().solve(p.Y);
      L.adjoint().triangularView<Eigen::Upper>().solveInPlace(HiY);
      p.Z = problem.A.partialPivLu().solve(HiY);
      p.exact_hypothesis = true;
      break;
    }
    case PairingVariant::ZequalsY:
      p.Z = p.Y;
      break;
    case PairingVariant::ZequalsNY:
      p.Z = problem.N * p.Y;
      break;
  }
  return p;
}

}  // namespace fovgmres
