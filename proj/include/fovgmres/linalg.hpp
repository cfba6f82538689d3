#pragma once

#include <fovgmres/errors.hpp>
#include <fovgmres/types.hpp>

namespace fovgmres {

/// Additive decomposition A = hermitian + skew with hermitian = (A + A*)/2
/// and skew = (A - A*)/2.
struct HermitianSplit {
  ComplexMatrix hermitian;
  ComplexMatrix skew;
};

/// Inner product induced by an hpd weight: inner(x, y) = y^* W x.
/// The lower Cholesky factor is kept so that norms can be evaluated through
/// Euclidean operations on L^* x, which keeps computed norms nonnegative.
struct InnerProduct {
  ComplexMatrix weight;  // W, hpd
  ComplexMatrix chol;    // lower triangular L, L L^* = W

  Index size() const { return weight.rows(); }

  static InnerProduct standard(Index n);
  /// Throws NotHermitian / NotPositiveDefinite.
  static InnerProduct from_weight(const ComplexMatrix& W);
};

/// Eigenpairs ordered by non-increasing modulus. On ties the value with the
/// larger imaginary part comes first; remaining ties are broken by the first
/// differing vector entry. Vectors are B-orthonormal for pencil problems.
struct EigenPairs {
  ComplexVector values;
  ComplexMatrix vectors;  // one column per value

  Index count() const { return values.size(); }
  Real spectral_radius() const { return count() == 0 ? 0.0 : std::abs(values(0)); }
};

/// Relative tolerance used to accept a matrix as Hermitian or skew-Hermitian.
inline constexpr Real kSymmetryTol = 1e-11;

void check_finite(const ComplexMatrix& A, const char* what);
void check_square(const ComplexMatrix& A, const char* what);
bool is_hermitian(const ComplexMatrix& A, Real tol = kSymmetryTol);
bool is_skew_hermitian(const ComplexMatrix& A, Real tol = kSymmetryTol);

HermitianSplit split_hermitian_skew(const ComplexMatrix& A);

/// Lower Cholesky factor of an hpd matrix. Fails with NotPositiveDefinite
/// exactly when a pivot is not strictly positive.
ComplexMatrix cholesky_hpd(const ComplexMatrix& B);

/// Solves M x = lambda B x for Hermitian M and hpd B. All returned values are
/// real (stored as complex with zero imaginary part).
EigenPairs hermitian_gen_eig(const ComplexMatrix& M, const ComplexMatrix& B);

/// Solves N x = lambda B x for skew-Hermitian N and hpd B. All values are
/// purely imaginary and the nonzero ones come in conjugate pairs. Returns the
/// m pairs of largest modulus, or all of them when m < 0.
EigenPairs skew_gen_eig(const ComplexMatrix& N, const ComplexMatrix& B, Index m = -1);

Complex w_inner(const ComplexVector& x, const ComplexVector& y, const InnerProduct& ip);
Real w_norm(const ComplexVector& x, const InnerProduct& ip);

}  // namespace fovgmres
