#include <fovgmres/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace fovgmres {

void check_finite(const ComplexMatrix& A, const char* what) {
  if (!A.allFinite()) throw NonFinite(std::string(what) + " has NaN/Inf entries");
}

void check_square(const ComplexMatrix& A, const char* what) {
  if (A.rows() != A.cols())
    throw DimensionMismatch(std::string(what) + " must be square, got " +
                            std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
}

bool is_hermitian(const ComplexMatrix& A, Real tol) {
  const Real scale = A.norm();
  return (A - A.adjoint()).norm() <= tol * std::max(scale, Real(1e-300));
}

bool is_skew_hermitian(const ComplexMatrix& A, Real tol) {
  const Real scale = A.norm();
  if (scale == 0.0) return true;
  return (A + A.adjoint()).norm() <= tol * scale;
}

HermitianSplit split_hermitian_skew(const ComplexMatrix& A) {
  check_square(A, "split input");
  check_finite(A, "split input");
  HermitianSplit out;
  out.hermitian = (A + A.adjoint()) / Real(2);
  out.skew = (A - A.adjoint()) / Real(2);
  return out;
}

ComplexMatrix cholesky_hpd(const ComplexMatrix& B) {
  check_square(B, "Cholesky input");
  check_finite(B, "Cholesky input");
  if (!is_hermitian(B)) throw NotHermitian("Cholesky input is not Hermitian");
  Eigen::LLT<ComplexMatrix> llt(B);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("Cholesky pivot failure, matrix is not hpd");
  ComplexMatrix L = llt.matrixL();
  // Eigen can succeed on a semidefinite borderline; insist on positive pivots.
  for (Index i = 0; i < L.rows(); ++i)
    if (!(L(i, i).real() > 0.0))
      throw NotPositiveDefinite("nonpositive pivot at index " + std::to_string(i));
  return L;
}

InnerProduct InnerProduct::standard(Index n) {
  InnerProduct ip;
  ip.weight = ComplexMatrix::Identity(n, n);
  ip.chol = ComplexMatrix::Identity(n, n);
  return ip;
}

InnerProduct InnerProduct::from_weight(const ComplexMatrix& W) {
  InnerProduct ip;
  ip.weight = (W + W.adjoint()) / Real(2);  // symmetrize roundoff only
  if (!is_hermitian(W)) throw NotHermitian("weight matrix is not Hermitian");
  ip.chol = cholesky_hpd(ip.weight);
  return ip;
}

namespace {

// Deterministic ordering: non-increasing |lambda|, then larger imaginary
// part, then the first differing vector entry (by real then imaginary part).
struct PairOrder {
  const ComplexVector& values;
  const ComplexMatrix& vectors;
  bool operator()(Index a, Index b) const {
    const Real ma = std::abs(values(a)), mb = std::abs(values(b));
    if (std::abs(ma - mb) > 1e-14 * std::max({ma, mb, Real(1)})) return ma > mb;
    const Real ia = values(a).imag(), ib = values(b).imag();
    if (ia != ib) return ia > ib;
    for (Index r = 0; r < vectors.rows(); ++r) {
      const Complex va = vectors(r, a), vb = vectors(r, b);
      if (std::abs(va - vb) > 1e-12) {
        if (va.real() != vb.real()) return va.real() < vb.real();
        return va.imag() < vb.imag();
      }
    }
    return false;
  }
};

EigenPairs reorder(const ComplexVector& values, const ComplexMatrix& vectors) {
  std::vector<Index> perm(static_cast<std::size_t>(values.size()));
  std::iota(perm.begin(), perm.end(), Index(0));
  std::stable_sort(perm.begin(), perm.end(), PairOrder{values, vectors});
  EigenPairs out;
  out.values.resize(values.size());
  out.vectors.resize(vectors.rows(), vectors.cols());
  for (Index j = 0; j < values.size(); ++j) {
    out.values(j) = values(perm[static_cast<std::size_t>(j)]);
    out.vectors.col(j) = vectors.col(perm[static_cast<std::size_t>(j)]);
  }
  return out;
}

}  // namespace

EigenPairs hermitian_gen_eig(const ComplexMatrix& M, const ComplexMatrix& B) {
  check_square(M, "pencil matrix");
  if (M.rows() != B.rows() || M.cols() != B.cols())
    throw DimensionMismatch("pencil matrices differ in size");
  check_finite(M, "pencil matrix");
  if (!is_hermitian(M)) throw NotHermitian("left pencil matrix is not Hermitian");
  const ComplexMatrix L = cholesky_hpd(B);  // throws if B is not hpd

  // Reduce to the standard Hermitian problem L^{-1} M L^{-*} y = lambda y.
  ComplexMatrix T = L.triangularView<Eigen::Lower>().solve(M);
  ComplexMatrix S = L.triangularView<Eigen::Lower>().solve(T.adjoint()).adjoint();
  S = (S + S.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(S);
  if (es.info() != Eigen::Success) throw Error("EigFailure", "Hermitian eigensolver failed");

  ComplexVector values(S.rows());
  for (Index i = 0; i < S.rows(); ++i) values(i) = Complex(es.eigenvalues()(i), 0.0);
  ComplexMatrix vectors = L.adjoint().triangularView<Eigen::Upper>().solve(es.eigenvectors());
  return reorder(values, vectors);
}

EigenPairs skew_gen_eig(const ComplexMatrix& N, const ComplexMatrix& B, Index m) {
  check_square(N, "pencil matrix");
  if (N.rows() != B.rows() || N.cols() != B.cols())
    throw DimensionMismatch("pencil matrices differ in size");
  check_finite(N, "pencil matrix");
  if (!is_skew_hermitian(N)) throw NotSkew("left pencil matrix is not skew-Hermitian");
  const ComplexMatrix L = cholesky_hpd(B);

  // i L^{-1} N L^{-*} is Hermitian; its real eigenvalue t maps to lambda = -i t.
  ComplexMatrix T = L.triangularView<Eigen::Lower>().solve(N);
  ComplexMatrix K = L.triangularView<Eigen::Lower>().solve(T.adjoint()).adjoint();
  ComplexMatrix S = Complex(0, 1) * K;
  S = (S + S.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(S);
  if (es.info() != Eigen::Success) throw Error("EigFailure", "Hermitian eigensolver failed");

  ComplexVector values(S.rows());
  for (Index i = 0; i < S.rows(); ++i) values(i) = Complex(0.0, -es.eigenvalues()(i));
  ComplexMatrix vectors = L.adjoint().triangularView<Eigen::Upper>().solve(es.eigenvectors());
  EigenPairs all = reorder(values, vectors);
  if (m < 0 || m >= all.count()) return all;
  EigenPairs top;
  top.values = all.values.head(m);
  top.vectors = all.vectors.leftCols(m);
  return top;
}

Complex w_inner(const ComplexVector& x, const ComplexVector& y, const InnerProduct& ip) {
  if (x.size() != ip.size() || y.size() != ip.size())
    throw DimensionMismatch("w_inner operand size does not match weight");
  // <x,y>_W = y^* W x = (L^* y)^* (L^* x)
  const ComplexVector lx = ip.chol.adjoint() * x;
  const ComplexVector ly = ip.chol.adjoint() * y;
  return ly.dot(lx);  // Eigen dot conjugates the left argument
}

Real w_norm(const ComplexVector& x, const InnerProduct& ip) {
  if (x.size() != ip.size())
    throw DimensionMismatch("w_norm operand size does not match weight");
  return (ip.chol.adjoint() * x).norm();
}

}  // namespace fovgmres
