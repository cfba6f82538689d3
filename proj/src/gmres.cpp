#include <fovgmres/errors.hpp>
#include <fovgmres/gmres.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace fovgmres {

std::vector<Real> GmresTrace::relative() const {
  std::vector<Real> rel(residual_norms.size());
  const Real ref = reference_norm > 0.0 ? reference_norm : Real(1);
  for (std::size_t i = 0; i < rel.size(); ++i) rel[i] = residual_norms[i] / ref;
  return rel;
}

namespace {

constexpr Real kBreakdownTol = 1e-14;

// Everything runs in coordinates where the W-inner product is Euclidean:
// vectors v are stored as L^* v with W = L L^*.
struct WorkSpace {
  const ComplexMatrix& A;
  const PreconditionerSetup& setup;
  const DeflationOperator* defl;

  ComplexVector deflate(const ComplexVector& v) const {
    return defl != nullptr ? defl->apply_pd(v) : v;
  }
  // L^* HL PD (...) applied to a residual-space vector.
  ComplexVector to_transformed(const ComplexVector& r) const {
    return setup.W.chol.adjoint() * (setup.HL * deflate(r));
  }
  // Operator in transformed coordinates: L^* HL PD A HR L^{-*}.
  ComplexVector apply_operator(const ComplexVector& v) const {
    ComplexVector u = setup.W.chol.adjoint()
                          .triangularView<Eigen::Upper>()
                          .solve(v);
    return to_transformed(A * (setup.HR * u));
  }
  // Map a transformed-space correction back to solution coordinates.
  ComplexVector to_solution(const ComplexVector& v) const {
    ComplexVector u = setup.W.chol.adjoint()
                          .triangularView<Eigen::Upper>()
                          .solve(v);
    return setup.HR * u;
  }
};

struct Givens {
  Real c;
  Complex s;
};

// Unitary rotation [c, s; -conj(s), c] with real c zeroing the second entry.
Givens make_givens(Complex a, Complex b) {
  const Real na = std::abs(a), nb = std::abs(b);
  const Real r = std::hypot(na, nb);
  if (r == 0.0) return {1.0, Complex(0, 0)};
  if (na == 0.0) return {0.0, std::conj(b) / nb};
  const Complex phase = a / na;
  return {na / r, phase * std::conj(b) / r};
}

}  // namespace

GmresTrace gmres_solve(const ComplexMatrix& A, const ComplexVector& b,
                       const PreconditionerSetup& setup, const DeflationOperator* defl,
                       const GmresConfig& cfg) {
  check_square(A, "system matrix");
  const Index n = A.rows();
  if (b.size() != n || setup.size() != n)
    throw DimensionMismatch("system, rhs and preconditioner sizes differ");
  if (!(cfg.tol > 0.0)) throw Error("InvalidArgument", "tolerance must be positive");
  if (cfg.max_it < 1) throw Error("InvalidArgument", "max_it must be >= 1");

  WorkSpace ws{A, setup, defl};
  ComplexVector x0 = cfg.x0.size() == 0 ? ComplexVector::Zero(n).eval() : cfg.x0;
  if (x0.size() != n) throw DimensionMismatch("initial guess size mismatch");

  GmresTrace trace;
  trace.reference_norm = ws.to_transformed(b).norm();
  ComplexVector d0 = ws.to_transformed(b - A * x0);
  const Real beta = d0.norm();
  trace.residual_norms.push_back(beta);
  if (!std::isfinite(beta)) throw SingularProjector("non-finite initial residual");

  const Real stop = cfg.tol * trace.reference_norm;
  if (beta <= stop) {
    trace.converged = true;
    trace.iterations_to_tol = 0;
    trace.solution = x0;
    return trace;
  }

  const Index kmax = std::min<Index>(cfg.max_it, n);
  ComplexMatrix V(n, kmax + 1);
  ComplexMatrix Hess = ComplexMatrix::Zero(kmax + 1, kmax);
  std::vector<Givens> rot;
  ComplexVector g = ComplexVector::Zero(kmax + 1);
  g(0) = beta;
  V.col(0) = d0 / beta;

  auto assemble_solution = [&](Index k) {
    // Back-substitute the rotated Hessenberg system R y = g.
    ComplexVector y(k);
    for (Index i = k - 1; i >= 0; --i) {
      Complex acc = g(i);
      for (Index j = i + 1; j < k; ++j) acc -= Hess(i, j) * y(j);
      y(i) = acc / Hess(i, i);
    }
    return (x0 + ws.to_solution(V.leftCols(k) * y)).eval();
  };

  for (Index k = 0; k < kmax; ++k) {
    ComplexVector w = ws.apply_operator(V.col(k));
    if (!w.allFinite()) throw SingularProjector("non-finite Arnoldi vector at step " +
                                                std::to_string(k + 1));
    const Real before = w.norm();
    for (Index i = 0; i <= k; ++i) {
      const Complex h = V.col(i).dot(w);
      Hess(i, k) = h;
      w -= h * V.col(i);
    }
    if (w.norm() < before / std::sqrt(Real(2))) {
      for (Index i = 0; i <= k; ++i) {
        const Complex h = V.col(i).dot(w);
        Hess(i, k) += h;
        w -= h * V.col(i);
      }
    }
    const Real hk1 = w.norm();
    Hess(k + 1, k) = hk1;
    const bool exhausted = hk1 < kBreakdownTol * beta;
    if (!exhausted) V.col(k + 1) = w / hk1;

    for (Index i = 0; i < k; ++i) {
      const Complex t1 = Hess(i, k), t2 = Hess(i + 1, k);
      Hess(i, k) = rot[i].c * t1 + rot[i].s * t2;
      Hess(i + 1, k) = -std::conj(rot[i].s) * t1 + rot[i].c * t2;
    }
    rot.push_back(make_givens(Hess(k, k), Hess(k + 1, k)));
    const Givens& G = rot.back();
    Hess(k, k) = G.c * Hess(k, k) + G.s * Hess(k + 1, k);
    Hess(k + 1, k) = Complex(0, 0);
    const Complex g1 = g(k);
    g(k) = G.c * g1;
    g(k + 1) = -std::conj(G.s) * g1;

    const Real res = std::abs(g(k + 1));
    trace.residual_norms.push_back(res);
    if (res <= stop) {
      trace.converged = true;
      trace.iterations_to_tol = k + 1;
      trace.solution = assemble_solution(k + 1);
      return trace;
    }
    if (exhausted) {
      trace.solution = assemble_solution(k + 1);
      throw Breakdown("Arnoldi basis exhausted at step " + std::to_string(k + 1) +
                      " with relative residual " +
                      std::to_string(res / std::max(trace.reference_norm, Real(1e-300))));
    }
  }
  trace.solution = assemble_solution(kmax);
  return trace;
}

OracleResult krylov_ls_oracle(const ComplexMatrix& A, const ComplexVector& b,
                              const PreconditionerSetup& setup, const DeflationOperator* defl,
                              Index k) {
  check_square(A, "system matrix");
  const Index n = A.rows();
  if (b.size() != n || setup.size() != n)
    throw DimensionMismatch("system, rhs and preconditioner sizes differ");
  if (k < 0 || k > n) throw Error("InvalidArgument", "oracle step must lie in [0, n]");

  WorkSpace ws{A, setup, defl};
  const ComplexVector c = ws.to_transformed(b);
  OracleResult out;
  if (k == 0) {
    out.value = c.norm();
    return out;
  }

  // Solution-space Krylov directions (H PD A)^j H PD b, with classical
  // Gram-Schmidt (two passes) keeping the span numerically usable.
  const ComplexMatrix& H = setup.H;
  auto advance = [&](const ComplexVector& v) { return (H * ws.deflate(A * v)).eval(); };
  ComplexMatrix Q(n, k);
  ComplexVector seed = H * ws.deflate(b);
  const Real first = seed.norm();
  Index r = 0;
  ComplexVector t = seed;
  while (r < k) {
    for (int pass = 0; pass < 2 && r > 0; ++pass)
      t -= Q.leftCols(r) * (Q.leftCols(r).adjoint() * t).eval();
    const Real nt = t.norm();
    if (nt < kBreakdownTol * first) {
      out.lucky_breakdown = true;
      break;
    }
    Q.col(r) = t / nt;
    ++r;
    if (r < k) t = advance(Q.col(r - 1));
  }
  out.rank = r;
  if (r == 0) {
    out.value = c.norm();
    return out;
  }

  // min_y || c - (L^* HL PD A) Q y ||_2 by dense QR.
  ComplexMatrix T(n, r);
  for (Index j = 0; j < r; ++j) T.col(j) = ws.to_transformed(A * Q.col(j));
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(T);
  const ComplexVector y = qr.solve(c);
  out.value = (c - T * y).norm();
  return out;
}

}  // namespace fovgmres
