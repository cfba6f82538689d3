#include <fovgmres/errors.hpp>
#include <fovgmres/fov.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace fovgmres {

FovSample fov_boundary(const ComplexMatrix& B, const InnerProduct& ip, Index n_angles) {
  check_square(B, "fov operand");
  if (B.rows() != ip.size()) throw DimensionMismatch("operand and weight sizes differ");
  if (n_angles < 8) throw Error("InvalidArgument", "need at least 8 angles");

  // Work in coordinates where W is Euclidean: Bt = L^* B L^{-*}.
  ComplexMatrix Bt = ip.chol.adjoint() * B;
  ip.chol.adjoint().triangularView<Eigen::Upper>().template solveInPlace<Eigen::OnTheRight>(Bt);

  FovSample sample;
  sample.weight = "hpd weight, n=" + std::to_string(ip.size());
  sample.boundary.reserve(static_cast<std::size_t>(n_angles));
  for (Index a = 0; a < n_angles; ++a) {
    const Real theta = 2.0 * EIGEN_PI * static_cast<Real>(a) / static_cast<Real>(n_angles);
    const Complex rot = std::polar(Real(1), theta);
    ComplexMatrix Hpart = (rot * Bt + (rot * Bt).adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(Hpart);
    if (es.info() != Eigen::Success) throw Error("EigFailure", "Hermitian eigensolver failed");
    const ComplexVector y = es.eigenvectors().col(Bt.rows() - 1);  // top eigenvalue
    const Complex q = y.dot(Bt * y) / y.dot(y);
    sample.boundary.push_back(q);
  }
  return sample;
}

bool hull_contains(const std::vector<Complex>& points, Complex p, Real slack) {
  // Monotone-chain hull, then signed distances to the hull edges.
  std::vector<Complex> pts = points;
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) {
    // Degenerate hull: distance to the segment (or point).
    if (pts.empty()) return false;
    if (pts.size() == 1) return std::abs(p - pts[0]) <= slack;
    const Complex d = pts[1] - pts[0];
    const Real len2 = std::norm(d);
    Real t = len2 == 0.0 ? 0.0 : ((p - pts[0]) * std::conj(d)).real() / len2;
    t = std::clamp(t, Real(0), Real(1));
    return std::abs(p - (pts[0] + t * d)) <= slack;
  }
  auto cross = [](Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
  };
  std::vector<Complex> hull(2 * pts.size());
  std::size_t h = 0;
  for (const Complex& q : pts) {
    while (h >= 2 && cross(hull[h - 2], hull[h - 1], q) <= 0) --h;
    hull[h++] = q;
  }
  const std::size_t lower = h + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (h >= lower && cross(hull[h - 2], hull[h - 1], *it) <= 0) --h;
    hull[h++] = *it;
  }
  hull.resize(h - 1);
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Complex a = hull[i], b = hull[(i + 1) % hull.size()];
    const Complex d = b - a;
    const Real len = std::abs(d);
    if (len == 0.0) continue;
    // Interior is to the left of each ccw edge.
    const Real signed_dist = cross(a, b, p) / len;
    if (signed_dist < -slack) return false;
  }
  return true;
}

namespace {

ComplexMatrix hpd_inverse(const ComplexMatrix& B) {
  const ComplexMatrix L = cholesky_hpd(B);
  ComplexMatrix inv = ComplexMatrix::Identity(B.rows(), B.cols());
  L.triangularView<Eigen::Lower>().solveInPlace(inv);
  L.adjoint().triangularView<Eigen::Upper>().solveInPlace(inv);
  return ((inv + inv.adjoint()) / Real(2)).eval();
}

std::pair<Real, Real> hm_extent(const AssembledProblem& problem, const ComplexMatrix& Hinv) {
  const EigenPairs ev = hermitian_gen_eig(problem.M, Hinv);
  Real lo = ev.values(0).real(), hi = lo;
  for (Index i = 0; i < ev.count(); ++i) {
    lo = std::min(lo, ev.values(i).real());
    hi = std::max(hi, ev.values(i).real());
  }
  if (!(lo > 1e-12 * std::max(hi, Real(0))))
    throw NotPd("lambda_min(HM) = " + std::to_string(lo) + ", Hermitian part not pd under H");
  return {lo, hi};
}

}  // namespace

Rectangle enclosure_omega1(const AssembledProblem& problem, const ComplexMatrix& H) {
  const ComplexMatrix Hinv = hpd_inverse(H);
  const auto [lo, hi] = hm_extent(problem, Hinv);
  const EigenPairs skew = skew_gen_eig(problem.N, Hinv);
  return Rectangle{lo, hi, skew.spectral_radius()};
}

Rectangle enclosure_omega2(const AssembledProblem& problem, const ComplexMatrix& H) {
  const ComplexMatrix Hinv = hpd_inverse(H);
  const auto [lo, hi] = hm_extent(problem, Hinv);
  const EigenPairs skew = skew_gen_eig(problem.N, problem.M);
  return Rectangle{lo, hi, skew.spectral_radius() * hi};
}

Rectangle enclosure_tau(const AssembledProblem& problem, const ComplexMatrix& H,
                        const SpectralDeflationSpace& space) {
  const Real href = H.norm(), mref = problem.M.norm();
  if (std::abs(href - space.h_fingerprint) > 1e-12 * std::max(href, Real(1)) ||
      std::abs(mref - space.m_fingerprint) > 1e-12 * std::max(mref, Real(1)))
    throw MismatchedOperators("deflation space was built against different H/M operators");
  const ComplexMatrix Hinv = hpd_inverse(H);
  const auto [lo, hi] = hm_extent(problem, Hinv);
  const Real half = space.kind == GevpKind::HN ? space.tau : hi * space.tau;
  return Rectangle{lo, hi, half};
}

NormalizedRectangle normalize(const Rectangle& rect) {
  if (!(rect.re_min > 0.0))
    throw NonPositiveRealPart("rectangle must lie strictly right of the origin");
  if (rect.re_max < rect.re_min) throw Error("InvalidArgument", "re_max < re_min");
  return NormalizedRectangle{rect.re_max / rect.re_min, rect.im_half / rect.re_min, rect.re_min};
}

}  // namespace fovgmres
