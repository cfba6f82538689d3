#include <fovgmres/errors.hpp>
#include <fovgmres/fov.hpp>
#include <fovgmres/preconditioner.hpp>

#include <doctest.h>

#include <random>

using namespace fovgmres;

namespace {

std::mt19937& rng() {
  static std::mt19937 gen(4242u);
  return gen;
}

ComplexMatrix random_complex(Index n) {
  std::normal_distribution<Real> dist;
  ComplexMatrix A(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) A(i, j) = Complex(dist(rng()), dist(rng()));
  return A;
}

ComplexMatrix random_hpd(Index n) {
  const ComplexMatrix G = random_complex(n);
  return G * G.adjoint() + Real(n) * ComplexMatrix::Identity(n, n);
}

AssembledProblem cdr_problem(Index nx) {
  CdrProblemSpec spec;
  spec.nx = nx;
  return build_cdr(spec);
}

// Largest |eigenvalue| of the Hermitian reduction of the pencil
// N x = lambda B x through power iteration on the squared operator (the
// spectrum is symmetric, so the plain iteration would oscillate).
Real power_method_radius(const ComplexMatrix& N, const ComplexMatrix& B) {
  const ComplexMatrix L = cholesky_hpd(B);
  ComplexMatrix T = L.triangularView<Eigen::Lower>().solve(N);
  ComplexMatrix K = L.triangularView<Eigen::Lower>().solve(T.adjoint()).adjoint();
  const ComplexMatrix S = Complex(0, 1) * K;
  const ComplexMatrix S2 = S * S;
  ComplexVector v = ComplexVector::Ones(N.rows());
  v /= v.norm();
  Real lam = 0;
  for (int it = 0; it < 2000; ++it) {
    const ComplexVector w = S2 * v;
    const Real nw = w.norm();
    if (nw == 0) return 0;
    v = w / nw;
    const Real next = std::abs(v.dot(S2 * v));
    if (std::abs(next - lam) <= 1e-14 * std::max(next, Real(1))) {
      lam = next;
      break;
    }
    lam = next;
  }
  return std::sqrt(lam);
}

}  // namespace

TEST_CASE("fov of the identity collapses to the point 1") {
  const FovSample s = fov_boundary(ComplexMatrix::Identity(5, 5), InnerProduct::standard(5), 16);
  for (const Complex& p : s.boundary) CHECK(std::abs(p - Complex(1, 0)) <= 1e-12);
}

TEST_CASE("fov of a Hermitian matrix is the spectral interval") {
  ComplexMatrix B = random_hpd(6);
  const FovSample s = fov_boundary(B, InnerProduct::standard(6), 64);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(B);
  Real lo = 1e300, hi = -1e300;
  for (const Complex& p : s.boundary) {
    CHECK(std::abs(p.imag()) <= 1e-9 * B.norm());
    lo = std::min(lo, p.real());
    hi = std::max(hi, p.real());
  }
  CHECK(lo == doctest::Approx(es.eigenvalues().minCoeff()).epsilon(1e-9));
  CHECK(hi == doctest::Approx(es.eigenvalues().maxCoeff()).epsilon(1e-9));
}

TEST_CASE("random Rayleigh quotients lie inside the sampled hull") {
  const Index n = 7;
  const ComplexMatrix B = random_complex(n);
  const ComplexMatrix W = random_hpd(n);
  const InnerProduct ip = InnerProduct::from_weight(W);
  const FovSample s = fov_boundary(B, ip, 180);
  Real diam = 0;
  for (const Complex& p : s.boundary)
    for (const Complex& q : s.boundary) diam = std::max(diam, std::abs(p - q));
  std::normal_distribution<Real> dist;
  for (int t = 0; t < 500; ++t) {
    ComplexVector z(n);
    for (Index i = 0; i < n; ++i) z(i) = Complex(dist(rng()), dist(rng()));
    const Complex q = w_inner(B * z, z, ip) / w_inner(z, z, ip);
    CHECK(hull_contains(s.boundary, q, 1e-8 * std::max(diam, Real(1))));
  }
}

TEST_CASE("exact Hermitian preconditioning shrinks the real extent to a point") {
  const AssembledProblem p = cdr_problem(5);
  const PreconditionerSetup s = build_preconditioner(p, PrecondKind::ExactM, Placement::Right);
  const Rectangle o1 = enclosure_omega1(p, s.H);
  CHECK(o1.re_min == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(o1.re_max == doctest::Approx(1.0).epsilon(1e-9));
  const EigenPairs mn = skew_gen_eig(p.N, p.M);
  CHECK(o1.im_half == doctest::Approx(mn.spectral_radius()).epsilon(1e-9));
  // With H = M^{-1} the two enclosures coincide.
  const Rectangle o2 = enclosure_omega2(p, s.H);
  CHECK(o2.im_half == doctest::Approx(o1.im_half).epsilon(1e-9));
}

TEST_CASE("zero skew part degenerates the rectangle to the real interval") {
  CdrProblemSpec spec;
  spec.nx = 4;
  spec.eta = 0.0;
  const AssembledProblem p = build_cdr(spec);
  const PreconditionerSetup s = build_preconditioner(p, PrecondKind::JacobiM, Placement::Right);
  const Rectangle o1 = enclosure_omega1(p, s.H);
  CHECK(o1.im_half <= 1e-10 * o1.re_max);
}

TEST_CASE("sampled fov is enclosed by omega1 which is enclosed by omega2") {
  const AssembledProblem p = cdr_problem(6);
  const PreconditionerSetup s = build_preconditioner(p, PrecondKind::JacobiM, Placement::Right);
  const Rectangle o1 = enclosure_omega1(p, s.H);
  const Rectangle o2 = enclosure_omega2(p, s.H);
  CHECK(o1.re_min == doctest::Approx(o2.re_min).epsilon(1e-12));
  CHECK(o1.re_max == doctest::Approx(o2.re_max).epsilon(1e-12));
  CHECK(o1.im_half <= o2.im_half + 1e-10);

  const InnerProduct iph = InnerProduct::from_weight(s.H);
  const ComplexMatrix AH = p.A * s.H;
  const Real slack = 1e-8 * std::max({o1.re_max, o1.im_half, Real(1)});
  std::normal_distribution<Real> dist;
  for (int t = 0; t < 500; ++t) {
    ComplexVector z(p.n);
    for (Index i = 0; i < p.n; ++i) z(i) = Complex(dist(rng()), dist(rng()));
    const Complex q = w_inner(AH * z, z, iph) / w_inner(z, z, iph);
    CHECK(q.real() >= o1.re_min - slack);
    CHECK(q.real() <= o1.re_max + slack);
    CHECK(std::abs(q.imag()) <= o1.im_half + slack);
  }
}

TEST_CASE("imaginary half-height matches an independent power-method estimate") {
  const AssembledProblem p = cdr_problem(5);
  const PreconditionerSetup s = build_preconditioner(p, PrecondKind::JacobiM, Placement::Right);
  const Rectangle o1 = enclosure_omega1(p, s.H);
  const Real pm = power_method_radius(p.N, s.H.inverse());
  CHECK(o1.im_half == doctest::Approx(pm).epsilon(1e-10));
}

TEST_CASE("tau rectangles: no deflation recovers omega, deflation shrinks only the strip") {
  const AssembledProblem p = cdr_problem(6);
  const PreconditionerSetup s = build_preconditioner(p, PrecondKind::JacobiM, Placement::Right);
  const Rectangle o1 = enclosure_omega1(p, s.H);
  const Rectangle o2 = enclosure_omega2(p, s.H);

  const SpectralDeflationSpace h0 = build_spectral_space(p, s.H, GevpKind::HN, 0);
  const Rectangle t0 = enclosure_tau(p, s.H, h0);
  CHECK(t0.im_half == doctest::Approx(o1.im_half).epsilon(1e-10));
  const SpectralDeflationSpace m0 = build_spectral_space(p, s.H, GevpKind::MinvN, 0);
  const Rectangle u0 = enclosure_tau(p, s.H, m0);
  CHECK(u0.im_half == doctest::Approx(o2.im_half).epsilon(1e-10));

  Real prev = 1e300;
  for (Index m = 0; m <= 8; m += 2) {
    const SpectralDeflationSpace sp = build_spectral_space(p, s.H, GevpKind::HN, m);
    const Rectangle t = enclosure_tau(p, s.H, sp);
    CHECK(t.re_min == doctest::Approx(o1.re_min).epsilon(1e-12));
    CHECK(t.re_max == doctest::Approx(o1.re_max).epsilon(1e-12));
    CHECK(t.im_half <= prev + 1e-12);
    prev = t.im_half;
  }
}

TEST_CASE("tau rectangle rejects a space built against different operators") {
  const AssembledProblem p = cdr_problem(4);
  const PreconditionerSetup s = build_preconditioner(p, PrecondKind::JacobiM, Placement::Right);
  const SpectralDeflationSpace sp = build_spectral_space(p, s.H, GevpKind::HN, 2);
  const PreconditionerSetup other =
      build_preconditioner(p, PrecondKind::ExactM, Placement::Right);
  CHECK_THROWS_AS(enclosure_tau(p, other.H, sp), MismatchedOperators);
}

TEST_CASE("normalization reproduces the reference rectangle and is dilation invariant") {
  const Rectangle r{0.21, 3.00, 48.9};
  const NormalizedRectangle n = normalize(r);
  CHECK(n.mu == doctest::Approx(14.2857142857).epsilon(1e-9));
  CHECK(n.rho == doctest::Approx(232.857142857).epsilon(1e-9));
  CHECK(n.scale == doctest::Approx(0.21));

  for (Real a : {0.5, 2.0, 17.0}) {
    const NormalizedRectangle na = normalize(Rectangle{a * r.re_min, a * r.re_max, a * r.im_half});
    CHECK(std::abs(na.mu - n.mu) <= 1e-13 * n.mu);
    CHECK(std::abs(na.rho - n.rho) <= 1e-13 * n.rho);
  }

  CHECK_THROWS_AS(normalize(Rectangle{0.0, 1.0, 1.0}), NonPositiveRealPart);
  CHECK(normalize(Rectangle{1.0, 14.3, 233.0}).scale == doctest::Approx(1.0));
}
