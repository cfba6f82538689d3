#include <fovgmres/cdr.hpp>
#include <fovgmres/errors.hpp>
#include <fovgmres/linalg.hpp>

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace fovgmres;

TEST_CASE("zero convection gives a symmetric positive definite system") {
  CdrProblemSpec spec;
  spec.nx = 5;
  spec.eta = 0.0;
  const AssembledProblem p = build_cdr(spec);
  CHECK(p.N.norm() == 0.0);
  CHECK((p.A - p.M).norm() == 0.0);
  CHECK_NOTHROW(cholesky_hpd(p.M));
}

TEST_CASE("skew part is antisymmetric exactly and A = M + N exactly") {
  CdrProblemSpec spec;
  spec.nx = 7;
  const AssembledProblem p = build_cdr(spec);
  CHECK((p.N + p.N.transpose()).norm() == 0.0);
  CHECK(p.N.imag().norm() == 0.0);
  CHECK(p.M.imag().norm() == 0.0);
  CHECK((p.A - (p.M + p.N)).norm() == 0.0);
  CHECK((p.M - p.M.transpose()).norm() == 0.0);
}

TEST_CASE("nx = 3 diffusion-reaction matrix matches the hand-assembled stencil") {
  CdrProblemSpec spec;
  spec.nx = 3;
  spec.c0 = 1.0;
  spec.nu = 1.0;
  spec.eta = 0.0;
  const AssembledProblem p = build_cdr(spec);
  REQUIRE(p.n == 9);
  const Real h = 2.0 / 4.0;

  // On the uniform right-triangle mesh the P1 stiffness matrix reduces to the
  // five-point stencil (4 center, -1 for the axis neighbors, 0 across the
  // square diagonal) and the mass matrix couples the six mesh neighbors.
  auto idx = [](Index i, Index j) { return (j - 1) * 3 + (i - 1); };
  Matrix Mh = Matrix::Zero(9, 9);
  for (Index j = 1; j <= 3; ++j)
    for (Index i = 1; i <= 3; ++i) {
      const Index r = idx(i, j);
      Mh(r, r) = 4.0 + h * h / 2.0;
      const Index di[6] = {1, -1, 0, 0, 1, -1};
      const Index dj[6] = {0, 0, 1, -1, 1, -1};
      for (int t = 0; t < 6; ++t) {
        const Index ii = i + di[t], jj = j + dj[t];
        if (ii < 1 || ii > 3 || jj < 1 || jj > 3) continue;
        const Real stiff = (t < 4) ? -1.0 : 0.0;
        Mh(r, idx(ii, jj)) = stiff + h * h / 12.0;
      }
    }
  CHECK((p.M.real() - Mh).norm() <= 1e-14 * Mh.norm());

  // Interior-only stiffness rows sum to zero: the center node is the only
  // one whose stencil avoids the boundary.
  const Real stiff_row_sum = (p.M.real().row(idx(2, 2)).sum() -
                              (h * h / 2.0 + 6.0 * h * h / 12.0));
  CHECK(std::abs(stiff_row_sum) <= 1e-13);

  // Vertex-rule load vector: b_i = h^2 f(x_i).
  auto f = [](Real x, Real y) { return std::exp(-2.5 * (x * x + (y + 0.8) * (y + 0.8))); };
  for (Index j = 1; j <= 3; ++j)
    for (Index i = 1; i <= 3; ++i) {
      const Real x = -1.0 + static_cast<Real>(i) * h, y = -1.0 + static_cast<Real>(j) * h;
      CHECK(p.b(idx(i, j)).real() == doctest::Approx(h * h * f(x, y)).epsilon(1e-13));
    }
}

TEST_CASE("Hermitian part stays positive definite across coefficient ranges") {
  for (Real c0 : {0.1, 1.0, 10.0})
    for (Real nu : {0.1, 1.0, 10.0}) {
      CdrProblemSpec spec;
      spec.nx = 4;
      spec.c0 = c0;
      spec.nu = nu;
      const AssembledProblem p = build_cdr(spec);
      CHECK_NOTHROW(cholesky_hpd(p.M));
    }
}

TEST_CASE("pencil spectrum is invariant under a symmetric permutation") {
  CdrProblemSpec spec;
  spec.nx = 4;
  const AssembledProblem p = build_cdr(spec);
  const Index n = p.n;

  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = (i * 7 + 3) % n;
  ComplexMatrix P = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) P(perm[static_cast<std::size_t>(i)], i) = Complex(1, 0);

  ComplexMatrix H = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) H(i, i) = Complex(1, 0) / p.M(i, i);
  const ComplexMatrix Hp = P * H * P.adjoint();
  const ComplexMatrix Mp = P * p.M * P.adjoint();

  const EigenPairs e1 = hermitian_gen_eig(p.M, H.inverse());
  const EigenPairs e2 = hermitian_gen_eig(Mp, Hp.inverse());
  REQUIRE(e1.count() == e2.count());
  for (Index i = 0; i < e1.count(); ++i)
    CHECK(e1.values(i).real() ==
          doctest::Approx(e2.values(i).real()).epsilon(1e-10).scale(1.0));
}

TEST_CASE("invalid problem parameters are rejected") {
  CdrProblemSpec spec;
  spec.nx = 2;
  CHECK_THROWS_AS(build_cdr(spec), Error);
  spec.nx = 4;
  spec.c0 = 0.0;
  CHECK_THROWS_AS(build_cdr(spec), Error);
  spec.c0 = 1.0;
  spec.nu = -1.0;
  CHECK_THROWS_AS(build_cdr(spec), Error);
}
