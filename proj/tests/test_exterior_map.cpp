#include <fovgmres/errors.hpp>
#include <fovgmres/exterior_map.hpp>

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fovgmres;

namespace {

Real rect_diameter(Real mu, Real rho) { return std::hypot(mu - 1.0, 2.0 * rho); }

// Direct Chebyshev T_k by the three-term recurrence (small k only).
Complex cheb_t(Index k, Complex x) {
  Complex tm(1, 0), t = x;
  if (k == 0) return tm;
  for (Index i = 1; i < k; ++i) {
    const Complex next = 2.0 * x * t - tm;
    tm = t;
    t = next;
  }
  return t;
}

}  // namespace

TEST_CASE("four-fold symmetry of the square forces alpha = pi/4") {
  CHECK(solve_parameter(3.0, 1.0) == doctest::Approx(EIGEN_PI / 4).epsilon(1e-10));
}

TEST_CASE("prevertex angle responds monotonically to the aspect ratio") {
  // Wider rectangles pull the prevertices toward the real axis, taller ones
  // toward the imaginary axis; the vertical-segment limit mu -> 1 drives
  // alpha to pi/2.
  Real prev = solve_parameter(1.0 + 1e-2, 1.0);
  for (Real eps : {1e-3, 1e-4, 1e-5}) {
    const Real a = solve_parameter(1.0 + eps, 1.0);
    CHECK(a > prev);
    CHECK(a < EIGEN_PI / 2);
    prev = a;
  }
  CHECK(prev > EIGEN_PI / 2 - 0.2);
  CHECK(solve_parameter(9.0, 1.0) < solve_parameter(2.0, 1.0));
  CHECK_THROWS_AS(solve_parameter(1.0, 1.0), DegenerateRectangle);
  CHECK_THROWS_AS(solve_parameter(2.0, 0.0), DegenerateRectangle);
}

TEST_CASE("corner collocation: prevertices map onto the rectangle corners") {
  for (auto [mu, rho] : {std::pair{2.0, 4.0}, {3.0, 1.0}, {14.2857, 232.857}, {9.0, 0.25}}) {
    const ExteriorMapRectangle map = build_exterior_map(mu, rho, 16);
    const Real tol = 1e-8 * rect_diameter(mu, rho);
    const std::array<Complex, 4> want = {Complex(mu, rho), Complex(mu, -rho), Complex(1, -rho),
                                         Complex(1, rho)};
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(map.corners[i] - want[i]) <= tol);
      CHECK(std::abs(psi_eval(map, map.prevertices()[i]) - want[i]) <= tol);
    }
    // Axis crossings pin the additive constant consistently across the
    // series and path evaluation regimes.
    CHECK(std::abs(psi_eval(map, Complex(1, 0)) - Complex(mu, 0)) <= tol);
    CHECK(std::abs(psi_eval(map, Complex(-1, 0)) - Complex(1, 0)) <= tol);
  }
}

TEST_CASE("evaluation commutes with conjugation") {
  const ExteriorMapRectangle map = build_exterior_map(2.0, 4.0, 16);
  std::mt19937 gen(99u);
  std::uniform_real_distribution<Real> rad(1.0, 3.0), ang(-EIGEN_PI, EIGEN_PI);
  for (int t = 0; t < 50; ++t) {
    const Complex w = std::polar(rad(gen), ang(gen));
    const Complex a = psi_eval(map, w);
    const Complex b = std::conj(psi_eval(map, std::conj(w)));
    CHECK(std::abs(a - b) <= 1e-10 * std::max(std::abs(a), Real(1)));
  }
}

TEST_CASE("Laurent tail controls the far-field error") {
  const ExteriorMapRectangle map = build_exterior_map(2.0, 4.0, 16);
  const Complex w(1000.0, 0.0);
  const Complex lin = map.capacity * w + Complex(map.center, 0);
  CHECK(std::abs(psi_eval(map, w) - lin) <= std::abs(map.laurent_neg[0]) / std::abs(w) * 1.1);
}

TEST_CASE("evaluation inside the disk is rejected") {
  const ExteriorMapRectangle map = build_exterior_map(2.0, 1.0, 8);
  CHECK_THROWS_AS(psi_eval(map, Complex(0.5, 0)), InsideDisk);
  CHECK_THROWS_AS(psi_derivative(map, Complex(0.2, 0.1)), InsideDisk);
}

TEST_CASE("thin rectangle gamma approaches the horizontal-segment value") {
  const ExteriorMapRectangle map = build_exterior_map(2.0, 0.01, 8);
  CHECK(std::abs(map.gamma - segment_gamma_horizontal(2.0)) <= 1e-2);
  CHECK(segment_gamma_horizontal(2.0) == doctest::Approx(0.1715728752538099).epsilon(1e-12));
}

TEST_CASE("square capacity matches the closed form") {
  const ExteriorMapRectangle map = build_exterior_map(3.0, 1.0, 8);
  const Real side = 2.0;
  const Real g14 = std::tgamma(0.25);
  const Real expect = g14 * g14 * side / (4.0 * std::pow(EIGEN_PI, 1.5));
  CHECK(std::abs(map.capacity - expect) <= 1e-6);
}

TEST_CASE("gamma stays in (0,1) across a parameter sweep") {
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const Real mu = 1.1 + (50.0 - 1.1) * i / 9.0;
      const Real rho = 0.1 + (50.0 - 0.1) * j / 9.0;
      const ExteriorMapRectangle map = build_exterior_map(mu, rho, 8);
      CHECK(map.gamma > 0.0);
      CHECK(map.gamma < 1.0);
      CHECK(map.phi0 * map.gamma == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Faber polynomials of an injected disk map are shifted monomials") {
  const Complex c(3.0, 0.0), r(2.0, 0.0);
  const FaberSet fs = faber_from_laurent(r, c, {}, 12);
  for (Index k = 0; k <= 12; ++k) {
    CHECK(fs.at_zero[static_cast<std::size_t>(k)] ==
          doctest::Approx(std::pow(std::abs(c) / std::abs(r), static_cast<Real>(k)))
              .epsilon(1e-10));
    REQUIRE(fs.polynomials[static_cast<std::size_t>(k)].size() ==
            static_cast<std::size_t>(k) + 1);
  }
}

TEST_CASE("Faber polynomials of an injected ellipse map are Chebyshev") {
  // psi = c + (d/2)(sigma w + 1/(sigma w)) gives F_k = 2 sigma^{-k} T_k((z-c)/d).
  const Complex c(2.5, 0.0), d(1.5, 0.0);
  const Real sigma = 1.25;
  const Complex c1 = d * sigma / 2.0;
  std::vector<Complex> tail = {d / (2.0 * sigma)};
  const FaberSet fs = faber_from_laurent(c1, c, tail, 10);
  std::mt19937 gen(5u);
  std::uniform_real_distribution<Real> re(-2.0, 2.0);
  for (int t = 0; t < 10; ++t) {
    const Complex z(re(gen), re(gen));
    for (Index k = 1; k <= 10; ++k) {
      Complex val(0, 0), zp(1, 0);
      for (const Complex& coef : fs.polynomials[static_cast<std::size_t>(k)]) {
        val += coef * zp;
        zp *= z;
      }
      const Complex want = 2.0 * std::pow(sigma, -static_cast<Real>(k)) * cheb_t(k, (z - c) / d);
      CHECK(std::abs(val - want) <= 1e-8 * std::max(std::abs(want), Real(1)));
    }
  }
}

TEST_CASE("Faber leading coefficients and asymptotic decay rate") {
  const ExteriorMapRectangle map = build_exterior_map(2.0, 4.0, 90);
  const FaberSet fs = faber_polys(map, 90);
  CHECK(fs.polynomials[0].size() == 1);
  CHECK(fs.polynomials[0][0] == Complex(1, 0));
  for (Index k = 1; k <= 10; ++k) {
    const Complex lead = fs.polynomials[static_cast<std::size_t>(k)].back();
    const Real want = std::pow(map.capacity, -static_cast<Real>(k));
    CHECK(std::abs(lead - Complex(want, 0)) <= 1e-8 * want);
  }
  // |F_k(0)|^{1/k} -> 1/gamma: consistency at k = 40 vs k = 80 and vs gamma.
  const Real r40 = std::pow(fs.at_zero[40], 1.0 / 40.0);
  const Real r80 = std::pow(fs.at_zero[80], 1.0 / 80.0);
  CHECK(std::abs(r40 - r80) <= 0.05 * r80);
  const Real slope60 = std::log(fs.at_zero[60]) / 60.0;
  CHECK(std::abs(slope60 - std::log(1.0 / map.gamma)) <= 0.05 * std::abs(std::log(map.gamma)));
}

TEST_CASE("Faber decay agrees with gamma across the shape range") {
  for (auto [mu, rho] : {std::pair{1.5, 10.0}, {5.0, 2.0}, {14.29, 50.0}}) {
    const ExteriorMapRectangle map = build_exterior_map(mu, rho, 64);
    const FaberSet fs = faber_polys(map, 60);
    const Real slope = std::log(fs.at_zero[60]) / 60.0;
    CHECK(std::abs(slope - std::log(1.0 / map.gamma)) <=
          0.05 * std::abs(std::log(map.gamma)));
  }
}

TEST_CASE("truncation shorter than k_max + 5 is rejected") {
  const ExteriorMapRectangle map = build_exterior_map(2.0, 1.0, 8);
  CHECK_THROWS_AS(faber_polys(map, map.truncation()), TruncationTooShort);
}

TEST_CASE("segment gammas") {
  CHECK(segment_gamma_vertical(4.0) ==
        doctest::Approx(4.0 / (1.0 + std::sqrt(17.0))).epsilon(1e-13));
  CHECK_THROWS_AS(segment_gamma_horizontal(1.0), DegenerateRectangle);
  CHECK_THROWS_AS(segment_gamma_vertical(0.0), DegenerateRectangle);
}
