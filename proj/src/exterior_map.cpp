#include <fovgmres/errors.hpp>
#include <fovgmres/exterior_map.hpp>
#include <fovgmres/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace fovgmres {

namespace {

constexpr Real kSeriesRadius = 1.3;  // Laurent series used for |w| >= this

std::array<Complex, 4> prevertices_of(Real alpha) {
  const Complex p = std::polar(Real(1), alpha);
  return {p, std::conj(p), -p, -std::conj(p)};
}

// psi'(w)/capacity = prod_k (1 - w_k/w)^{1/2}. Each factor has positive real
// part for |w| >= 1, so principal square roots multiply into the analytic
// branch that tends to 1 at infinity.
Complex psi_prime_unit(Real alpha, Complex w) {
  Complex prod(1, 0);
  for (const Complex& z : prevertices_of(alpha)) prod *= std::sqrt(Complex(1, 0) - z / w);
  return prod;
}

// Integrand of the boundary image: f(theta) = psi'(e^{i theta}) i e^{i theta}
// (unit capacity).
Complex arc_integrand(Real alpha, Real theta) {
  const Complex w = std::polar(Real(1), theta);
  return psi_prime_unit(alpha, w) * Complex(0, 1) * w;
}

// Integral of f over [0, alpha]; the integrand vanishes like
// sqrt(alpha - theta) at the prevertex end, handled by a (1/2, 0) rule.
Complex integral_axis_to_prevertex(Real alpha) {
  static const QuadRule rule = gauss_jacobi(48, 0.5, 0.0);
  const Real h = alpha / 2.0;
  Complex acc(0, 0);
  for (Index j = 0; j < rule.nodes.size(); ++j) {
    const Real theta = h + h * rule.nodes(j);
    const Complex g = arc_integrand(alpha, theta) / std::sqrt(alpha - theta);
    acc += rule.weights(j) * g;
  }
  return acc * std::pow(h, Real(1.5));
}

// Integral of f over [alpha, pi - alpha]; sqrt zeros at both ends, handled
// by the Chebyshev rule of the second kind.
Complex integral_top_arc(Real alpha) {
  static const QuadRule rule = gauss_jacobi(48, 0.5, 0.5);
  const Real lo = alpha, hi = EIGEN_PI - alpha;
  const Real m = (lo + hi) / 2.0, h = (hi - lo) / 2.0;
  Complex acc(0, 0);
  for (Index j = 0; j < rule.nodes.size(); ++j) {
    const Real theta = m + h * rule.nodes(j);
    const Complex g = arc_integrand(alpha, theta) / std::sqrt((theta - lo) * (hi - theta));
    acc += rule.weights(j) * g;
  }
  return acc * h * h;
}

// Side lengths of the image rectangle for unit capacity.
Real vertical_side_unit(Real alpha) { return 2.0 * integral_axis_to_prevertex(alpha).imag(); }
Real horizontal_side_unit(Real alpha) { return std::abs(integral_top_arc(alpha).real()); }

Complex psi_series(const ExteriorMapRectangle& map, Complex w) {
  const Complex u = Complex(1, 0) / (w * w);
  Complex tail(0, 0);
  // Only odd negative powers are populated; run Horner in 1/w^2.
  const Index J = map.truncation();
  for (Index j = J - (J % 2 == 0 ? 1 : 0); j >= 1; j -= 2)
    tail = tail * u + Complex(map.laurent_neg[static_cast<std::size_t>(j - 1)], 0);
  return Complex(map.center, 0) + Complex(map.capacity, 0) * w + tail / w;
}

// Radial path from the series anchor 1.3*w/|w| down to w, panels refined
// geometrically toward the inner endpoint (prevertices sit on the circle).
Complex psi_shell(const ExteriorMapRectangle& map, Complex w) {
  static const QuadRule rule = gauss_jacobi(24, 0.0, 0.0);
  const Real r0 = std::abs(w);
  const Complex dir = w / r0;
  const Complex outer = psi_series(map, kSeriesRadius * dir);
  const Real L = kSeriesRadius - r0;
  if (L <= 0.0) return outer;

  Complex acc(0, 0);
  constexpr int kPanels = 16;
  constexpr Real q = 0.4;
  Real hi_frac = 1.0;
  for (int p = 0; p < kPanels; ++p) {
    const Real lo_frac = (p == kPanels - 1) ? 0.0 : hi_frac * q;
    const Real lo = r0 + L * lo_frac, hi = r0 + L * hi_frac;
    const Real m = (lo + hi) / 2.0, h = (hi - lo) / 2.0;
    for (Index j = 0; j < rule.nodes.size(); ++j) {
      const Real r = m + h * rule.nodes(j);
      acc += rule.weights(j) * h * psi_derivative(map, r * dir);
    }
    hi_frac = lo_frac;
  }
  return outer - dir * acc;
}

}  // namespace

std::array<Complex, 4> ExteriorMapRectangle::prevertices() const {
  return prevertices_of(alpha_pre);
}

Real solve_parameter(Real mu, Real rho) {
  if (!(mu > 1.0) || !(rho > 0.0))
    throw DegenerateRectangle("need mu > 1 and rho > 0, got mu=" + std::to_string(mu) +
                              " rho=" + std::to_string(rho));
  const Real target = (mu - 1.0) / (2.0 * rho);
  auto ratio = [](Real alpha) { return horizontal_side_unit(alpha) / vertical_side_unit(alpha); };
  Real lo = 1e-9, hi = EIGEN_PI / 2.0 - 1e-9;
  // ratio decreases from +inf at 0 to 0 at pi/2.
  for (int it = 0; it < 80; ++it) {
    const Real mid = (lo + hi) / 2.0;
    if (ratio(mid) > target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13) break;
  }
  return (lo + hi) / 2.0;
}

ExteriorMapRectangle build_exterior_map(Real mu, Real rho, Index k_max) {
  ExteriorMapRectangle map;
  map.mu = mu;
  map.rho = rho;
  map.alpha_pre = solve_parameter(mu, rho);
  map.center = (mu + 1.0) / 2.0;

  const Complex half_right = integral_axis_to_prevertex(map.alpha_pre);
  map.capacity = rho / half_right.imag();

  // Laurent tail: sqrt((1 - e^{2ia}v)(1 - e^{-2ia}v)) = sum g_m v^m with
  // v = w^{-2}; then c_{-(2m-1)} = -c1 g_m / (2m-1).
  const Index J = std::max<Index>(k_max, 128) + 16;
  const Index M = J / 2 + 2;
  std::vector<Complex> sp(static_cast<std::size_t>(M) + 1), sm(sp.size());
  const Complex zp = std::polar(Real(1), 2.0 * map.alpha_pre);
  const Complex zm = std::conj(zp);
  Complex pp(1, 0), pm(1, 0);
  Real binom = 1.0;  // binomial(1/2, j)
  for (Index j = 0; j <= M; ++j) {
    sp[static_cast<std::size_t>(j)] = binom * pp;
    sm[static_cast<std::size_t>(j)] = binom * pm;
    pp *= -zp;
    pm *= -zm;
    binom *= (0.5 - static_cast<Real>(j)) / static_cast<Real>(j + 1);
  }
  map.laurent_neg.assign(static_cast<std::size_t>(J), 0.0);
  for (Index m = 1; m <= M; ++m) {
    Complex g(0, 0);
    for (Index j = 0; j <= m; ++j)
      g += sp[static_cast<std::size_t>(j)] * sm[static_cast<std::size_t>(m - j)];
    const Index power = 2 * m - 1;
    if (power <= J)
      map.laurent_neg[static_cast<std::size_t>(power - 1)] =
          -map.capacity * g.real() / static_cast<Real>(power);
  }

  // Corner images by honest quadrature from the axis anchor psi(1) = mu;
  // order matches prevertices(): ~mu+irho, ~mu-irho, ~1-irho, ~1+irho.
  const Complex corner0 = Complex(mu, 0) + map.capacity * half_right;
  const Complex corner3 = corner0 + map.capacity * integral_top_arc(map.alpha_pre);
  map.corners = {corner0, std::conj(corner0), std::conj(corner3), corner3};

  const auto [p0, g0] = gamma_phi0(map);
  map.phi0 = p0;
  map.gamma = g0;
  return map;
}

Complex psi_derivative(const ExteriorMapRectangle& map, Complex w) {
  if (std::abs(w) < 1.0 - 1e-12) throw InsideDisk("|w| < 1");
  return map.capacity * psi_prime_unit(map.alpha_pre, w);
}

Complex psi_eval(const ExteriorMapRectangle& map, Complex w) {
  if (std::abs(w) < 1.0 - 1e-12) throw InsideDisk("|w| < 1");
  if (w.imag() < 0.0) return std::conj(psi_eval(map, std::conj(w)));
  if (w.real() < 0.0) return 2.0 * map.center - psi_eval(map, -w);
  // First quadrant now; only the prevertex e^{i alpha} can be close.
  const Complex pv = std::polar(Real(1), map.alpha_pre);
  if (std::abs(w - pv) < 1e-8) return map.corners[0];
  if (std::abs(w) >= kSeriesRadius) return psi_series(map, w);
  return psi_shell(map, w);
}

namespace {

// Real evaluation on the ray x <= -1 (all Laurent coefficients are real).
Real psi_real_ray(const ExteriorMapRectangle& map, Real x) {
  if (x <= -kSeriesRadius) return psi_series(map, Complex(x, 0)).real();
  static const QuadRule rule = gauss_jacobi(24, 0.0, 0.0);
  // psi(-1) = 1 by symmetry; integrate psi' over [x, -1], refined toward -1
  // where the prevertices are nearest.
  Real acc = 0.0;
  const Real L = -1.0 - x;  // interval length, >= 0
  if (L <= 0.0) return 1.0;
  constexpr int kPanels = 16;
  constexpr Real q = 0.4;
  Real hi_frac = 1.0;  // fraction of distance measured from -1 toward x
  for (int p = 0; p < kPanels; ++p) {
    const Real lo_frac = (p == kPanels - 1) ? 0.0 : hi_frac * q;
    const Real lo = -1.0 - L * hi_frac, hi = -1.0 - L * lo_frac;
    const Real m = (lo + hi) / 2.0, h = (hi - lo) / 2.0;
    for (Index j = 0; j < rule.nodes.size(); ++j) {
      const Real s = m + h * rule.nodes(j);
      acc += rule.weights(j) * h * psi_derivative(map, Complex(s, 0)).real();
    }
    hi_frac = lo_frac;
  }
  return 1.0 - acc;
}

}  // namespace

std::pair<Real, Real> gamma_phi0(const ExteriorMapRectangle& map) {
  // psi is real and strictly increasing on the ray, psi(-1) = 1 > 0, so the
  // root of psi(w) = 0 lies strictly left of -1: bracket by doubling.
  Real a = -1.0;
  Real fa = 1.0;
  Real step = 1e-4;
  Real b = a, fb = fa;
  bool bracketed = false;
  for (int it = 0; it < 70; ++it) {
    b = a - step;
    fb = psi_real_ray(map, b);
    if (fb <= 0.0) {
      bracketed = true;
      break;
    }
    a = b;
    fa = fb;
    step *= 2.0;
  }
  if (!bracketed) throw NewtonDivergence("no sign change found on the negative ray");

  Real lo = b, hi = a;  // psi(lo) <= 0 <= psi(hi)
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::abs(lo); ++it) {
    const Real mid = (lo + hi) / 2.0;
    if (psi_real_ray(map, mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  Real root = (lo + hi) / 2.0;
  for (int it = 0; it < 3; ++it) {  // Newton polish
    const Real f = psi_real_ray(map, root);
    const Real fp = psi_derivative(map, Complex(root, 0)).real();
    const Real next = root - f / fp;
    if (std::isfinite(next) && next <= -1.0) root = next;
  }
  const Real phi0 = -root;
  return {phi0, 1.0 / phi0};
}

FaberSet faber_from_laurent(Complex c1, Complex c0, const std::vector<Complex>& tail,
                            Index k_max) {
  if (std::abs(c1) == 0.0) throw Error("InvalidArgument", "leading coefficient must be nonzero");
  FaberSet fs;
  fs.k_max = k_max;
  fs.polynomials.resize(static_cast<std::size_t>(k_max) + 1);
  fs.at_zero.resize(static_cast<std::size_t>(k_max) + 1);
  auto a = [&](Index j) -> Complex {
    return j >= 1 && j <= static_cast<Index>(tail.size()) ? tail[static_cast<std::size_t>(j - 1)]
                                                          : Complex(0, 0);
  };

  fs.polynomials[0] = {Complex(1, 0)};
  fs.at_zero[0] = 1.0;
  std::vector<Complex> vals(static_cast<std::size_t>(k_max) + 1);
  vals[0] = Complex(1, 0);
  for (Index p = 1; p <= k_max; ++p) {
    const auto& prev = fs.polynomials[static_cast<std::size_t>(p - 1)];
    std::vector<Complex> cur(static_cast<std::size_t>(p) + 1, Complex(0, 0));
    for (std::size_t d = 0; d < prev.size(); ++d) {
      cur[d + 1] += prev[d];       // z * F_{p-1}
      cur[d] -= c0 * prev[d];      // -c0 * F_{p-1}
    }
    for (Index j = 1; j <= p - 1; ++j) {
      const auto& fj = fs.polynomials[static_cast<std::size_t>(p - 1 - j)];
      for (std::size_t d = 0; d < fj.size(); ++d) cur[d] -= a(j) * fj[d];
    }
    cur[0] -= static_cast<Real>(p - 1) * a(p - 1);
    for (auto& cc : cur) cc /= c1;
    fs.polynomials[static_cast<std::size_t>(p)] = std::move(cur);

    Complex v = -c0 * vals[static_cast<std::size_t>(p - 1)];
    for (Index j = 1; j <= p - 1; ++j) v -= a(j) * vals[static_cast<std::size_t>(p - 1 - j)];
    v -= static_cast<Real>(p - 1) * a(p - 1);
    v /= c1;
    vals[static_cast<std::size_t>(p)] = v;
    fs.at_zero[static_cast<std::size_t>(p)] = std::abs(v);
  }
  return fs;
}

FaberSet faber_polys(const ExteriorMapRectangle& map, Index k_max) {
  if (map.truncation() < k_max + 5)
    throw TruncationTooShort("map truncated at " + std::to_string(map.truncation()) +
                             ", need at least " + std::to_string(k_max + 5));
  std::vector<Complex> tail(map.laurent_neg.size());
  for (std::size_t j = 0; j < tail.size(); ++j) tail[j] = Complex(map.laurent_neg[j], 0);
  return faber_from_laurent(Complex(map.capacity, 0), Complex(map.center, 0), tail, k_max);
}

Real segment_gamma_horizontal(Real mu) {
  if (!(mu > 1.0)) throw DegenerateRectangle("horizontal segment needs mu > 1");
  const Real half = (mu - 1.0) / 2.0, c = (mu + 1.0) / 2.0;
  return half / (c + std::sqrt(c * c - half * half));
}

Real segment_gamma_vertical(Real rho) {
  if (!(rho > 0.0)) throw DegenerateRectangle("vertical segment needs rho > 0");
  return rho / (1.0 + std::sqrt(1.0 + rho * rho));
}

}  // namespace fovgmres
