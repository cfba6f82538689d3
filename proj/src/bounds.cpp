#include <fovgmres/bounds.hpp>
#include <fovgmres/errors.hpp>
#include <fovgmres/simplex.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fovgmres {

std::string method_name(BoundMethod m) {
  switch (m) {
    case BoundMethod::Elman: return "elman";
    case BoundMethod::Disk: return "disk";
    case BoundMethod::DiskSegment: return "disk-segment";
    case BoundMethod::Ellipse: return "ellipse";
    case BoundMethod::Conformal: return "conformal";
    case BoundMethod::Faber: return "faber";
    case BoundMethod::Best: return "best";
  }
  return "?";
}

std::vector<BoundMethod> all_bound_methods() {
  return {BoundMethod::Elman,   BoundMethod::Disk,      BoundMethod::DiskSegment,
          BoundMethod::Ellipse, BoundMethod::Conformal, BoundMethod::Faber};
}

namespace {

// log C_k(t) for real t >= 1 through the Joukowski substitution; exact also
// for large k where the raw recurrence overflows.
Real log_cheb_real(Real t, Index k) {
  const Real v = t + std::sqrt(std::max(t * t - 1.0, Real(0)));
  return static_cast<Real>(k) * std::log(v) + std::log1p(std::pow(v, -2.0 * static_cast<Real>(k))) -
         std::log(2.0);
}

Real log_abs_cheb_complex(Complex t, Index k) {
  const Complex s = std::sqrt(t * t - Complex(1, 0));
  Complex v = t + s;
  if (std::abs(v) < 1.0) v = t - s;
  const Real lv = std::log(std::abs(v));
  const Complex vm2k = std::pow(v, Complex(-2.0 * static_cast<Real>(k), 0));
  return static_cast<Real>(k) * lv + std::log(std::abs(Complex(1, 0) + vm2k)) - std::log(2.0);
}

Real linear_factor_bound(Real gamma, Index k) {
  if (k == 0) return 1.0;
  if (gamma <= 0.0) return 0.0;
  const Real gk = std::pow(gamma, static_cast<Real>(k));
  const Real gk1 = gk * gamma;
  const Real f1 = 2.0 + gamma;
  const Real f2 = gk1 < 1.0 ? 2.0 / (1.0 - gk1) : std::numeric_limits<Real>::infinity();
  return std::min(f1, f2) * gk;
}

}  // namespace

Real elman_bound(Real mu, Real rho, Index k) {
  if (!(mu >= 1.0) || !(rho >= 0.0) || k < 0) throw Error("InvalidArgument", "bad bound arguments");
  return std::pow(1.0 - 1.0 / (4.0 * (mu * mu + rho * rho)), static_cast<Real>(k) / 2.0);
}

std::optional<Real> disk_bound(Real mu, Real rho, Index k) {
  if (!(mu >= 1.0) || !(rho >= 0.0) || k < 0) throw Error("InvalidArgument", "bad bound arguments");
  if (mu > 2.0 * rho * rho + 1.0) return std::nullopt;
  return std::pow(rho / std::sqrt(1.0 + rho * rho), static_cast<Real>(k));
}

Real disk_segment_bound(Real mu, Real rho, Index k) {
  if (!(mu >= 1.0) || !(rho >= 0.0) || k < 0) throw Error("InvalidArgument", "bad bound arguments");
  const Real beta = std::acos(1.0 / std::sqrt(mu * mu + rho * rho));
  const Real g = 2.0 * std::sin(beta / (4.0 - 2.0 * beta / EIGEN_PI));
  return linear_factor_bound(g, k);
}

EllipseParams optimal_ellipse(Real mu, Real rho, Index n_grid) {
  if (!(mu > 1.0)) throw DegenerateRectangle("vertical segment: enclose with the disk instead");
  if (n_grid < 2) throw Error("InvalidArgument", "ellipse grid needs at least 2 points");
  const Real c = (mu + 1.0) / 2.0;
  const Real lo = (mu - 1.0) / 2.0, hi = (mu + 1.0) / 2.0;

  if (rho == 0.0) {
    // Segment limit: every circumscribing "ellipse" collapses; the optimal
    // one is the segment itself (a = d).
    EllipseParams p;
    p.c = c;
    p.alpha = lo;
    p.beta = 0.0;
    p.vertical = false;
    p.rate = lo / (c + std::sqrt(c * c - lo * lo));
    return p;
  }

  EllipseParams best;
  best.rate = std::numeric_limits<Real>::infinity();
  const Real step = (hi - lo) / static_cast<Real>(n_grid);
  for (Index i = 1; i <= n_grid; ++i) {
    const Real alpha = lo + static_cast<Real>(i) * step;
    if (alpha >= hi - 1e-15) continue;  // origin must stay strictly outside
    const Real ratio = (mu - 1.0) / (2.0 * alpha);
    const Real beta = rho / std::sqrt(1.0 - ratio * ratio);
    const Real rate = (alpha + beta) / (c + std::sqrt(c * c - alpha * alpha + beta * beta));
    if (rate < best.rate) {
      best.c = c;
      best.alpha = alpha;
      best.beta = beta;
      best.vertical = beta > alpha;
      best.rate = rate;
    }
  }
  return best;
}

Real ellipse_bound(Real mu, Real rho, Index k, const EllipseParams& params) {
  (void)mu;
  (void)rho;
  if (k == 0) return 1.0;
  const Real aa = params.vertical ? params.beta : params.alpha;
  const Real dd = std::sqrt(std::abs(params.alpha * params.alpha - params.beta * params.beta));
  if (dd < 1e-14 * aa) {
    // Focal collapse: the ellipse is a circle of radius aa around c.
    return std::pow(aa / params.c, static_cast<Real>(k));
  }
  const Real log_num = log_cheb_real(aa / dd, k);
  const Complex cd = params.vertical ? Complex(0, -params.c / dd) : Complex(params.c / dd, 0);
  const Real log_den = log_abs_cheb_complex(cd, k);
  return std::exp(log_num - log_den);
}

namespace {

// gamma and log|F_k(0)| for a normalized rectangle, with analytic fallbacks
// for the degenerate segment cases.
struct RectangleAsymptotics {
  Real gamma = 0.0;
  std::vector<Real> log_faber;  // log|F_k(0)|, k = 0..k_max

  static RectangleAsymptotics build(Real mu, Real rho, Index k_max) {
    RectangleAsymptotics r;
    r.log_faber.resize(static_cast<std::size_t>(k_max) + 1, 0.0);
    if (mu > 1.0 && rho > 0.0) {
      const ExteriorMapRectangle map = build_exterior_map(mu, rho, std::max<Index>(k_max, 8));
      r.gamma = map.gamma;
      const FaberSet fs = faber_polys(map, k_max);
      for (Index k = 0; k <= k_max; ++k) {
        const Real v = fs.at_zero[static_cast<std::size_t>(k)];
        r.log_faber[static_cast<std::size_t>(k)] =
            v > 0.0 ? std::log(v) : -std::numeric_limits<Real>::infinity();
      }
      return r;
    }
    if (rho == 0.0 && mu > 1.0) {
      // Horizontal segment [1, mu]: psi = c + (l/2)(w + 1/w), F_k = 2 T_k((z-c)/l).
      r.gamma = segment_gamma_horizontal(mu);
      const Real l = (mu - 1.0) / 2.0, c = (mu + 1.0) / 2.0;
      for (Index k = 1; k <= k_max; ++k)
        r.log_faber[static_cast<std::size_t>(k)] = std::log(2.0) + log_cheb_real(c / l, k);
      return r;
    }
    if (mu == 1.0 && rho > 0.0) {
      // Vertical segment [1-i rho, 1+i rho]: psi = 1 + (i rho/2)(w + 1/w),
      // F_k = 2 T_k((z-1)/(i rho)).
      r.gamma = segment_gamma_vertical(rho);
      for (Index k = 1; k <= k_max; ++k)
        r.log_faber[static_cast<std::size_t>(k)] =
            std::log(2.0) + log_abs_cheb_complex(Complex(0, 1.0 / rho), k);
      return r;
    }
    // Point {1}: q(z) = (1-z)^k solves the min-max problem exactly.
    r.gamma = 0.0;
    for (Index k = 1; k <= k_max; ++k)
      r.log_faber[static_cast<std::size_t>(k)] = std::numeric_limits<Real>::infinity();
    return r;
  }

  Real conformal(Index k) const { return linear_factor_bound(gamma, k); }
  Real faber(Index k) const {
    if (k == 0) return 1.0;
    const Real lf = log_faber[static_cast<std::size_t>(k)];
    if (std::isinf(lf)) return lf > 0 ? 0.0 : std::numeric_limits<Real>::infinity();
    return std::exp(std::log(2.0) - lf);
  }
};

}  // namespace

Real conformal_bound(Real mu, Real rho, Index k) {
  return RectangleAsymptotics::build(mu, rho, k).conformal(k);
}

Real faber_bound(Real mu, Real rho, Index k) {
  return RectangleAsymptotics::build(mu, rho, k).faber(k);
}

Real conformal_lower(Real gamma, Index k) { return std::pow(gamma, static_cast<Real>(k)); }

std::vector<BoundCurve> evaluate_bounds(Real mu, Real rho, Index k_max,
                                        const std::vector<BoundMethod>& methods) {
  if (methods.empty()) throw Error("InvalidArgument", "no bound methods requested");
  const bool need_map =
      std::any_of(methods.begin(), methods.end(), [](BoundMethod m) {
        return m == BoundMethod::Conformal || m == BoundMethod::Faber;
      });
  RectangleAsymptotics asym;
  if (need_map) asym = RectangleAsymptotics::build(mu, rho, k_max);

  std::vector<BoundCurve> curves;
  for (BoundMethod m : methods) {
    if (m == BoundMethod::Best) continue;
    BoundCurve c;
    c.method = m;
    c.raw.reserve(static_cast<std::size_t>(k_max) + 1);
    switch (m) {
      case BoundMethod::Elman:
        for (Index k = 0; k <= k_max; ++k) c.raw.push_back(elman_bound(mu, rho, k));
        break;
      case BoundMethod::Disk: {
        c.params["a"] = 1.0 + rho * rho;
        c.params["r"] = rho * std::sqrt(rho * rho + 1.0);
        for (Index k = 0; k <= k_max; ++k) {
          const auto v = disk_bound(mu, rho, k);
          if (!v.has_value()) {
            c.applicable = false;
            c.raw.clear();
            break;
          }
          c.raw.push_back(*v);
        }
        break;
      }
      case BoundMethod::DiskSegment: {
        const Real beta = std::acos(1.0 / std::sqrt(mu * mu + rho * rho));
        c.params["beta"] = beta;
        c.params["gamma_beta"] = 2.0 * std::sin(beta / (4.0 - 2.0 * beta / EIGEN_PI));
        for (Index k = 0; k <= k_max; ++k) c.raw.push_back(disk_segment_bound(mu, rho, k));
        break;
      }
      case BoundMethod::Ellipse: {
        if (mu <= 1.0) {
          c.applicable = false;  // vertical segment, covered by the disk
          break;
        }
        const EllipseParams p = optimal_ellipse(mu, rho);
        c.params["c"] = p.c;
        c.params["alpha"] = p.alpha;
        c.params["beta_ell"] = p.beta;
        c.params["a_ell"] = std::abs(p.a());
        c.params["d"] = std::abs(p.d());
        c.params["vertical"] = p.vertical ? 1.0 : 0.0;
        c.params["rate"] = p.rate;
        for (Index k = 0; k <= k_max; ++k) c.raw.push_back(ellipse_bound(mu, rho, k, p));
        break;
      }
      case BoundMethod::Conformal:
        c.params["gamma"] = asym.gamma;
        for (Index k = 0; k <= k_max; ++k) c.raw.push_back(asym.conformal(k));
        break;
      case BoundMethod::Faber:
        c.params["gamma"] = asym.gamma;
        for (Index k = 0; k <= k_max; ++k) c.raw.push_back(asym.faber(k));
        break;
      case BoundMethod::Best:
        break;
    }
    if (c.applicable) {
      c.values.resize(c.raw.size());
      Real running = 1.0;
      for (std::size_t i = 0; i < c.raw.size(); ++i) {
        running = std::min(running, std::min(c.raw[i], Real(1)));
        c.values[i] = running;
      }
    }
    curves.push_back(std::move(c));
  }

  BoundCurve best;
  best.method = BoundMethod::Best;
  best.values.assign(static_cast<std::size_t>(k_max) + 1,
                     std::numeric_limits<Real>::infinity());
  for (const BoundCurve& c : curves) {
    if (!c.applicable) continue;
    for (std::size_t i = 0; i < best.values.size(); ++i)
      best.values[i] = std::min(best.values[i], c.values[i]);
  }
  best.raw = best.values;
  curves.push_back(std::move(best));
  return curves;
}

BoundCurve best_curve(Real mu, Real rho, Index k_max, const std::vector<BoundMethod>& methods) {
  return evaluate_bounds(mu, rho, k_max, methods).back();
}

Real minmax_oracle(Real mu, Real rho, Index k, Index n_boundary, Index n_rot,
                   bool complex_coeffs) {
  if (!(mu >= 1.0) || !(rho >= 0.0)) throw Error("InvalidArgument", "bad rectangle");
  if (k < 0 || k > 8) throw Error("InvalidArgument", "oracle limited to k <= 8");
  if (k == 0) return 1.0;
  if (n_boundary < 16) throw Error("InvalidArgument", "need at least 16 boundary points");

  // Upper half of the boundary (real coefficients make the lower half
  // redundant), with the corners pinned exactly. Complex coefficients break
  // that symmetry, so the conjugate points are appended below.
  std::vector<Complex> pts;
  pts.reserve(2 * static_cast<std::size_t>(n_boundary) + 4);
  if (rho == 0.0) {
    for (Index i = 0; i < n_boundary; ++i)
      pts.emplace_back(1.0 + (mu - 1.0) * static_cast<Real>(i) / static_cast<Real>(n_boundary - 1),
                       0.0);
  } else {
    const Real per = 2.0 * rho + (mu - 1.0);
    for (Index i = 0; i < n_boundary; ++i) {
      const Real t = per * static_cast<Real>(i) / static_cast<Real>(n_boundary - 1);
      if (t <= rho)
        pts.emplace_back(1.0, t);
      else if (t <= rho + (mu - 1.0))
        pts.emplace_back(1.0 + (t - rho), rho);
      else
        pts.emplace_back(mu, rho - (t - rho - (mu - 1.0)));
    }
    pts.emplace_back(1.0, rho);
    pts.emplace_back(mu, rho);
  }
  if (complex_coeffs) {
    const std::size_t half = pts.size();
    for (std::size_t i = 0; i < half; ++i)
      if (pts[i].imag() != 0.0) pts.push_back(std::conj(pts[i]));
  }

  const Real zmax = std::sqrt(mu * mu + rho * rho);
  const Index d = complex_coeffs ? 2 * k : k;
  // Precompute scaled powers per point.
  std::vector<std::vector<Complex>> powers(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    powers[i].resize(static_cast<std::size_t>(k) + 1);
    powers[i][0] = Complex(1, 0);
    const Complex zh = pts[i] / zmax;
    for (Index j = 1; j <= k; ++j) powers[i][static_cast<std::size_t>(j)] = powers[i][j - 1] * zh;
  }

  struct Cut {
    std::size_t point;
    Real theta;
  };
  std::vector<Cut> cuts;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (Index l = 0; l < n_rot; ++l)
      cuts.push_back(
          {i, static_cast<Real>(2.0 * EIGEN_PI) * static_cast<Real>(l) / static_cast<Real>(n_rot)});

  Vector coeffs = Vector::Zero(d);
  Real certified = 0.0;
  for (int round = 0; round < 60; ++round) {
    Matrix A(static_cast<Index>(cuts.size()), d);
    Vector b(static_cast<Index>(cuts.size()));
    for (Index r = 0; r < A.rows(); ++r) {
      const Cut& cut = cuts[static_cast<std::size_t>(r)];
      const Complex rot = std::polar(Real(1), cut.theta);
      for (Index j = 1; j <= k; ++j) {
        const Complex t = rot * powers[cut.point][static_cast<std::size_t>(j)];
        A(r, j - 1) = t.real();
        if (complex_coeffs) A(r, k + j - 1) = -t.imag();
      }
      b(r) = -rot.real();
    }
    const MinimaxSolution sol = solve_linear_minimax(A, b);
    coeffs = sol.x;

    // Most violated rotation for each point is theta = -arg(q(z)).
    Real worst = 0.0;
    std::vector<std::pair<Real, std::size_t>> viol;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Complex q(1, 0);
      for (Index j = 1; j <= k; ++j) {
        Complex cj(coeffs(j - 1), complex_coeffs ? coeffs(k + j - 1) : 0.0);
        q += cj * powers[i][static_cast<std::size_t>(j)];
      }
      const Real aq = std::abs(q);
      worst = std::max(worst, aq);
      if (aq > sol.value + 1e-9) viol.push_back({aq, i});
    }
    certified = worst;
    if (worst - sol.value <= 1e-8) break;
    std::sort(viol.rbegin(), viol.rend());
    const std::size_t add = std::min<std::size_t>(viol.size(), 64);
    for (std::size_t v = 0; v < add; ++v) {
      const std::size_t i = viol[v].second;
      Complex q(1, 0);
      for (Index j = 1; j <= k; ++j) {
        Complex cj(coeffs(j - 1), complex_coeffs ? coeffs(k + j - 1) : 0.0);
        q += cj * powers[i][static_cast<std::size_t>(j)];
      }
      cuts.push_back({i, -std::arg(q)});
    }
  }
  return certified;
}

}  // namespace fovgmres
