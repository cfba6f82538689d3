#include <fovgmres/cdr.hpp>
#include <fovgmres/errors.hpp>

#include <array>
#include <cmath>
#include <string>

namespace fovgmres {

namespace {

struct Point {
  Real x, y;
};

Real source_f(Real x, Real y) {
  return std::exp(-2.5 * (x * x + (y + 0.8) * (y + 0.8)));
}

Point convection_a(Real eta, Real x, Real y) {
  const Real s = eta * EIGEN_PI;
  return {s * (-y - 0.8), s * x};
}

}  // namespace

AssembledProblem build_cdr(const CdrProblemSpec& spec) {
  if (spec.nx < 3) throw Error("InvalidArgument", "nx must be >= 3, got " + std::to_string(spec.nx));
  if (!(spec.c0 > 0.0)) throw Error("InvalidArgument", "c0 must be positive");
  if (!(spec.nu > 0.0)) throw Error("InvalidArgument", "nu must be positive");

  const Index nx = spec.nx;
  const Index n = nx * nx;
  const Real h = 2.0 / static_cast<Real>(nx + 1);

  AssembledProblem out;
  out.spec = spec;
  out.n = n;
  Matrix M = Matrix::Zero(n, n);
  Matrix N = Matrix::Zero(n, n);
  Vector b = Vector::Zero(n);

  auto node_x = [&](Index i) { return -1.0 + static_cast<Real>(i) * h; };
  // Interior nodes are (i,j) with 1 <= i,j <= nx; boundary unknowns are
  // eliminated, so they carry index -1.
  auto dof = [&](Index i, Index j) -> Index {
    if (i < 1 || i > nx || j < 1 || j > nx) return -1;
    return (j - 1) * nx + (i - 1);
  };

  // Element contributions for a P1 triangle with vertices p[0..2].
  auto assemble_tri = [&](const std::array<Point, 3>& p, const std::array<Index, 3>& id) {
    const Real bb[3] = {p[1].y - p[2].y, p[2].y - p[0].y, p[0].y - p[1].y};
    const Real cc[3] = {p[2].x - p[1].x, p[0].x - p[2].x, p[1].x - p[0].x};
    const Real twoA = bb[0] * cc[1] - bb[1] * cc[0];
    const Real area = 0.5 * std::abs(twoA);

    // Vector moments I_a = int_T a(x,y) phi_a, exact by the midpoint rule.
    Point mid[3] = {{0.5 * (p[0].x + p[1].x), 0.5 * (p[0].y + p[1].y)},
                    {0.5 * (p[1].x + p[2].x), 0.5 * (p[1].y + p[2].y)},
                    {0.5 * (p[2].x + p[0].x), 0.5 * (p[2].y + p[0].y)}};
    Point amid[3];
    for (int e = 0; e < 3; ++e) amid[e] = convection_a(spec.eta, mid[e].x, mid[e].y);
    // phi_a is 1/2 on the two edges touching vertex a.
    Point mom[3];
    for (int a = 0; a < 3; ++a) {
      const int e1 = a;            // edge (a, a+1)
      const int e2 = (a + 2) % 3;  // edge (a+2, a)
      mom[a] = {(area / 3.0) * 0.5 * (amid[e1].x + amid[e2].x),
                (area / 3.0) * 0.5 * (amid[e1].y + amid[e2].y)};
    }

    for (int a = 0; a < 3; ++a) {
      if (id[a] < 0) continue;
      b(id[a]) += (area / 3.0) * source_f(p[a].x, p[a].y);
      for (int c = 0; c < 3; ++c) {
        if (id[c] < 0) continue;
        const Real stiff = (bb[a] * bb[c] + cc[a] * cc[c]) / (4.0 * area);
        const Real mass = (a == c ? 2.0 : 1.0) * area / 12.0;
        M(id[a], id[c]) += spec.c0 * mass + spec.nu * stiff;
        // X_ac = int (a.grad phi_c) phi_a with grad phi_c = (bb,cc)/twoA.
        const Real x_ac = (mom[a].x * bb[c] + mom[a].y * cc[c]) / twoA;
        const Real x_ca = (mom[c].x * bb[a] + mom[c].y * cc[a]) / twoA;
        N(id[a], id[c]) += 0.5 * x_ac - 0.5 * x_ca;
      }
    }
  };

  for (Index j = 0; j <= nx; ++j) {
    for (Index i = 0; i <= nx; ++i) {
      const Point p00{node_x(i), node_x(j)};
      const Point p10{node_x(i + 1), node_x(j)};
      const Point p01{node_x(i), node_x(j + 1)};
      const Point p11{node_x(i + 1), node_x(j + 1)};
      assemble_tri({p00, p10, p11}, {dof(i, j), dof(i + 1, j), dof(i + 1, j + 1)});
      assemble_tri({p00, p11, p01}, {dof(i, j), dof(i + 1, j + 1), dof(i, j + 1)});
    }
  }

  out.M = M.cast<Complex>();
  out.N = N.cast<Complex>();
  out.A = (M + N).cast<Complex>();
  out.b = b.cast<Complex>();
  return out;
}

}  // namespace fovgmres
