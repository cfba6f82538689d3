#include <fovgmres/errors.hpp>
#include <fovgmres/simplex.hpp>

#include <cmath>
#include <limits>
#include <vector>

namespace fovgmres {

namespace {

constexpr Real kReducedCostTol = 1e-10;
constexpr Real kPivotTol = 1e-11;
constexpr int kMaxIter = 20000;

}  // namespace

// Dual formulation: max (-b)'lambda s.t. A'lambda = 0, 1'lambda = 1,
// lambda >= 0. Columns are constraints of the primal; the optimal basis
// identifies the active set from which (x, t) is recovered.
MinimaxSolution solve_linear_minimax(const Matrix& A, const Vector& b) {
  const Index m = A.rows();
  const Index d = A.cols();
  const Index rows = d + 1;
  if (b.size() != m) throw DimensionMismatch("minimax rhs size mismatch");
  if (m < 1) throw Error("InvalidArgument", "minimax needs at least one row");

  // Column j of the dual constraint matrix: [A.row(j)^T ; 1].
  auto column = [&](Index j, Vector& out) {
    out.head(d) = A.row(j).transpose();
    out(d) = 1.0;
  };
  Vector rhs = Vector::Zero(rows);
  rhs(rows - 1) = 1.0;

  std::vector<Index> basis(static_cast<std::size_t>(rows));
  for (Index i = 0; i < rows; ++i) basis[static_cast<std::size_t>(i)] = m + i;  // artificials

  Matrix Bmat(rows, rows);
  Vector col(rows), xB(rows), y(rows), dir(rows);

  auto column_any = [&](Index j, Vector& out) {
    if (j < m) {
      column(j, out);
    } else {
      out.setZero();
      out(j - m) = 1.0;
    }
  };
  auto cost_of = [&](int phase, Index j) -> Real {
    if (phase == 1) return j >= m ? 1.0 : 0.0;
    return j >= m ? 0.0 : b(j);  // phase 2 minimizes b'lambda
  };

  for (int phase = 1; phase <= 2; ++phase) {
    for (int iter = 0;; ++iter) {
      if (iter > kMaxIter) throw Error("SimplexStall", "iteration limit exceeded");
      for (Index i = 0; i < rows; ++i) {
        column_any(basis[static_cast<std::size_t>(i)], col);
        Bmat.col(i) = col;
      }
      Eigen::PartialPivLU<Matrix> lu(Bmat);
      xB = lu.solve(rhs);
      Vector cB(rows);
      for (Index i = 0; i < rows; ++i) cB(i) = cost_of(phase, basis[static_cast<std::size_t>(i)]);
      y = lu.transpose().solve(cB);

      // Bland's rule: first improving column.
      Index enter = -1;
      for (Index j = 0; j < m; ++j) {
        bool in_basis = false;
        for (Index i = 0; i < rows; ++i)
          if (basis[static_cast<std::size_t>(i)] == j) {
            in_basis = true;
            break;
          }
        if (in_basis) continue;
        column(j, col);
        const Real r = cost_of(phase, j) - y.dot(col);
        if (r < -kReducedCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) break;  // optimal for this phase

      column(enter, col);
      dir = lu.solve(col);
      Index leave = -1;
      Real best = std::numeric_limits<Real>::infinity();
      for (Index i = 0; i < rows; ++i) {
        if (dir(i) > kPivotTol) {
          const Real ratio = std::max(xB(i), Real(0)) / dir(i);
          if (ratio < best - 1e-13 ||
              (ratio < best + 1e-13 &&
               (leave < 0 || basis[static_cast<std::size_t>(i)] <
                                 basis[static_cast<std::size_t>(leave)]))) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) throw Error("SimplexUnbounded", "dual ray found, primal infeasible");
      basis[static_cast<std::size_t>(leave)] = enter;
    }
    if (phase == 1) {
      Real infeas = 0.0;
      for (Index i = 0; i < rows; ++i)
        if (basis[static_cast<std::size_t>(i)] >= m) infeas += std::abs(xB(i));
      if (infeas > 1e-7) throw Error("SimplexInfeasible", "phase-1 residual " + std::to_string(infeas));
    }
  }

  MinimaxSolution sol;
  // Strong duality: the optimum is the final dual objective.
  {
    for (Index i = 0; i < rows; ++i) {
      column_any(basis[static_cast<std::size_t>(i)], col);
      Bmat.col(i) = col;
    }
    xB = Bmat.partialPivLu().solve(rhs);
    Real obj = 0.0;
    for (Index i = 0; i < rows; ++i)
      if (basis[static_cast<std::size_t>(i)] < m)
        obj += b(basis[static_cast<std::size_t>(i)]) * xB(i);
    sol.value = -obj;
  }
  // Recover x from the active constraints in the final basis.
  std::vector<Index> active;
  for (Index i = 0; i < rows; ++i)
    if (basis[static_cast<std::size_t>(i)] < m) active.push_back(basis[static_cast<std::size_t>(i)]);
  Matrix S(static_cast<Index>(active.size()), d + 1);
  Vector r(static_cast<Index>(active.size()));
  for (Index i = 0; i < static_cast<Index>(active.size()); ++i) {
    S.row(i).head(d) = A.row(active[static_cast<std::size_t>(i)]);
    S(i, d) = -1.0;
    r(i) = b(active[static_cast<std::size_t>(i)]);
  }
  const Vector xt = S.colPivHouseholderQr().solve(r);
  sol.x = xt.head(d);
  sol.optimal = true;
  return sol;
}

}  // namespace fovgmres
