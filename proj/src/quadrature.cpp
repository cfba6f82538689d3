#include <fovgmres/errors.hpp>
#include <fovgmres/quadrature.hpp>

#include <cmath>

namespace fovgmres {

QuadRule gauss_jacobi(Index n, Real a, Real b) {
  if (n < 1) throw Error("InvalidArgument", "quadrature order must be >= 1");
  if (a <= -1.0 || b <= -1.0) throw Error("InvalidArgument", "Jacobi exponents must exceed -1");

  Vector diag(n), sub(n > 1 ? n - 1 : 1);
  diag(0) = (b - a) / (a + b + 2.0);
  for (Index k = 1; k < n; ++k) {
    const Real kk = static_cast<Real>(k);
    const Real den = (2.0 * kk + a + b) * (2.0 * kk + a + b + 2.0);
    diag(k) = den == 0.0 ? 0.0 : (b * b - a * a) / den;
    const Real num = 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b);
    const Real d2 = (2.0 * kk + a + b) * (2.0 * kk + a + b);
    sub(k - 1) = std::sqrt(num / (d2 * (2.0 * kk + a + b + 1.0) * (2.0 * kk + a + b - 1.0)));
  }

  const Real mu0 = std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) /
                   std::tgamma(a + b + 2.0);

  Eigen::SelfAdjointEigenSolver<Matrix> es;
  es.computeFromTridiagonal(diag, n > 1 ? sub : Vector::Zero(0).eval(),
                            Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw Error("EigFailure", "Golub-Welsch failed");

  QuadRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights.resize(n);
  for (Index i = 0; i < n; ++i) {
    const Real v = es.eigenvectors()(0, i);
    rule.weights(i) = mu0 * v * v;
  }
  return rule;
}

}  // namespace fovgmres
