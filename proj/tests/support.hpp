#ifndef BURES_TESTS_SUPPORT_HPP
#define BURES_TESTS_SUPPORT_HPP

// Test-only oracles and helpers. Nothing here calls into the closed-form
// metric path.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "bures/types.hpp"

namespace bures::testing {

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

/// Haar-random unitary: QR of a complex Ginibre matrix with R's diagonal
/// phases moved into Q.
inline ComplexMatrix haar_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

/// Random Hermitian traceless matrix with entries of order one.
inline ComplexMatrix random_traceless_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  ComplexMatrix h = 0.5 * (a + a.adjoint());
  h -= (h.trace() / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
  return h;
}

/// Central difference of a matrix-valued function of one real variable.
template <class Matrix>
Matrix central_difference(const std::function<Matrix(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Gauss-Legendre nodes and weights on [a, b], Newton iteration on P_n.
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline Quadrature gauss_legendre(int n, double a, double b) {
  Quadrature q;
  q.nodes.resize(static_cast<std::size_t>(n));
  q.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    q.nodes[static_cast<std::size_t>(i)] = 0.5 * (a + b) + 0.5 * (b - a) * x;
    q.weights[static_cast<std::size_t>(i)] = (b - a) / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

}  // namespace bures::testing

#endif  // BURES_TESTS_SUPPORT_HPP
