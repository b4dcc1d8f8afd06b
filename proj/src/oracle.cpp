#include "bures/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bures {

namespace {

constexpr double kNegativeEigenvalueTolerance = 1e-10;

}  // namespace

EigenSystem hermitian_eigensystem(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) {
    throw ValidationError("eigensystem of a non-square matrix");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("Hermitian eigensolver did not converge");
  }
  const auto n = h.rows();
  EigenSystem es{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index c = 0; c < n; ++c) {
    // Eigen sorts ascending.
    const Eigen::Index src = n - 1 - c;
    es.values(c) = solver.eigenvalues()(src);
    ComplexVector v = solver.eigenvectors().col(src);
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    const double mag = std::abs(v(pivot));
    if (mag > 0.0) v *= std::conj(v(pivot)) / mag;
    es.vectors.col(c) = v;
  }
  return es;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
  const EigenSystem es = hermitian_eigensystem(h);
  RealVector roots(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double v = es.values(i);
    if (v < -kNegativeEigenvalueTolerance) {
      std::ostringstream msg;
      msg << "square root of a matrix with eigenvalue " << v << " < -1e-10";
      throw ValidationError(msg.str());
    }
    roots(i) = std::sqrt(std::max(v, 0.0));
  }
  return es.vectors * roots.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

void require_density(const ComplexMatrix& rho, double tol) {
  if (rho.rows() != rho.cols() || rho.rows() < 1) {
    throw ValidationError("density matrix must be square");
  }
  if (!rho.allFinite()) {
    throw ValidationError("density matrix has non-finite entries");
  }
  const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol) {
    std::ostringstream msg;
    msg << "density matrix not Hermitian (max |rho - rho^dagger| = " << asym << ")";
    throw ValidationError(msg.str());
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol) {
    std::ostringstream msg;
    msg << "density matrix trace " << tr.real() << " != 1";
    throw ValidationError(msg.str());
  }
  const RealVector values = hermitian_eigensystem(rho).values;
  if (values.minCoeff() < -tol) {
    std::ostringstream msg;
    msg << "density matrix not positive semidefinite (min eigenvalue " << values.minCoeff() << ")";
    throw ValidationError(msg.str());
  }
}

double fidelity(const ComplexMatrix& rho1, const ComplexMatrix& rho2) {
  require_density(rho1);
  require_density(rho2);
  if (rho1.rows() != rho2.rows()) {
    throw ValidationError("fidelity of states with different dimensions");
  }
  // Tr sqrt(sqrt(r1) r2 sqrt(r1)) is the trace norm of sqrt(r1) sqrt(r2).
  const ComplexMatrix product = psd_sqrt(rho1) * psd_sqrt(rho2);
  Eigen::JacobiSVD<ComplexMatrix> svd(product);
  const double root_f = svd.singularValues().sum();
  return std::clamp(root_f * root_f, 0.0, 1.0);
}

double bures_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2) {
  const double root_f = std::sqrt(fidelity(rho1, rho2));
  return std::sqrt(std::max(2.0 - 2.0 * root_f, 0.0));
}

double hubner_form(const ComplexMatrix& rho, const ComplexMatrix& drho) {
  if (drho.rows() != rho.rows() || drho.cols() != rho.cols()) {
    throw ValidationError("rho and drho shapes differ");
  }
  const double asym = (drho - drho.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-8) {
    throw ValidationError("drho is not Hermitian");
  }
  const ComplexMatrix d = 0.5 * (drho + drho.adjoint());
  if (std::abs(d.trace()) > 1e-10) {
    throw ValidationError("drho is not traceless");
  }
  const EigenSystem es = hermitian_eigensystem(rho);
  if (es.values.minCoeff() < kLambdaMinFloor) {
    std::ostringstream msg;
    msg << "eigenvalue " << es.values.minCoeff() << " below floor " << kLambdaMinFloor;
    throw ValidationError(msg.str());
  }
  const ComplexMatrix in_basis = es.vectors.adjoint() * d * es.vectors;
  const auto n = rho.rows();
  CompensatedSum acc;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      acc.add(std::norm(in_basis(i, j)) / (es.values(i) + es.values(j)));
    }
  }
  return 0.5 * acc.value();
}

RealMatrix finite_diff_metric(const Point& p, double h) {
  if (!(h >= 1e-7 && h <= 1e-3)) {
    throw ValidationError("finite-difference step must lie in [1e-7, 1e-3]");
  }
  require_interior(p.spectrum);
  const int n = p.n();
  const std::vector<double> base = to_canonical(p);
  const auto dim = static_cast<int>(base.size());

  const ComplexMatrix rho = assemble_density(p.spectrum, p.coset);
  const EigenSystem es = hermitian_eigensystem(rho);
  if (es.values.minCoeff() < kLambdaMinFloor) {
    throw ValidationError("density eigenvalue below floor");
  }

  // Tangent vectors expressed in the eigenbasis of rho.
  std::vector<ComplexMatrix> tangents;
  tangents.reserve(static_cast<std::size_t>(dim));
  std::vector<double> shifted = base;
  for (int a = 0; a < dim; ++a) {
    shifted[a] = base[a] + h;
    const Point plus = from_canonical(n, shifted);
    shifted[a] = base[a] - h;
    const Point minus = from_canonical(n, shifted);
    shifted[a] = base[a];
    const ComplexMatrix derivative =
        (assemble_density(plus.spectrum, plus.coset) - assemble_density(minus.spectrum, minus.coset)) / (2.0 * h);
    tangents.push_back(es.vectors.adjoint() * derivative * es.vectors);
  }

  RealMatrix g(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = a; b < dim; ++b) {
      CompensatedSum acc;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          acc.add(std::real(tangents[a](i, j) * tangents[b](j, i)) / (es.values(i) + es.values(j)));
        }
      }
      g(a, b) = g(b, a) = 0.5 * acc.value();
    }
  }
  return g;
}

}  // namespace bures
