#ifndef BURES_ORACLE_HPP
#define BURES_ORACLE_HPP

#include "bures/metric.hpp"
#include "bures/types.hpp"

namespace bures {

/// Hermitian eigensystem, eigenvalues sorted descending; every eigenvector
/// column is rotated so its largest-magnitude component is real positive.
struct EigenSystem {
  RealVector values;
  ComplexMatrix vectors;
};

EigenSystem hermitian_eigensystem(const ComplexMatrix& h);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-1e-10, 0) are clamped to zero; anything lower throws.
ComplexMatrix psd_sqrt(const ComplexMatrix& h);

/// Throws unless rho is square, Hermitian, PSD and trace one within tol.
void require_density(const ComplexMatrix& rho, double tol = 1e-8);

/// Uhlmann fidelity [Tr sqrt(sqrt(rho1) rho2 sqrt(rho1))]^2.
double fidelity(const ComplexMatrix& rho1, const ComplexMatrix& rho2);

/// d_B = sqrt(2 - 2 sqrt(F)).
double bures_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2);

/// Hubner's quadratic form 1/2 sum_ij |<l_i|drho|l_j>|^2 / (l_i + l_j).
/// drho is symmetrized first; throws if it is non-Hermitian beyond 1e-8,
/// has trace above 1e-10, or rho has an eigenvalue below the floor.
double hubner_form(const ComplexMatrix& rho, const ComplexMatrix& drho);

inline constexpr double kDefaultDifferenceStep = 1e-5;

/// Bures metric in canonical coordinates by central differences of
/// assemble_density and the polarized Hubner form. h must be in [1e-7, 1e-3].
RealMatrix finite_diff_metric(const Point& p, double h = kDefaultDifferenceStep);

}  // namespace bures

#endif  // BURES_ORACLE_HPP
