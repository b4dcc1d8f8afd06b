#ifndef BURES_METRIC_HPP
#define BURES_METRIC_HPP

#include <span>
#include <string>
#include <vector>

#include "bures/coset.hpp"
#include "bures/spectral.hpp"
#include "bures/types.hpp"

namespace bures {

/// A full parametrization point: N-1 spectral angles plus N(N-1) coset
/// coordinates.
struct Point {
  Spectrum spectrum;
  CosetCoords coset;

  int n() const { return spectrum.n(); }
};

/// Canonical coordinate order shared by every metric matrix:
///   theta_1..theta_{N-1}, then for m = 2..N
///   gamma_m_1..gamma_m_{m-1}, xi_m_1..xi_m_{m-1}.
std::vector<std::string> coordinate_labels(int n);
std::vector<std::string> coset_labels(int n);

/// Flatten a point in canonical order (length N^2 - 1).
std::vector<double> to_canonical(const Point& p);
Point from_canonical(int n, std::span<const double> values);

/// Eigenvalue pairs closer than this (relative) are treated as degenerate
/// and get Lambda_ij = 0 exactly.
inline constexpr double kDegenerateRelativeGap = 8.0 * 2.220446049250313e-16;

/// Lambda_ij = (lambda_i - lambda_j)^2 / (lambda_i + lambda_j), stored as a
/// symmetric N x N matrix with zero diagonal.
struct LambdaWeights {
  RealMatrix values;

  int n() const { return static_cast<int>(values.rows()); }
  double operator()(int i, int j) const { return values(i, j); }
};

/// Requires an interior spectrum.
LambdaWeights lambda_weights(const Spectrum& s);
/// Same, from raw eigenvalues; requires lambda_i + lambda_j > 0.
LambdaWeights lambda_weights(const RealVector& lambdas);

/// Gamma^(m;N)_{..;k} = dR^(m;N)/d gamma^(m)_k for 1 <= k <= m-1.
RealMatrix gamma_tensor(int m, const CosetCoords& coords, int k);

/// E tensors of level m; gamma[k-1] and xi[k-1] are N x N real matrices:
///   (E_ij)_gamma_k = sum_l R_li Gamma_lj;k
///   (E_ij)_xi_k    = R_ki R_kj - delta_ij delta_jk
/// so that (Omega^dagger dOmega)_ij =
///   e^{i(xi_i - xi_j)} sum_k [(E_ij)_gamma_k dgamma_k + i (E_ij)_xi_k dxi_k].
struct ETensors {
  std::vector<RealMatrix> gamma;
  std::vector<RealMatrix> xi;
};

ETensors e_tensors(int m, const CosetCoords& coords);

/// W^(m;N) = Omega^(m-1;N) ... Omega^(2;N); identity for m = 2.
ComplexMatrix w_matrix(int m, const CosetCoords& coords);

/// Coefficients of the one-forms K^(m;N) = W^dagger (Omega^(m)dagger dOmega^(m)) W,
/// one N x N complex matrix per coset coordinate in canonical coset order.
/// Summing over levels gives Omega^dagger dOmega.
class KTensor {
 public:
  KTensor(int n, std::vector<ComplexMatrix> coefficients);

  int n() const { return n_; }
  int dimension() const { return static_cast<int>(coefficients_.size()); }
  const ComplexMatrix& operator[](int a) const { return coefficients_.at(static_cast<std::size_t>(a)); }
  const ComplexMatrix& gamma(int m, int r) const;
  const ComplexMatrix& xi(int m, int r) const;

 private:
  int n_;
  std::vector<ComplexMatrix> coefficients_;
};

/// K does not depend on the spectrum.
KTensor k_tensor(const CosetCoords& coords);

/// Spectrum-free factors of g^(C): for each pair (i<j) in lexicographic order,
/// c_ij(a, b) = Re{ (K_ij)_a conj((K_ij)_b) }, so that
/// g^(C) = sum_{i<j} Lambda_ij c_ij.
std::vector<RealMatrix> coset_pair_coefficients(const CosetCoords& coords);

/// Coset block of the Bures metric (N(N-1) square, symmetric).
RealMatrix g_coset(const Spectrum& s, const CosetCoords& coords);

struct BuresMetric {
  int n = 0;
  RealVector g_d;
  RealMatrix g_c;
  std::vector<std::string> coordinate_order;

  /// Dense (N^2-1) square matrix with the zero off-diagonal blocks filled in.
  RealMatrix full() const;
};

/// Requires an interior spectrum.
BuresMetric full_metric(const Spectrum& s, const CosetCoords& coords);
inline BuresMetric full_metric(const Point& p) { return full_metric(p.spectrum, p.coset); }

}  // namespace bures

#endif  // BURES_METRIC_HPP
