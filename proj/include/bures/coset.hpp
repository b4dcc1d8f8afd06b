#ifndef BURES_COSET_HPP
#define BURES_COSET_HPP

#include <span>
#include <vector>

#include "bures/spectral.hpp"
#include "bures/types.hpp"

namespace bures {

/// Coordinates of the coset representative Omega = Omega^(N) ... Omega^(2).
/// Level m (2 <= m <= N) carries B^(m) = (gamma_r e^{i xi_r})_{r=1..m-1},
/// so N(N-1) reals in total. Flat order is, per level m ascending,
/// gamma^(m)_1..gamma^(m)_{m-1} followed by xi^(m)_1..xi^(m)_{m-1}.
class CosetCoords {
 public:
  static CosetCoords zero(int n);

  /// gammas[m-2] and xis[m-2] hold level m; each must have m-1 finite entries.
  CosetCoords(int n, std::vector<std::vector<double>> gammas, std::vector<std::vector<double>> xis);

  static CosetCoords from_flat(int n, std::span<const double> flat);
  std::vector<double> to_flat() const;

  int n() const { return n_; }
  std::span<const double> gamma(int m) const { return gammas_.at(level_index(m)); }
  std::span<const double> xi(int m) const { return xis_.at(level_index(m)); }
  void set_gamma(int m, int r, double value);
  void set_xi(int m, int r, double value);

  /// gamma^(m) = |gamma^(m)|_2
  double gamma_norm(int m) const;

  /// Offset of level m inside the flat coset block.
  static int level_offset(int m) { return (m - 1) * (m - 2); }
  static int dimension(int n) { return n * (n - 1); }

 private:
  std::size_t level_index(int m) const;

  int n_;
  std::vector<std::vector<double>> gammas_;
  std::vector<std::vector<double>> xis_;
};

/// Smooth radial coefficients of R^(m;N) and its gamma derivatives,
/// expressed so that every gamma-hat appears multiplied by gamma:
///   sinc  = sin(g)/g
///   cosm1 = (cos(g) - 1)/g^2
///   inner = -2(cos(g) - 1)/g^4 - sin(g)/g^3
///   border = (cos(g) - sin(g)/g)/g^2
/// Series are used below a small-g threshold.
struct RadialCoefficients {
  double sinc;
  double cosm1;
  double inner;
  double border;
  double cos_g;
  double sin_g;
};

inline constexpr double kSmallGammaThreshold = 1e-2;

RadialCoefficients radial_coefficients(double g);

/// Real orthogonal N x N rotation R^(m;N).
RealMatrix build_R(int m, const CosetCoords& coords);

/// Diagonal phase matrix X^(m;N): e^{i xi^(m)_k} for k < m, 1 otherwise.
ComplexMatrix build_X(int m, const CosetCoords& coords);

/// Omega^(m;N) = X R X^dagger.
ComplexMatrix build_omega_component(int m, const CosetCoords& coords);

/// Test oracle: the SU(m)/U(m-1) block written with matrix functions of
/// B B^dagger and B^dagger B (evaluated by eigendecomposition), embedded
/// in the upper-left corner of an n x n identity.
ComplexMatrix build_coset_direct(int n, int m, std::span<const Complex> b);

/// Omega = Omega^(N;N) Omega^(N-1;N) ... Omega^(2;N).
ComplexMatrix build_omega(const CosetCoords& coords);

/// rho = Omega diag(lambda) Omega^dagger.
ComplexMatrix assemble_density(const Spectrum& s, const CosetCoords& coords);

}  // namespace bures

#endif  // BURES_COSET_HPP
