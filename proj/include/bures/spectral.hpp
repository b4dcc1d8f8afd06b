#ifndef BURES_SPECTRAL_HPP
#define BURES_SPECTRAL_HPP

#include <span>
#include <vector>

#include "bures/types.hpp"

namespace bures {

/// Metric operations reject spectra with any eigenvalue below this floor;
/// the eigenvalue block of the Bures metric diverges like 1/lambda there.
inline constexpr double kLambdaMinFloor = 1e-8;

/// Point of the eigenvalue simplex, stored as N-1 hyperspherical angles
/// theta_k in [0, pi/2]:
///   lambda_k = sin^2(theta_1)...sin^2(theta_{k-1}) cos^2(theta_k),  k < N
///   lambda_N = sin^2(theta_1)...sin^2(theta_{N-1})
class Spectrum {
 public:
  /// Throws ValidationError unless thetas has at least one entry and every
  /// angle is finite and inside [0, pi/2].
  explicit Spectrum(std::vector<double> thetas);

  int n() const { return static_cast<int>(thetas_.size()) + 1; }
  std::span<const double> thetas() const { return thetas_; }
  double theta(int k) const { return thetas_.at(static_cast<std::size_t>(k - 1)); }

 private:
  std::vector<double> thetas_;
};

RealVector thetas_to_lambdas(const Spectrum& s);

/// Inverse of thetas_to_lambdas. Requires lambda_i in [0, 1] summing to one
/// within 1e-10; throws when a tail mass underflows below 1e-300 while
/// still nonzero.
Spectrum lambdas_to_thetas(std::span<const double> lambdas);

inline Spectrum lambdas_to_thetas(const RealVector& lambdas) {
  return lambdas_to_thetas(std::span<const double>(lambdas.data(), static_cast<std::size_t>(lambdas.size())));
}

double min_lambda(const Spectrum& s);
bool is_interior(const Spectrum& s, double floor = kLambdaMinFloor);

/// Throws ValidationError naming the offending eigenvalue when the spectrum
/// touches the boundary.
void require_interior(const Spectrum& s, double floor = kLambdaMinFloor);

/// Diagonal entries of the eigenvalue block g^(D): 1 for theta_1 and
/// sin^2(theta_1)...sin^2(theta_{k-1}) for theta_k. Never reads theta_{N-1}.
RealVector g_diagonal(const Spectrum& s);

}  // namespace bures

#endif  // BURES_SPECTRAL_HPP
