#ifndef BURES_MEASURE_HPP
#define BURES_MEASURE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bures/metric.hpp"

namespace bures {

/// Determinant of a symmetric PSD matrix through a pivoted LDL^T
/// factorization. Pivots below -1e-10 (relative to the largest pivot)
/// throw; small negative results are clamped to zero.
double psd_determinant(const RealMatrix& g);

/// sqrt(det g^(D) det g^(C)), using the block structure. Exactly zero when
/// two eigenvalues coincide. Requires an interior spectrum.
double volume_element(const Spectrum& s, const CosetCoords& coords);

struct FactorizationReport {
  int exponent = 0;               ///< fitted p in det g^(C) ~ prod Lambda_ij^p
  double spread = 0.0;            ///< max relative spread of r at the fitted p
  double spread_other = 0.0;      ///< spread at the rejected exponent
  std::vector<double> ratios;     ///< r(s) at the fitted exponent, one per spectrum
  bool pass = false;              ///< spread < kFactorizationTolerance
};

inline constexpr double kFactorizationTolerance = 1e-8;

/// r(s) = det g^(C)(s, coords) / prod_{i<j} Lambda_ij(s)^p for p in {1, 2};
/// reports the exponent with the smaller spread. Requires at least two
/// interior spectra without degenerate eigenvalues.
FactorizationReport factorization_check(const CosetCoords& coords, const std::vector<Spectrum>& spectra);

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int n = 0;
  std::uint64_t rejected = 0;
  std::uint64_t chunk_size = 0;
  std::uint64_t chunks = 0;
  double domain_volume = 0.0;
  std::string label;
};

inline constexpr std::uint64_t kVolumeChunkSize = 4096;
inline constexpr double kDegeneracyThreshold = 1e-8;

/// Volume of the sampling domain in (theta, polar gamma, xi) coordinates.
double sampling_domain_volume(int n);

/// Monte-Carlo Bures volume for n in {2, 3}, samples >= 1e4:
/// theta_k ~ U[0, pi/2]; per level a polar gamma radius ~ U[0, pi/2] with a
/// uniform direction on the positive orthant; xi ~ U[0, 2 pi). The result is
/// divided by N! for the eigenvalue ordering. threads = 0 uses the hardware
/// concurrency; the result does not depend on it.
VolumeEstimate mc_volume(int n, std::uint64_t samples, std::uint64_t seed, unsigned threads = 0);

}  // namespace bures

#endif  // BURES_MEASURE_HPP
