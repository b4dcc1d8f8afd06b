#ifndef BURES_SAMPLING_HPP
#define BURES_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "bures/metric.hpp"

namespace bures {

/// SplitMix64 finalizer, used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Spectrum drawn uniformly from the simplex, redrawn until every eigenvalue
/// and every eigenvalue gap is at least margin.
Spectrum random_interior_spectrum(int n, std::mt19937_64& rng, double margin = 1e-3);

/// Coset coordinates with gamma components uniform in [-gamma_max, gamma_max]
/// and phases uniform in [0, 2 pi).
CosetCoords random_coset(int n, std::mt19937_64& rng, double gamma_max = 1.5);

Point random_interior_point(int n, std::mt19937_64& rng, double margin = 1e-3);

}  // namespace bures

#endif  // BURES_SAMPLING_HPP
