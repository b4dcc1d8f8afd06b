#include "bures/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bures {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

Spectrum random_interior_spectrum(int n, std::mt19937_64& rng, double margin) {
  if (n < 2) throw ValidationError("need N >= 2");
  if (!(margin >= 0.0) || margin * n * n >= 1.0) throw ValidationError("spectrum margin too large for N");
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> lambdas(static_cast<std::size_t>(n));
  for (;;) {
    double total = 0.0;
    for (double& l : lambdas) {
      l = expo(rng);
      total += l;
    }
    for (double& l : lambdas) l /= total;
    std::vector<double> sorted = lambdas;
    std::sort(sorted.begin(), sorted.end());
    bool ok = sorted.front() >= margin;
    for (std::size_t i = 1; ok && i < sorted.size(); ++i) ok = sorted[i] - sorted[i - 1] >= margin;
    if (ok) return lambdas_to_thetas(lambdas);
  }
}

CosetCoords random_coset(int n, std::mt19937_64& rng, double gamma_max) {
  std::uniform_real_distribution<double> gam(-gamma_max, gamma_max);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  CosetCoords c = CosetCoords::zero(n);
  for (int m = 2; m <= n; ++m) {
    for (int r = 1; r < m; ++r) c.set_gamma(m, r, gam(rng));
    for (int r = 1; r < m; ++r) c.set_xi(m, r, phase(rng));
  }
  return c;
}

Point random_interior_point(int n, std::mt19937_64& rng, double margin) {
  Spectrum s = random_interior_spectrum(n, rng, margin);
  CosetCoords c = random_coset(n, rng);
  return Point{std::move(s), std::move(c)};
}

}  // namespace bures
