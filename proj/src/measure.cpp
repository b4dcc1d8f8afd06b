#include "bures/measure.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "bures/sampling.hpp"

namespace bures {

double psd_determinant(const RealMatrix& g) {
  if (g.rows() != g.cols()) throw ValidationError("determinant of a non-square matrix");
  if (g.rows() == 0) return 1.0;
  Eigen::LDLT<RealMatrix> ldlt(g);
  if (ldlt.info() != Eigen::Success) throw ValidationError("LDLT factorization failed");
  const RealVector d = ldlt.vectorD();
  const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
  double det = 1.0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) < -1e-10 * scale) {
      std::ostringstream msg;
      msg << "matrix is not positive semidefinite (pivot " << d(i) << ")";
      throw ValidationError(msg.str());
    }
    det *= d(i);
  }
  if (det < -1e-10) throw ValidationError("negative determinant of a PSD matrix");
  return std::max(det, 0.0);
}

double volume_element(const Spectrum& s, const CosetCoords& coords) {
  require_interior(s);
  const LambdaWeights lw = lambda_weights(s);
  const int n = s.n();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (lw(i, j) == 0.0) return 0.0;
    }
  }
  const double det_d = g_diagonal(s).prod();
  const double det_c = psd_determinant(g_coset(s, coords));
  return std::sqrt(det_d * det_c);
}

namespace {

double relative_spread(const std::vector<double>& r) {
  const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  return (*hi - *lo) / scale;
}

}  // namespace

FactorizationReport factorization_check(const CosetCoords& coords, const std::vector<Spectrum>& spectra) {
  if (spectra.size() < 2) throw ValidationError("factorization check needs at least two spectra");
  const int n = coords.n();
  std::vector<double> r1;
  std::vector<double> r2;
  for (const Spectrum& s : spectra) {
    if (s.n() != n) throw ValidationError("spectrum and coset coordinates disagree on N");
    const LambdaWeights lw = lambda_weights(s);
    double prod = 1.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (lw(i, j) == 0.0) throw ValidationError("degenerate spectrum: Lambda_ij = 0");
        prod *= lw(i, j);
      }
    }
    const double det_c = psd_determinant(g_coset(s, coords));
    if (!(det_c > 0.0)) throw ValidationError("coset point is singular: det g^(C) = 0");
    r1.push_back(det_c / prod);
    r2.push_back(det_c / (prod * prod));
  }
  const double spread1 = relative_spread(r1);
  const double spread2 = relative_spread(r2);
  FactorizationReport report;
  if (spread2 <= spread1) {
    report.exponent = 2;
    report.spread = spread2;
    report.spread_other = spread1;
    report.ratios = std::move(r2);
  } else {
    report.exponent = 1;
    report.spread = spread1;
    report.spread_other = spread2;
    report.ratios = std::move(r1);
  }
  report.pass = report.spread < kFactorizationTolerance;
  return report;
}

double sampling_domain_volume(int n) {
  const double half_pi = std::numbers::pi / 2;
  double v = std::pow(half_pi, n - 1);
  for (int m = 2; m <= n; ++m) {
    const double d = m - 1;
    const double sphere = 2.0 * std::pow(std::numbers::pi, d / 2) / std::tgamma(d / 2);
    v *= half_pi * sphere / std::pow(2.0, d);
    v *= std::pow(2.0 * std::numbers::pi, m - 1);
  }
  return v;
}

namespace {

struct ChunkResult {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t rejected = 0;
};

ChunkResult run_chunk(int n, std::uint64_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> normal(0.0, 1.0);

  CompensatedSum sum;
  CompensatedSum sum_sq;
  ChunkResult out;
  std::vector<double> thetas(static_cast<std::size_t>(n - 1));
  std::vector<double> direction;
  CosetCoords coords = CosetCoords::zero(n);
  for (std::uint64_t s = 0; s < count; ++s) {
    for (double& t : thetas) t = angle(rng);
    double jacobian = 1.0;
    for (int m = 2; m <= n; ++m) {
      const double radius = angle(rng);
      direction.assign(static_cast<std::size_t>(m - 1), 1.0);
      if (m > 2) {
        double norm_sq = 0.0;
        for (double& u : direction) {
          u = std::abs(normal(rng));
          norm_sq += u * u;
        }
        const double norm = std::sqrt(norm_sq);
        for (double& u : direction) u /= norm;
      }
      for (int r = 1; r < m; ++r) coords.set_gamma(m, r, radius * direction[static_cast<std::size_t>(r - 1)]);
      for (int r = 1; r < m; ++r) coords.set_xi(m, r, phase(rng));
      jacobian *= std::pow(radius, m - 2);
    }
    const Spectrum spectrum(thetas);
    const RealVector lambdas = thetas_to_lambdas(spectrum);
    bool reject = lambdas.minCoeff() < kDegeneracyThreshold;
    for (int i = 0; !reject && i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (std::abs(lambdas(i) - lambdas(j)) < kDegeneracyThreshold) reject = true;
      }
    }
    if (reject) {
      ++out.rejected;
      continue;
    }
    const double w = volume_element(spectrum, coords) * jacobian;
    sum.add(w);
    sum_sq.add(w * w);
  }
  out.sum = sum.value();
  out.sum_sq = sum_sq.value();
  return out;
}

ChunkResult pairwise_merge(const std::vector<ChunkResult>& chunks, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return chunks[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  const ChunkResult a = pairwise_merge(chunks, lo, mid);
  const ChunkResult b = pairwise_merge(chunks, mid, hi);
  return ChunkResult{a.sum + b.sum, a.sum_sq + b.sum_sq, a.rejected + b.rejected};
}

}  // namespace

VolumeEstimate mc_volume(int n, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  if (n != 2 && n != 3) throw ValidationError("mc_volume supports N = 2 and N = 3 only");
  if (samples < 10000) throw ValidationError("mc_volume needs at least 1e4 samples");

  const std::uint64_t chunks = (samples + kVolumeChunkSize - 1) / kVolumeChunkSize;
  std::vector<ChunkResult> results(static_cast<std::size_t>(chunks));
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      const std::uint64_t count = std::min(kVolumeChunkSize, samples - c * kVolumeChunkSize);
      results[static_cast<std::size_t>(c)] = run_chunk(n, count, derive_seed(seed, c));
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  const ChunkResult total = pairwise_merge(results, 0, results.size());
  const auto count = static_cast<double>(samples);
  if (static_cast<double>(total.rejected) >= 0.01 * count) {
    std::ostringstream msg;
    msg << total.rejected << " of " << samples << " samples rejected near degeneracy or boundary (>= 1%)";
    throw std::runtime_error(msg.str());
  }
  const double mean = total.sum / count;
  const double var = std::max(0.0, (total.sum_sq - total.sum * mean) / (count - 1.0));
  const double factorial = std::tgamma(n + 1.0);
  const double domain = sampling_domain_volume(n);

  VolumeEstimate est;
  est.value = domain * mean / factorial;
  est.std_error = domain * std::sqrt(var / count) / factorial;
  est.samples = samples;
  est.seed = seed;
  est.n = n;
  est.rejected = total.rejected;
  est.chunk_size = kVolumeChunkSize;
  est.chunks = chunks;
  est.domain_volume = domain;
  est.label = n == 2 ? "bures volume" : "domain-convention volume";
  return est;
}

}  // namespace bures
