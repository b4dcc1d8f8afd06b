#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bures/measure.hpp"
#include "bures/oracle.hpp"
#include "bures/sampling.hpp"
#include "support.hpp"

using namespace bures;
using std::numbers::pi;

TEST_CASE("psd_determinant") {
  RealMatrix g(3, 3);
  g << 4, 1, 0, 1, 3, 1, 0, 1, 2;
  CHECK(psd_determinant(g) == doctest::Approx(g.determinant()).epsilon(1e-14));
  CHECK(psd_determinant(RealMatrix::Zero(2, 2)) == 0.0);
  RealMatrix rank1(2, 2);
  rank1 << 1, 1, 1, 1;
  CHECK(psd_determinant(rank1) < 1e-15);
  RealMatrix indefinite(2, 2);
  indefinite << 1, 0, 0, -1;
  CHECK_THROWS_AS(psd_determinant(indefinite), ValidationError);
  CHECK_THROWS_AS(psd_determinant(RealMatrix::Zero(2, 3)), ValidationError);
}

TEST_CASE("volume_element for N = 2 matches the hand formula") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Point p = random_interior_point(2, rng);
    const double theta = p.spectrum.theta(1);
    const double gamma = p.coset.gamma(2)[0];
    const double expected = std::pow(std::cos(2 * theta), 2) * std::abs(std::sin(gamma) * std::cos(gamma));
    CHECK(volume_element(p.spectrum, p.coset) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("volume_element agrees with the finite-difference metric") {
  std::mt19937_64 rng(12);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const Point p = random_interior_point(n, rng, 0.02);
      const double v = volume_element(p.spectrum, p.coset);
      CHECK(v >= 0.0);
      const double ref = std::sqrt(psd_determinant(finite_diff_metric(p)));
      CHECK(std::abs(v - ref) <= 1e-5 * ref);
    }
  }
}

TEST_CASE("volume_element vanishes on degenerate spectra") {
  std::mt19937_64 rng(13);
  const CosetCoords c = random_coset(3, rng);
  const Spectrum degenerate = Spectrum(lambdas_to_thetas(RealVector{{0.5, 0.25, 0.25}}));
  CHECK(volume_element(degenerate, c) == 0.0);
  CHECK(volume_element(Spectrum({pi / 4}), random_coset(2, rng)) == 0.0);
  CHECK_THROWS_AS(volume_element(Spectrum({0.0}), random_coset(2, rng)), ValidationError);
}

TEST_CASE("factorization_check finds exponent 2") {
  std::mt19937_64 rng(14);
  for (int n = 2; n <= 4; ++n) {
    for (int point = 0; point < 5; ++point) {
      const CosetCoords c = random_coset(n, rng);
      std::vector<Spectrum> spectra;
      for (int k = 0; k < 5; ++k) spectra.push_back(random_interior_spectrum(n, rng, 0.01));
      const FactorizationReport r = factorization_check(c, spectra);
      CHECK(r.exponent == 2);
      CHECK(r.pass);
      CHECK(r.spread < (n == 2 ? 1e-12 : 1e-8));
      CHECK(r.spread_other > 1e-3);
      CHECK(r.ratios.size() == 5);
    }
  }
}

TEST_CASE("factorization ratio for N = 2 is sin^2 cos^2 of gamma") {
  std::mt19937_64 rng(15);
  const CosetCoords c = random_coset(2, rng);
  const double g = c.gamma(2)[0];
  std::vector<Spectrum> spectra;
  for (int k = 0; k < 5; ++k) spectra.push_back(random_interior_spectrum(2, rng, 0.01));
  const FactorizationReport r = factorization_check(c, spectra);
  for (double ratio : r.ratios) CHECK(ratio == doctest::Approx(std::pow(std::sin(g) * std::cos(g), 2)).epsilon(1e-12));
}

TEST_CASE("factorization_check rejects bad input") {
  std::mt19937_64 rng(16);
  const CosetCoords c = random_coset(3, rng);
  const Spectrum good = random_interior_spectrum(3, rng);
  const Spectrum degenerate(lambdas_to_thetas(RealVector{{0.5, 0.25, 0.25}}));
  CHECK_THROWS_AS(factorization_check(c, {good}), ValidationError);
  CHECK_THROWS_AS(factorization_check(c, {good, degenerate}), ValidationError);
  CHECK_THROWS_AS(factorization_check(c, {good, random_interior_spectrum(2, rng)}), ValidationError);
  CHECK_THROWS_AS(factorization_check(CosetCoords::zero(3), {good, random_interior_spectrum(3, rng)}), ValidationError);
}

TEST_CASE("sampling_domain_volume") {
  CHECK(sampling_domain_volume(2) == doctest::Approx(pi / 2 * pi / 2 * 2 * pi));
  // N = 3: (pi/2)^2 * [pi/2 * 2pi] * [pi/2 * (pi/2) * (2pi)^2]
  CHECK(sampling_domain_volume(3) ==
        doctest::Approx(pi * pi / 4 * (pi * pi) * (pi * pi / 4 * 4 * pi * pi)).epsilon(1e-14));
}

TEST_CASE("mc_volume is reproducible and thread-independent") {
  const VolumeEstimate a = mc_volume(2, 20000, 99, 1);
  const VolumeEstimate b = mc_volume(2, 20000, 99, 1);
  const VolumeEstimate c = mc_volume(2, 20000, 99, 3);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  CHECK(a.value == c.value);
  CHECK(a.std_error == c.std_error);
  CHECK(a.samples == 20000);
  CHECK(a.seed == 99);
  CHECK(a.chunks == 5);
  CHECK(a.label == "bures volume");
  CHECK(mc_volume(2, 20000, 100, 1).value != a.value);
}

TEST_CASE("mc_volume standard error scales as 1/sqrt(samples)") {
  const VolumeEstimate small = mc_volume(2, 40000, 5);
  const VolumeEstimate large = mc_volume(2, 160000, 5);
  CHECK(small.std_error / large.std_error == doctest::Approx(2.0).epsilon(0.1));
  CHECK(std::abs(large.value - pi * pi / 8) < 4 * large.std_error);
}

TEST_CASE("mc_volume for N = 3") {
  const VolumeEstimate v = mc_volume(3, 10000, 3);
  CHECK(v.label == "domain-convention volume");
  CHECK(v.value > 0.0);
  CHECK(v.std_error > 0.0);
  CHECK(v.std_error < 0.1 * v.value);
}

TEST_CASE("mc_volume argument validation") {
  CHECK_THROWS_AS(mc_volume(4, 20000, 1), ValidationError);
  CHECK_THROWS_AS(mc_volume(1, 20000, 1), ValidationError);
  CHECK_THROWS_AS(mc_volume(2, 9999, 1), ValidationError);
}
