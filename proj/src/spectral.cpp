#include "bures/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bures {

Spectrum::Spectrum(std::vector<double> thetas) : thetas_(std::move(thetas)) {
  if (thetas_.empty()) {
    throw ValidationError("spectrum needs at least one angle (N >= 2)");
  }
  for (std::size_t k = 0; k < thetas_.size(); ++k) {
    const double t = thetas_[k];
    if (!std::isfinite(t) || t < 0.0 || t > std::numbers::pi / 2) {
      std::ostringstream msg;
      msg << "theta_" << k + 1 << " = " << t << " outside [0, pi/2]";
      throw ValidationError(msg.str());
    }
  }
}

RealVector thetas_to_lambdas(const Spectrum& s) {
  const int n = s.n();
  RealVector lambdas(n);
  double prefix = 1.0;
  for (int k = 1; k < n; ++k) {
    const double c = std::cos(s.theta(k));
    const double sn = std::sin(s.theta(k));
    lambdas(k - 1) = prefix * c * c;
    prefix *= sn * sn;
  }
  lambdas(n - 1) = prefix;
  return lambdas;
}

Spectrum lambdas_to_thetas(std::span<const double> lambdas) {
  const std::size_t n = lambdas.size();
  if (n < 2) {
    throw ValidationError("need at least two eigenvalues");
  }
  double total = 0.0;
  for (double l : lambdas) {
    if (!std::isfinite(l) || l < 0.0 || l > 1.0) {
      throw ValidationError("eigenvalues must lie in [0, 1]");
    }
    total += l;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw ValidationError("eigenvalues must sum to 1 within 1e-10");
  }

  // tail[k] = lambda_k + ... + lambda_N = sin^2(theta_1)...sin^2(theta_{k-1})
  std::vector<double> tail(n + 1, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    tail[k] = tail[k + 1] + lambdas[k];
  }

  std::vector<double> thetas(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (tail[k] > 0.0 && tail[k] < 1e-300) {
      throw ValidationError("angle inversion ill-conditioned: remaining mass underflows");
    }
    thetas[k] = std::atan2(std::sqrt(tail[k + 1]), std::sqrt(lambdas[k]));
  }
  return Spectrum(std::move(thetas));
}

double min_lambda(const Spectrum& s) { return thetas_to_lambdas(s).minCoeff(); }

bool is_interior(const Spectrum& s, double floor) { return min_lambda(s) >= floor; }

void require_interior(const Spectrum& s, double floor) {
  const RealVector lambdas = thetas_to_lambdas(s);
  for (int i = 0; i < lambdas.size(); ++i) {
    if (lambdas(i) < floor) {
      std::ostringstream msg;
      msg << "boundary spectrum: lambda_" << i + 1 << " = " << lambdas(i) << " below floor " << floor;
      throw ValidationError(msg.str());
    }
  }
}

RealVector g_diagonal(const Spectrum& s) {
  require_interior(s);
  const int n = s.n();
  RealVector g(n - 1);
  double prefix = 1.0;
  for (int k = 1; k < n; ++k) {
    g(k - 1) = prefix;
    if (k + 1 < n) {
      const double sn = std::sin(s.theta(k));
      prefix *= sn * sn;
    }
  }
  return g;
}

}  // namespace bures
