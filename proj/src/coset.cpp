#include "bures/coset.hpp"

#include <cmath>
#include <sstream>

namespace bures {

namespace {

void require_level(int m, int n) {
  if (m < 2 || m > n) {
    std::ostringstream msg;
    msg << "level m = " << m << " outside [2, " << n << "]";
    throw ValidationError(msg.str());
  }
}

}  // namespace

CosetCoords CosetCoords::zero(int n) {
  if (n < 2) {
    throw ValidationError("coset coordinates need N >= 2");
  }
  std::vector<std::vector<double>> gammas;
  std::vector<std::vector<double>> xis;
  for (int m = 2; m <= n; ++m) {
    gammas.emplace_back(static_cast<std::size_t>(m - 1), 0.0);
    xis.emplace_back(static_cast<std::size_t>(m - 1), 0.0);
  }
  return CosetCoords(n, std::move(gammas), std::move(xis));
}

CosetCoords::CosetCoords(int n, std::vector<std::vector<double>> gammas, std::vector<std::vector<double>> xis)
    : n_(n), gammas_(std::move(gammas)), xis_(std::move(xis)) {
  if (n_ < 2) {
    throw ValidationError("coset coordinates need N >= 2");
  }
  const auto levels = static_cast<std::size_t>(n_ - 1);
  if (gammas_.size() != levels || xis_.size() != levels) {
    std::ostringstream msg;
    msg << "expected " << levels << " coset levels for N = " << n_ << ", got " << gammas_.size() << " gamma and "
        << xis_.size() << " xi levels";
    throw ValidationError(msg.str());
  }
  for (int m = 2; m <= n_; ++m) {
    const auto& g = gammas_[static_cast<std::size_t>(m - 2)];
    const auto& x = xis_[static_cast<std::size_t>(m - 2)];
    if (g.size() != static_cast<std::size_t>(m - 1) || x.size() != static_cast<std::size_t>(m - 1)) {
      std::ostringstream msg;
      msg << "level " << m << " needs " << m - 1 << " gamma and xi values, got " << g.size() << " and " << x.size();
      throw ValidationError(msg.str());
    }
    for (double v : g) {
      if (!std::isfinite(v)) throw ValidationError("non-finite gamma coordinate");
    }
    for (double v : x) {
      if (!std::isfinite(v)) throw ValidationError("non-finite xi coordinate");
    }
  }
}

CosetCoords CosetCoords::from_flat(int n, std::span<const double> flat) {
  if (n < 2 || flat.size() != static_cast<std::size_t>(dimension(n))) {
    throw ValidationError("flat coset vector has wrong length");
  }
  std::vector<std::vector<double>> gammas;
  std::vector<std::vector<double>> xis;
  std::size_t pos = 0;
  for (int m = 2; m <= n; ++m) {
    const auto len = static_cast<std::size_t>(m - 1);
    gammas.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                        flat.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
    xis.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                     flat.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return CosetCoords(n, std::move(gammas), std::move(xis));
}

std::vector<double> CosetCoords::to_flat() const {
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(dimension(n_)));
  for (std::size_t l = 0; l < gammas_.size(); ++l) {
    flat.insert(flat.end(), gammas_[l].begin(), gammas_[l].end());
    flat.insert(flat.end(), xis_[l].begin(), xis_[l].end());
  }
  return flat;
}

std::size_t CosetCoords::level_index(int m) const {
  require_level(m, n_);
  return static_cast<std::size_t>(m - 2);
}

void CosetCoords::set_gamma(int m, int r, double value) {
  if (!std::isfinite(value)) throw ValidationError("non-finite gamma coordinate");
  gammas_.at(level_index(m)).at(static_cast<std::size_t>(r - 1)) = value;
}

void CosetCoords::set_xi(int m, int r, double value) {
  if (!std::isfinite(value)) throw ValidationError("non-finite xi coordinate");
  xis_.at(level_index(m)).at(static_cast<std::size_t>(r - 1)) = value;
}

double CosetCoords::gamma_norm(int m) const {
  double sum = 0.0;
  for (double g : gamma(m)) sum += g * g;
  return std::sqrt(sum);
}

RadialCoefficients radial_coefficients(double g) {
  RadialCoefficients c{};
  c.cos_g = std::cos(g);
  c.sin_g = std::sin(g);
  if (g < kSmallGammaThreshold) {
    const double g2 = g * g;
    c.sinc = 1.0 + g2 * (-1.0 / 6.0 + g2 * (1.0 / 120.0 - g2 / 5040.0));
    c.cosm1 = -0.5 + g2 * (1.0 / 24.0 + g2 * (-1.0 / 720.0 + g2 / 40320.0));
    c.inner = 1.0 / 12.0 + g2 * (-1.0 / 180.0 + g2 * (1.0 / 6720.0 - g2 / 453600.0));
    c.border = -1.0 / 3.0 + g2 * (1.0 / 30.0 + g2 * (-1.0 / 840.0 + g2 / 45360.0));
    return c;
  }
  const double g2 = g * g;
  const double half = std::sin(0.5 * g);
  c.sinc = c.sin_g / g;
  c.cosm1 = -2.0 * half * half / g2;
  c.inner = (-2.0 * c.cosm1 - c.sinc) / g2;
  c.border = (c.cos_g - c.sinc) / g2;
  return c;
}

RealMatrix build_R(int m, const CosetCoords& coords) {
  const int n = coords.n();
  require_level(m, n);
  const auto gam = coords.gamma(m);
  const RadialCoefficients c = radial_coefficients(coords.gamma_norm(m));
  const int last = m - 1;

  RealMatrix r = RealMatrix::Identity(n, n);
  for (int i = 0; i < last; ++i) {
    for (int j = 0; j < last; ++j) {
      r(i, j) += gam[i] * gam[j] * c.cosm1;
    }
    r(i, last) = gam[i] * c.sinc;
    r(last, i) = -gam[i] * c.sinc;
  }
  r(last, last) = c.cos_g;
  return r;
}

ComplexMatrix build_X(int m, const CosetCoords& coords) {
  const int n = coords.n();
  require_level(m, n);
  const auto xi = coords.xi(m);
  ComplexMatrix x = ComplexMatrix::Identity(n, n);
  for (int k = 0; k < m - 1; ++k) {
    x(k, k) = std::polar(1.0, xi[k]);
  }
  return x;
}

ComplexMatrix build_omega_component(int m, const CosetCoords& coords) {
  const int n = coords.n();
  const RealMatrix r = build_R(m, coords);
  const auto xi = coords.xi(m);
  // (X R X^dagger)_ij = e^{i(xi_i - xi_j)} R_ij with xi_k = 0 for k >= m.
  std::vector<Complex> phase(static_cast<std::size_t>(n), Complex(1.0, 0.0));
  for (int k = 0; k < m - 1; ++k) phase[k] = std::polar(1.0, xi[k]);

  ComplexMatrix omega(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      omega(i, j) = phase[i] * std::conj(phase[j]) * r(i, j);
    }
  }
  return omega;
}

ComplexMatrix build_coset_direct(int n, int m, std::span<const Complex> b) {
  require_level(m, n);
  if (b.size() != static_cast<std::size_t>(m - 1)) {
    throw ValidationError("B^(m) must have m-1 entries");
  }
  const int d = m - 1;
  ComplexVector bv(d);
  for (int i = 0; i < d; ++i) bv(i) = b[i];

  // cos sqrt(B B^dagger) via the Hermitian eigendecomposition of B B^dagger.
  const ComplexMatrix outer = bv * bv.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(outer);
  RealVector cos_root(d);
  for (int i = 0; i < d; ++i) {
    cos_root(i) = std::cos(std::sqrt(std::max(eig.eigenvalues()(i), 0.0)));
  }
  const ComplexMatrix top_left = eig.eigenvectors() * cos_root.asDiagonal() * eig.eigenvectors().adjoint();

  const double inner = bv.squaredNorm();  // B^dagger B
  const double root = std::sqrt(inner);
  const double sinc = root > 0.0 ? std::sin(root) / root : 1.0;

  ComplexMatrix out = ComplexMatrix::Identity(n, n);
  out.topLeftCorner(d, d) = top_left;
  out.block(0, d, d, 1) = bv * sinc;
  out.block(d, 0, 1, d) = -sinc * bv.adjoint();
  out(d, d) = std::cos(root);
  return out;
}

ComplexMatrix build_omega(const CosetCoords& coords) {
  const int n = coords.n();
  ComplexMatrix omega = ComplexMatrix::Identity(n, n);
  for (int m = n; m >= 2; --m) {
    omega = omega * build_omega_component(m, coords);
  }
  return omega;
}

ComplexMatrix assemble_density(const Spectrum& s, const CosetCoords& coords) {
  if (s.n() != coords.n()) {
    throw ValidationError("spectrum and coset coordinates disagree on N");
  }
  const ComplexMatrix omega = build_omega(coords);
  const RealVector lambdas = thetas_to_lambdas(s);
  ComplexMatrix rho = omega * lambdas.cast<Complex>().asDiagonal() * omega.adjoint();
  // Exact Hermiticity; the product is Hermitian only up to rounding.
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return rho;
}

}  // namespace bures
