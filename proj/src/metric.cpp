#include "bures/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bures {

std::vector<std::string> coset_labels(int n) {
  std::vector<std::string> labels;
  for (int m = 2; m <= n; ++m) {
    for (int r = 1; r < m; ++r) labels.push_back("gamma_" + std::to_string(m) + "_" + std::to_string(r));
    for (int r = 1; r < m; ++r) labels.push_back("xi_" + std::to_string(m) + "_" + std::to_string(r));
  }
  return labels;
}

std::vector<std::string> coordinate_labels(int n) {
  std::vector<std::string> labels;
  for (int k = 1; k < n; ++k) labels.push_back("theta_" + std::to_string(k));
  for (auto& l : coset_labels(n)) labels.push_back(std::move(l));
  return labels;
}

std::vector<double> to_canonical(const Point& p) {
  std::vector<double> values(p.spectrum.thetas().begin(), p.spectrum.thetas().end());
  const std::vector<double> flat = p.coset.to_flat();
  values.insert(values.end(), flat.begin(), flat.end());
  return values;
}

Point from_canonical(int n, std::span<const double> values) {
  if (n < 2 || values.size() != static_cast<std::size_t>(n * n - 1)) {
    throw ValidationError("canonical coordinate vector must have N^2 - 1 entries");
  }
  const auto split = static_cast<std::size_t>(n - 1);
  Spectrum s(std::vector<double>(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(split)));
  CosetCoords c = CosetCoords::from_flat(n, values.subspan(split));
  return Point{std::move(s), std::move(c)};
}

LambdaWeights lambda_weights(const RealVector& lambdas) {
  const auto n = static_cast<int>(lambdas.size());
  LambdaWeights w{RealMatrix::Zero(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double sum = lambdas(i) + lambdas(j);
      if (!(sum > 0.0)) {
        throw ValidationError("Lambda_ij undefined for lambda_i + lambda_j = 0");
      }
      const double diff = lambdas(i) - lambdas(j);
      // Gaps at rounding level count as exact degeneracy.
      const double scale = std::max(lambdas(i), lambdas(j));
      if (std::abs(diff) <= kDegenerateRelativeGap * scale) continue;
      w.values(i, j) = w.values(j, i) = diff * diff / sum;
    }
  }
  return w;
}

LambdaWeights lambda_weights(const Spectrum& s) {
  require_interior(s);
  return lambda_weights(thetas_to_lambdas(s));
}

RealMatrix gamma_tensor(int m, const CosetCoords& coords, int k) {
  const int n = coords.n();
  if (m < 2 || m > n || k < 1 || k > m - 1) {
    std::ostringstream msg;
    msg << "gamma_tensor index out of range: m = " << m << ", k = " << k;
    throw ValidationError(msg.str());
  }
  const auto gam = coords.gamma(m);
  const RadialCoefficients c = radial_coefficients(coords.gamma_norm(m));
  const int last = m - 1;
  const int kk = k - 1;
  const double gk = gam[kk];

  RealMatrix t = RealMatrix::Zero(n, n);
  for (int i = 0; i < last; ++i) {
    for (int j = 0; j < last; ++j) {
      const double linear = (i == kk ? gam[j] : 0.0) + (j == kk ? gam[i] : 0.0);
      t(i, j) = linear * c.cosm1 + gam[i] * gam[j] * gk * c.inner;
    }
    const double border = (i == kk ? c.sinc : 0.0) + gam[i] * gk * c.border;
    t(i, last) = border;
    t(last, i) = -border;
  }
  t(last, last) = -gk * c.sinc;
  return t;
}

ETensors e_tensors(int m, const CosetCoords& coords) {
  const RealMatrix r = build_R(m, coords);
  ETensors e;
  e.gamma.reserve(static_cast<std::size_t>(m - 1));
  e.xi.reserve(static_cast<std::size_t>(m - 1));
  for (int k = 1; k < m; ++k) {
    e.gamma.push_back(r.transpose() * gamma_tensor(m, coords, k));
    RealMatrix ex = r.row(k - 1).transpose() * r.row(k - 1);
    ex(k - 1, k - 1) -= 1.0;
    e.xi.push_back(std::move(ex));
  }
  return e;
}

ComplexMatrix w_matrix(int m, const CosetCoords& coords) {
  const int n = coords.n();
  if (m < 2 || m > n) {
    throw ValidationError("w_matrix level out of range");
  }
  ComplexMatrix w = ComplexMatrix::Identity(n, n);
  for (int l = m - 1; l >= 2; --l) {
    w = w * build_omega_component(l, coords);
  }
  return w;
}

KTensor::KTensor(int n, std::vector<ComplexMatrix> coefficients) : n_(n), coefficients_(std::move(coefficients)) {
  if (static_cast<int>(coefficients_.size()) != CosetCoords::dimension(n_)) {
    throw ValidationError("KTensor needs N(N-1) coefficient matrices");
  }
}

const ComplexMatrix& KTensor::gamma(int m, int r) const {
  if (m < 2 || m > n_ || r < 1 || r > m - 1) throw ValidationError("KTensor index out of range");
  return (*this)[CosetCoords::level_offset(m) + r - 1];
}

const ComplexMatrix& KTensor::xi(int m, int r) const {
  if (m < 2 || m > n_ || r < 1 || r > m - 1) throw ValidationError("KTensor index out of range");
  return (*this)[CosetCoords::level_offset(m) + (m - 1) + r - 1];
}

KTensor k_tensor(const CosetCoords& coords) {
  const int n = coords.n();
  std::vector<ComplexMatrix> coefficients;
  coefficients.reserve(static_cast<std::size_t>(CosetCoords::dimension(n)));

  ComplexMatrix w = ComplexMatrix::Identity(n, n);  // W^(2;N)
  for (int m = 2; m <= n; ++m) {
    const ETensors e = e_tensors(m, coords);
    const auto xi = coords.xi(m);
    // e^{i(xi_k - xi_l)} multiplies the level-m entry before conjugation by W.
    ComplexMatrix phase = ComplexMatrix::Ones(n, n);
    for (int k = 0; k < m - 1; ++k) {
      for (int l = 0; l < n; ++l) {
        const double xl = l < m - 1 ? xi[l] : 0.0;
        phase(k, l) = std::polar(1.0, xi[k] - xl);
        phase(l, k) = std::conj(phase(k, l));
      }
    }
    const ComplexMatrix w_adj = w.adjoint();
    for (const RealMatrix& eg : e.gamma) {
      const ComplexMatrix a = phase.cwiseProduct(eg.cast<Complex>());
      coefficients.push_back(w_adj * a * w);
    }
    const Complex imag(0.0, 1.0);
    for (const RealMatrix& ex : e.xi) {
      const ComplexMatrix a = imag * phase.cwiseProduct(ex.cast<Complex>());
      coefficients.push_back(w_adj * a * w);
    }
    w = build_omega_component(m, coords) * w;  // W^(m+1;N) = Omega^(m;N) W^(m;N)
  }
  return KTensor(n, std::move(coefficients));
}

std::vector<RealMatrix> coset_pair_coefficients(const CosetCoords& coords) {
  const int n = coords.n();
  const int dim = CosetCoords::dimension(n);
  const KTensor k = k_tensor(coords);
  std::vector<RealMatrix> pairs;
  pairs.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      RealMatrix c(dim, dim);
      for (int a = 0; a < dim; ++a) {
        for (int b = a; b < dim; ++b) {
          c(a, b) = c(b, a) = std::real(k[a](i, j) * std::conj(k[b](i, j)));
        }
      }
      pairs.push_back(std::move(c));
    }
  }
  return pairs;
}

RealMatrix g_coset(const Spectrum& s, const CosetCoords& coords) {
  if (s.n() != coords.n()) {
    throw ValidationError("spectrum and coset coordinates disagree on N");
  }
  const int n = coords.n();
  const int dim = CosetCoords::dimension(n);
  const LambdaWeights lw = lambda_weights(s);
  const KTensor k = k_tensor(coords);

  RealMatrix g(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = a; b < dim; ++b) {
      CompensatedSum acc;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (lw(i, j) == 0.0) continue;
          acc.add(lw(i, j) * std::real(k[a](i, j) * std::conj(k[b](i, j))));
        }
      }
      g(a, b) = g(b, a) = acc.value();
    }
  }
  return g;
}

RealMatrix BuresMetric::full() const {
  const auto nd = static_cast<int>(g_d.size());
  const auto nc = static_cast<int>(g_c.rows());
  RealMatrix g = RealMatrix::Zero(nd + nc, nd + nc);
  g.topLeftCorner(nd, nd) = g_d.asDiagonal();
  g.bottomRightCorner(nc, nc) = g_c;
  return g;
}

BuresMetric full_metric(const Spectrum& s, const CosetCoords& coords) {
  BuresMetric metric;
  metric.n = s.n();
  metric.g_d = g_diagonal(s);
  metric.g_c = g_coset(s, coords);
  metric.coordinate_order = coordinate_labels(s.n());
  return metric;
}

}  // namespace bures
