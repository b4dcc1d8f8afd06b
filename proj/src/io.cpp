#include "bures/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace bures::io {

namespace {

std::vector<double> real_array(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) throw ValidationError(what + " must contain numbers");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ValidationError(what + " contains a non-finite value");
    out.push_back(x);
  }
  return out;
}

std::vector<std::vector<double>> level_arrays(const Json& j, int n, const std::string& what) {
  if (!j.is_object()) throw ValidationError(what + " must be an object keyed by level");
  if (j.size() != static_cast<std::size_t>(n - 1)) {
    throw ValidationError(what + " must have exactly the levels 2.." + std::to_string(n));
  }
  std::vector<std::vector<double>> levels;
  for (int m = 2; m <= n; ++m) {
    const std::string key = std::to_string(m);
    if (!j.contains(key)) throw ValidationError(what + " is missing level " + key);
    std::vector<double> values = real_array(j.at(key), what + "[" + key + "]");
    if (values.size() != static_cast<std::size_t>(m - 1)) {
      throw ValidationError(what + "[" + key + "] must have " + std::to_string(m - 1) + " entries");
    }
    levels.push_back(std::move(values));
  }
  return levels;
}

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Point point_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("point document must be a JSON object");
  for (const char* key : {"n", "thetas", "gammas", "xis"}) {
    if (!j.contains(key)) throw ValidationError(std::string("point is missing \"") + key + "\"");
  }
  if (!j.at("n").is_number_integer()) throw ValidationError("n must be an integer");
  const int n = j.at("n").get<int>();
  if (n < 2) throw ValidationError("n must be at least 2");
  std::vector<double> thetas = real_array(j.at("thetas"), "thetas");
  if (thetas.size() != static_cast<std::size_t>(n - 1)) {
    throw ValidationError("thetas must have n-1 = " + std::to_string(n - 1) + " entries");
  }
  auto gammas = level_arrays(j.at("gammas"), n, "gammas");
  auto xis = level_arrays(j.at("xis"), n, "xis");
  return Point{Spectrum(std::move(thetas)), CosetCoords(n, std::move(gammas), std::move(xis))};
}

Json point_to_json(const Point& p) {
  const int n = p.n();
  Json gammas = Json::object();
  Json xis = Json::object();
  for (int m = 2; m <= n; ++m) {
    const auto g = p.coset.gamma(m);
    const auto x = p.coset.xi(m);
    gammas[std::to_string(m)] = std::vector<double>(g.begin(), g.end());
    xis[std::to_string(m)] = std::vector<double>(x.begin(), x.end());
  }
  const auto t = p.spectrum.thetas();
  return Json{{"n", n}, {"thetas", std::vector<double>(t.begin(), t.end())}, {"gammas", gammas}, {"xis", xis}};
}

Point read_point_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open point file " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ValidationError("point file " + path + " is not valid JSON: " + e.what());
  }
  return point_from_json(j);
}

Json metric_to_json(const BuresMetric& g, double sqrt_det_g) {
  Json gc = Json::array();
  for (Eigen::Index i = 0; i < g.g_c.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(g.g_c.cols()));
    for (Eigen::Index k = 0; k < g.g_c.cols(); ++k) row[static_cast<std::size_t>(k)] = g.g_c(i, k);
    gc.push_back(row);
  }
  return Json{{"n", g.n},
              {"coordinate_order", g.coordinate_order},
              {"g_d", std::vector<double>(g.g_d.data(), g.g_d.data() + g.g_d.size())},
              {"g_c", gc},
              {"sqrt_det_g", sqrt_det_g}};
}

MetricRecord metric_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("metric document must be a JSON object");
  for (const char* key : {"coordinate_order", "g_d", "g_c", "sqrt_det_g"}) {
    if (!j.contains(key)) throw ValidationError(std::string("metric is missing \"") + key + "\"");
  }
  MetricRecord rec;
  const std::vector<double> gd = real_array(j.at("g_d"), "g_d");
  if (gd.empty()) throw ValidationError("g_d must not be empty");
  const int n = static_cast<int>(gd.size()) + 1;
  if (j.contains("n") && j.at("n") != n) throw ValidationError("n does not match the length of g_d");

  const Json& labels = j.at("coordinate_order");
  if (!labels.is_array()) throw ValidationError("coordinate_order must be an array");
  for (const auto& l : labels) {
    if (!l.is_string()) throw ValidationError("coordinate labels must be strings");
    rec.coordinate_order.push_back(l.get<std::string>());
  }
  if (rec.coordinate_order != coordinate_labels(n)) {
    throw ValidationError("coordinate labels do not match the canonical order for N = " + std::to_string(n));
  }

  rec.g_d = Eigen::Map<const RealVector>(gd.data(), static_cast<Eigen::Index>(gd.size()));
  const int dim = CosetCoords::dimension(n);
  const Json& gc = j.at("g_c");
  if (!gc.is_array() || gc.size() != static_cast<std::size_t>(dim)) {
    throw ValidationError("g_c must be a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  }
  rec.g_c.resize(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const std::vector<double> row = real_array(gc.at(static_cast<std::size_t>(i)), "g_c row");
    if (row.size() != static_cast<std::size_t>(dim)) {
      throw ValidationError("g_c must be a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    }
    for (int k = 0; k < dim; ++k) rec.g_c(i, k) = row[static_cast<std::size_t>(k)];
  }
  if (!j.at("sqrt_det_g").is_number()) throw ValidationError("sqrt_det_g must be a number");
  rec.sqrt_det_g = j.at("sqrt_det_g").get<double>();
  return rec;
}

void write_metric_csv(std::ostream& out, const BuresMetric& g, double sqrt_det_g) {
  const RealMatrix full = g.full();
  out << "coordinate";
  for (const auto& l : g.coordinate_order) out << ',' << l;
  out << '\n';
  for (Eigen::Index i = 0; i < full.rows(); ++i) {
    out << g.coordinate_order[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < full.cols(); ++k) out << ',' << format17(full(i, k));
    out << '\n';
  }
  out << "sqrt_det_g," << format17(sqrt_det_g) << '\n';
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError("matrix rows must have equal length");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const std::vector<double> entry = real_array(row.at(static_cast<std::size_t>(k)), "matrix entry");
      if (entry.size() != 2) throw ValidationError("matrix entries must be [re, im] pairs");
      m(i, k) = Complex(entry[0], entry[1]);
    }
  }
  return m;
}

Json volume_to_json(const VolumeEstimate& v) {
  return Json{{"n", v.n},
              {"samples", v.samples},
              {"seed", v.seed},
              {"value", v.value},
              {"std_error", v.std_error},
              {"rejected", v.rejected},
              {"chunk_size", v.chunk_size},
              {"chunks", v.chunks},
              {"domain_volume", v.domain_volume},
              {"label", v.label}};
}

}  // namespace bures::io
