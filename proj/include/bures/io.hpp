#ifndef BURES_IO_HPP
#define BURES_IO_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "bures/measure.hpp"
#include "bures/metric.hpp"

namespace bures::io {

using Json = nlohmann::json;

/// {"n": 3, "thetas": [t1, t2], "gammas": {"2": [g], "3": [g1, g2]},
///  "xis": {"2": [x], "3": [x1, x2]}}; all angles in radians.
Point point_from_json(const Json& j);
Json point_to_json(const Point& p);
Point read_point_file(const std::string& path);

/// Metric document as written by the CLI.
struct MetricRecord {
  std::vector<std::string> coordinate_order;
  RealVector g_d;
  RealMatrix g_c;
  double sqrt_det_g = 0.0;
};

Json metric_to_json(const BuresMetric& g, double sqrt_det_g);
/// Rejects documents whose labels do not match the canonical order for the
/// level count implied by g_d, or whose g_c shape is wrong.
MetricRecord metric_from_json(const Json& j);
/// One header row of labels, one row per coordinate of the full matrix, and
/// a trailing sqrt_det_g row. Numbers use 17 significant digits.
void write_metric_csv(std::ostream& out, const BuresMetric& g, double sqrt_det_g);

/// Entries as [re, im] pairs, row-major.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json volume_to_json(const VolumeEstimate& v);

}  // namespace bures::io

#endif  // BURES_IO_HPP
