#include "bures/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "bures/io.hpp"
#include "bures/measure.hpp"
#include "bures/oracle.hpp"
#include "bures/sampling.hpp"

namespace bures::cli {

namespace {

struct Deviation {
  double max_abs = 0.0;
  double max_rel = 0.0;
  double max_cross = 0.0;
  int failing = 0;
};

Deviation compare_point(int n, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  const Point p = random_interior_point(n, rng);
  const RealMatrix closed = full_metric(p).full();
  const RealMatrix oracle = finite_diff_metric(p);
  Deviation d;
  for (Eigen::Index i = 0; i < closed.rows(); ++i) {
    for (Eigen::Index k = 0; k < closed.cols(); ++k) {
      const double diff = std::abs(closed(i, k) - oracle(i, k));
      const double ref = std::abs(oracle(i, k));
      d.max_abs = std::max(d.max_abs, diff);
      if (ref >= tol && ref > 0.0) d.max_rel = std::max(d.max_rel, diff / ref);
      if (diff > std::max(tol, 10.0 * tol * ref)) ++d.failing;
      const bool cross = (i < n - 1) != (k < n - 1);
      if (cross) d.max_cross = std::max(d.max_cross, ref);
    }
  }
  return d;
}

void emit(const io::Json& j, std::ostream& out) { out << j.dump(2) << '\n'; }

}  // namespace

CheckResult check_metric(int n, int points, std::uint64_t seed, double tolerance, unsigned threads) {
  if (n < 2) throw ValidationError("check needs n >= 2");
  if (points < 1) throw ValidationError("check needs at least one point");
  if (!(tolerance >= 0.0)) throw ValidationError("tolerance must be non-negative");

  std::vector<Deviation> per_point(static_cast<std::size_t>(points));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < points; i = next++) {
      per_point[static_cast<std::size_t>(i)] =
          compare_point(n, derive_seed(seed, static_cast<std::uint64_t>(n) * 1000003ULL + static_cast<std::uint64_t>(i)), tolerance);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CheckResult r;
  r.n = n;
  r.points = points;
  r.seed = seed;
  r.tolerance = tolerance;
  for (const Deviation& d : per_point) {
    r.max_abs_deviation = std::max(r.max_abs_deviation, d.max_abs);
    r.max_rel_deviation = std::max(r.max_rel_deviation, d.max_rel);
    r.max_cross_term = std::max(r.max_cross_term, d.max_cross);
    r.failing_entries += d.failing;
  }
  r.pass = r.failing_entries == 0;
  return r;
}

namespace {

struct Options {
  int n = 0;
  std::string point;
  std::string point_b;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  double tolerance = 1e-6;
  std::string format = "json";
  std::string output;
};

Point load_interior_point(const std::string& path) {
  Point p = io::read_point_file(path);
  require_interior(p.spectrum);
  return p;
}

int cmd_metric(const Options& o, std::ostream& out) {
  const Point p = load_interior_point(o.point);
  const BuresMetric g = full_metric(p);
  const double root_det = volume_element(p.spectrum, p.coset);
  if (o.format == "csv") {
    io::write_metric_csv(out, g, root_det);
  } else {
    emit(io::metric_to_json(g, root_det), out);
  }
  return kExitOk;
}

int cmd_density(const Options& o, std::ostream& out) {
  const Point p = io::read_point_file(o.point);
  const ComplexMatrix rho = assemble_density(p.spectrum, p.coset);
  require_density(rho, 1e-12);
  emit(io::Json{{"n", p.n()}, {"rho", io::matrix_to_json(rho)}}, out);
  return kExitOk;
}

int cmd_distance(const Options& o, std::ostream& out) {
  const Point a = io::read_point_file(o.point);
  const Point b = io::read_point_file(o.point_b);
  if (a.n() != b.n()) throw ValidationError("points have different level counts");
  const ComplexMatrix ra = assemble_density(a.spectrum, a.coset);
  const ComplexMatrix rb = assemble_density(b.spectrum, b.coset);
  const double f = fidelity(ra, rb);
  const double root_f = std::sqrt(f);
  emit(io::Json{{"n", a.n()}, {"fidelity", f}, {"bures_distance", std::sqrt(std::max(2.0 - 2.0 * root_f, 0.0))}},
       out);
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  std::vector<int> levels;
  if (o.n > 0) {
    levels.push_back(o.n);
  } else {
    levels = {2, 3, 4};
  }
  const int points = o.samples > 0 ? static_cast<int>(o.samples) : 200;
  io::Json results = io::Json::array();
  bool all_pass = true;
  for (int n : levels) {
    const CheckResult r = check_metric(n, points, o.seed, o.tolerance);
    all_pass = all_pass && r.pass;
    results.push_back({{"n", r.n},
                       {"points", r.points},
                       {"max_abs_deviation", r.max_abs_deviation},
                       {"max_rel_deviation", r.max_rel_deviation},
                       {"max_cross_term", r.max_cross_term},
                       {"failing_entries", r.failing_entries},
                       {"status", r.pass ? "PASS" : "FAIL"}});
  }
  emit(io::Json{{"seed", o.seed}, {"tolerance", o.tolerance}, {"results", results}, {"status", all_pass ? "PASS" : "FAIL"}},
       out);
  return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_volume(const Options& o, std::ostream& out) {
  if (o.n == 0) throw ValidationError("volume needs --n");
  const std::uint64_t samples = o.samples > 0 ? o.samples : 1000000;
  emit(io::volume_to_json(mc_volume(o.n, samples, o.seed)), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bures metric of N-level density matrices in coset coordinates", "bures"};
  app.require_subcommand(1);
  app.require_subcommand(1);
  Options o;

  auto add_output = [&](CLI::App* sub) { sub->add_option("--output", o.output, "Write to FILE instead of stdout"); };

  auto* metric = app.add_subcommand("metric", "Closed-form Bures metric at a point");
  metric->add_option("--point", o.point, "Point file")->required();
  metric->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  add_output(metric);

  auto* density = app.add_subcommand("density", "Density matrix at a point");
  density->add_option("--point", o.point, "Point file")->required();
  add_output(density);

  auto* distance = app.add_subcommand("distance", "Fidelity and Bures distance between two points");
  distance->add_option("--point", o.point, "First point file")->required();
  distance->add_option("--point-b", o.point_b, "Second point file")->required();
  add_output(distance);

  auto* check = app.add_subcommand("check", "Compare the closed form against the finite-difference oracle");
  check->add_option("--n", o.n, "Level count (default: sweep 2, 3, 4)");
  check->add_option("--samples,--points", o.samples, "Random points per level (default 200)");
  check->add_option("--seed", o.seed, "RNG seed");
  check->add_option("--tolerance", o.tolerance, "Absolute tolerance; relative tolerance is 10x");
  add_output(check);

  auto* volume = app.add_subcommand("volume", "Monte-Carlo Bures volume (N = 2, 3)");
  volume->add_option("--n", o.n, "Level count")->required();
  volume->add_option("--samples", o.samples, "Sample count (default 1e6)");
  volume->add_option("--seed", o.seed, "RNG seed");
  add_output(volume);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) {
      err << "error: cannot open " << o.output << " for writing\n";
      return kExitInvalid;
    }
    sink = &file;
  }

  try {
    if (metric->parsed()) return cmd_metric(o, *sink);
    if (density->parsed()) return cmd_density(o, *sink);
    if (distance->parsed()) return cmd_distance(o, *sink);
    if (check->parsed()) return cmd_check(o, *sink);
    if (volume->parsed()) return cmd_volume(o, *sink);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace bures::cli
