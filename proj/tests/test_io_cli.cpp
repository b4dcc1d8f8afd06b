#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "bures/cli.hpp"
#include "bures/io.hpp"
#include "bures/oracle.hpp"
#include "bures/sampling.hpp"
#include "support.hpp"

using namespace bures;
using bures::testing::max_abs;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("bures_test_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path file = path / name;
    std::ofstream(file) << text;
    return file.string();
  }
};

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

ComplexMatrix density_from_output(const std::string& text) {
  return io::matrix_from_json(io::Json::parse(text).at("rho"));
}

}  // namespace

TEST_CASE("point JSON round trip") {
  std::mt19937_64 rng(21);
  for (int n = 2; n <= 5; ++n) {
    const Point p = random_interior_point(n, rng);
    const Point q = io::point_from_json(io::Json::parse(io::point_to_json(p).dump()));
    CHECK(q.n() == n);
    CHECK(std::ranges::equal(q.spectrum.thetas(), p.spectrum.thetas()));
    CHECK(q.coset.to_flat() == p.coset.to_flat());
  }
}

TEST_CASE("point JSON validation") {
  using io::Json;
  const Json good = Json::parse(R"({"n": 3, "thetas": [0.4, 0.5],
    "gammas": {"2": [0.1], "3": [0.2, 0.3]}, "xis": {"2": [0.4], "3": [0.5, 0.6]}})");
  CHECK_NOTHROW(io::point_from_json(good));

  Json bad = good;
  bad["thetas"] = {0.4};
  CHECK_THROWS_AS(io::point_from_json(bad), ValidationError);
  bad = good;
  bad["gammas"]["3"] = {0.2};
  CHECK_THROWS_AS(io::point_from_json(bad), ValidationError);
  bad = good;
  bad["xis"].erase("2");
  CHECK_THROWS_AS(io::point_from_json(bad), ValidationError);
  bad = good;
  bad["gammas"]["4"] = {0.1, 0.1, 0.1};
  CHECK_THROWS_AS(io::point_from_json(bad), ValidationError);
  bad = good;
  bad["thetas"] = {0.4, 2.0};
  CHECK_THROWS_AS(io::point_from_json(bad), ValidationError);
}

TEST_CASE("metric JSON round trip and label checks") {
  std::mt19937_64 rng(22);
  const Point p = random_interior_point(3, rng);
  const BuresMetric g = full_metric(p);
  const io::Json j = io::Json::parse(io::metric_to_json(g, 0.25).dump());
  const io::MetricRecord r = io::metric_from_json(j);
  CHECK(r.coordinate_order == coordinate_labels(3));
  CHECK(r.g_d == g.g_d);
  CHECK(r.g_c == g.g_c);
  CHECK(r.sqrt_det_g == 0.25);

  io::Json swapped = j;
  std::swap(swapped["coordinate_order"][2], swapped["coordinate_order"][3]);
  CHECK_THROWS_AS(io::metric_from_json(swapped), ValidationError);
  io::Json short_gc = j;
  short_gc["g_c"].erase(0);
  CHECK_THROWS_AS(io::metric_from_json(short_gc), ValidationError);
}

TEST_CASE("metric CSV layout") {
  std::mt19937_64 rng(23);
  const Point p = random_interior_point(2, rng);
  const BuresMetric g = full_metric(p);
  std::ostringstream out;
  io::write_metric_csv(out, g, 0.5);
  std::istringstream in(out.str());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "coordinate,theta_1,gamma_2_1,xi_2_1");
  CHECK(lines[1].rfind("theta_1,", 0) == 0);
  CHECK(lines[4] == "sqrt_det_g,0.5");
  // Values survive a parse at 17 digits.
  const std::string cell = lines[2].substr(lines[2].find(',') + 1, lines[2].find(',', lines[2].find(',') + 1) - lines[2].find(',') - 1);
  CHECK(std::stod(cell) == g.full()(1, 0));
}

TEST_CASE("cli metric and density") {
  TempDir tmp;
  const std::string point = tmp.write("p.json", R"({"n": 2, "thetas": [0.3], "gammas": {"2": [0.7]}, "xis": {"2": [1.1]}})");

  const Invocation m = run({"metric", "--point", point});
  REQUIRE(m.code == cli::kExitOk);
  const io::MetricRecord r = io::metric_from_json(io::Json::parse(m.out));
  const double lambda = std::pow(std::cos(0.6), 2) / 1.0;  // (cos^2 - sin^2)^2 / 1
  CHECK(r.g_d(0) == doctest::Approx(1.0));
  CHECK(r.g_c(0, 0) == doctest::Approx(lambda));
  CHECK(r.g_c(1, 1) == doctest::Approx(lambda * std::pow(std::sin(0.7) * std::cos(0.7), 2)));
  CHECK(r.sqrt_det_g == doctest::Approx(std::pow(std::cos(0.6), 2) * std::sin(0.7) * std::cos(0.7)));

  const Invocation csv = run({"metric", "--point", point, "--format", "csv"});
  CHECK(csv.code == cli::kExitOk);
  CHECK(csv.out.rfind("coordinate,theta_1,gamma_2_1,xi_2_1\n", 0) == 0);

  const std::string file = (tmp.path / "m.json").string();
  CHECK(run({"metric", "--point", point, "--output", file}).code == cli::kExitOk);
  CHECK(io::metric_from_json(io::Json::parse(std::ifstream(file))).g_c == r.g_c);

  const Invocation d = run({"density", "--point", point});
  REQUIRE(d.code == cli::kExitOk);
  const ComplexMatrix rho = density_from_output(d.out);
  CHECK(max_abs(rho - rho.adjoint()) == 0.0);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-15);
}

TEST_CASE("cli distance") {
  TempDir tmp;
  const std::string a = tmp.write("a.json", R"({"n": 2, "thetas": [0.3], "gammas": {"2": [0.7]}, "xis": {"2": [1.1]}})");
  const std::string d1 = tmp.write("d1.json", R"({"n": 2, "thetas": [0.3], "gammas": {"2": [0]}, "xis": {"2": [0]}})");
  const std::string d2 = tmp.write("d2.json", R"({"n": 2, "thetas": [1.0], "gammas": {"2": [0]}, "xis": {"2": [0]}})");

  const io::Json same = io::Json::parse(run({"distance", "--point", a, "--point-b", a}).out);
  CHECK(same.at("fidelity").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(same.at("bures_distance").get<double>() < 1e-5);

  const Invocation diag = run({"distance", "--point", d1, "--point-b", d2});
  REQUIRE(diag.code == cli::kExitOk);
  const double classical = std::cos(0.3) * std::cos(1.0) + std::sin(0.3) * std::sin(1.0);
  const io::Json j = io::Json::parse(diag.out);
  CHECK(std::abs(j.at("fidelity").get<double>() - classical * classical) < 1e-12);
  CHECK(j.at("bures_distance").get<double>() ==
        doctest::Approx(std::sqrt(2.0 - 2.0 * std::abs(classical))).epsilon(1e-10));

  const std::string three = tmp.write("t.json", R"({"n": 3, "thetas": [0.4, 0.5],
    "gammas": {"2": [0.1], "3": [0.2, 0.3]}, "xis": {"2": [0.4], "3": [0.5, 0.6]}})");
  CHECK(run({"distance", "--point", a, "--point-b", three}).code == cli::kExitInvalid);
}

TEST_CASE("cli check") {
  const Invocation ok = run({"check", "--n", "3", "--samples", "10", "--seed", "4"});
  CHECK(ok.code == cli::kExitOk);
  const io::Json j = io::Json::parse(ok.out);
  CHECK(j.at("status") == "PASS");
  CHECK(j.at("results").size() == 1);
  CHECK(run({"check", "--n", "3", "--samples", "10", "--seed", "4"}).out == ok.out);

  const Invocation sweep = run({"check", "--samples", "5"});
  CHECK(sweep.code == cli::kExitOk);
  CHECK(io::Json::parse(sweep.out).at("results").size() == 3);

  const Invocation strict = run({"check", "--n", "2", "--samples", "5", "--tolerance", "0"});
  CHECK(strict.code == cli::kExitCheckFailed);
  CHECK(io::Json::parse(strict.out).at("status") == "FAIL");
}

TEST_CASE("cli volume") {
  const Invocation v = run({"volume", "--n", "2", "--samples", "20000", "--seed", "1"});
  REQUIRE(v.code == cli::kExitOk);
  const io::Json j = io::Json::parse(v.out);
  CHECK(j.at("samples") == 20000);
  CHECK(j.at("label") == "bures volume");
  CHECK(j.at("value").get<double>() == mc_volume(2, 20000, 1).value);
  CHECK(run({"volume", "--n", "4", "--samples", "20000"}).code == cli::kExitInvalid);
}

TEST_CASE("cli invalid input") {
  TempDir tmp;
  const std::string bad = tmp.write("bad.json", R"({"n": 2, "thetas": [0.3, 0.4], "gammas": {"2": [0]}, "xis": {"2": [0]}})");
  const std::string boundary = tmp.write("edge.json", R"({"n": 2, "thetas": [0], "gammas": {"2": [0]}, "xis": {"2": [0]}})");
  const std::string garbage = tmp.write("garbage.json", "{not json");
  CHECK(run({"metric", "--point", bad}).code == cli::kExitInvalid);
  CHECK(run({"metric", "--point", boundary}).code == cli::kExitInvalid);
  CHECK(run({"metric", "--point", garbage}).code == cli::kExitInvalid);
  CHECK(run({"metric", "--point", (tmp.path / "missing.json").string()}).code == cli::kExitInvalid);
  CHECK(run({"metric"}).code == cli::kExitInvalid);
  CHECK(run({"bogus"}).code == cli::kExitInvalid);
  CHECK(run({"metric", "--point", bad, "--format", "xml"}).code == cli::kExitInvalid);
  // The boundary point is still a valid state.
  CHECK(run({"density", "--point", boundary}).code == cli::kExitOk);
}
