#include <doctest.h>

#include "casimir/errors.hpp"
#include "experiments.hpp"

#include "casimir/graph_spectrum.hpp"
#include "casimir/regularization.hpp"
#include "casimir/special_functions.hpp"

#include <algorithm>
#include <filesystem>
#include <numbers>
#include <fstream>
#include <sstream>

using namespace casimir;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const auto dir = fs::temp_directory_path() / "casimir_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_quiet(const ExperimentConfig& c, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = run(c, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

} // namespace

TEST_CASE("registered experiments") {
  const auto& names = registered_experiments();
  CHECK(names.size() == 12);
  CHECK(std::find(names.begin(), names.end(), "selftest") != names.end());
  ExperimentConfig c;
  c.experiment = "no-such-experiment";
  CHECK(run_quiet(c) == 2);
}

TEST_CASE("piston-1d summary") {
  ExperimentConfig c;
  c.experiment = "piston-1d";
  c.params = {{"bc", "DD"}, {"a", "1"}};
  std::string out;
  CHECK(run_quiet(c, &out) == 0);
  CHECK(out.find("force=-0.1308997") != std::string::npos);
  c.params = {{"bc", "DN"}, {"a", 1.0}};
  CHECK(run_quiet(c, &out) == 0);
  CHECK(out.find("force=0.0654498") != std::string::npos);
}

TEST_CASE("exit codes") {
  ExperimentConfig c;
  c.experiment = "graph-energy";
  c.params = {{"graph", "/nonexistent/graph.json"}};
  CHECK(run_quiet(c) == 2);

  c.experiment = "piston-1d";
  c.params = {{"bc", "DQ"}};
  CHECK(run_quiet(c) == 2);
  c.params = {{"a", -1.0}};
  CHECK(run_quiet(c) == 2);
  c.params = {{"a", "one"}};
  CHECK(run_quiet(c) == 2);

  // Grid starting below omega_max t = 12.
  c.params = {{"bc", "DD"}, {"t_grid", "0.001,0.02,0.04,0.06,0.08,0.1"}};
  CHECK(run_quiet(c) == 4);

  // Too few samples for the fit.
  c.params = {{"bc", "DD"}, {"t_grid", "0.02,0.04"}};
  CHECK(run_quiet(c) == 3);

  c.experiment = "graph-orbits";
  c.params = {{"pistons", "NNNNNN"}, {"lengths", "1,1,1,1,1,1"}, {"l_max", 40}, {"cap", 100}};
  CHECK(run_quiet(c) == 3);
}

TEST_CASE("outputs are atomic and thread-independent") {
  const auto dir = scratch_dir();
  const auto graph = dir / "graph.json";
  {
    std::ofstream g(graph);
    g << R"({"bonds": [{"length": 1.1, "piston": "neumann"}, {"length": 1.6176, "piston": "dirichlet"},
                      {"length": 1.2985, "piston": {"phase": 1.3}}]})";
  }
  for (const std::string exp : {"graph-energy", "graph-orbits"}) {
    ExperimentConfig c;
    c.experiment = exp;
    c.params = {{"graph", graph.string()}, {"omega_max", 400}, {"l_max", 9}};
    c.output = dir / (exp + "-1.out");
    c.threads = 1;
    REQUIRE(run_quiet(c) == 0);
    c.output = dir / (exp + "-3.out");
    c.threads = 3;
    REQUIRE(run_quiet(c) == 0);
    const auto one = slurp(dir / (exp + "-1.out"));
    CHECK(!one.empty());
    CHECK(one == slurp(dir / (exp + "-3.out")));
    CHECK_FALSE(fs::exists(dir / (exp + "-1.out.tmp")));
  }
  ExperimentConfig c;
  c.experiment = "rect-piston-force";
  c.params = {{"points", 9}};
  c.output = dir / "force-1.csv";
  REQUIRE(run_quiet(c) == 0);
  c.threads = 4;
  c.output = dir / "force-4.csv";
  REQUIRE(run_quiet(c) == 0);
  const auto csv = slurp(dir / "force-1.csv");
  CHECK(csv == slurp(dir / "force-4.csv"));
  CHECK(csv.rfind("# units:", 0) == 0);
}

TEST_CASE("config file with flag overrides") {
  const auto dir = scratch_dir();
  const auto cfg = dir / "config.json";
  {
    std::ofstream f(cfg);
    f << R"({"experiment": "piston-1d", "bc": "DN", "a": 2.0, "threads": 2, "output": "x.json"})";
  }
  auto c = load_config(cfg);
  CHECK(c.experiment == "piston-1d");
  CHECK(c.threads == 2);
  REQUIRE(c.output);
  CHECK(c.output->string() == "x.json");
  CHECK(c.params["bc"] == "DN");
  c.params["bc"] = "DD"; // flag wins
  c.output.reset();
  std::string out;
  CHECK(run_quiet(c, &out) == 0);
  CHECK(out.find("force=-0.0327249") != std::string::npos); // -pi/(24*4)

  {
    std::ofstream f(dir / "broken.json");
    f << "{ not json";
  }
  CHECK_THROWS_AS(load_config(dir / "broken.json"), ConfigError);
  CHECK_THROWS_AS(load_config(dir / "missing.json"), ConfigError);
}

TEST_CASE("integer ranges") {
  CHECK(parse_int_range("2..5") == std::vector<int>{2, 3, 4, 5});
  CHECK(parse_int_range("3,4,8") == std::vector<int>{3, 4, 8});
  CHECK(parse_int_range("7") == std::vector<int>{7});
  CHECK_THROWS_AS(parse_int_range("5..2"), ConfigError);
  CHECK_THROWS_AS(parse_int_range("a..b"), ConfigError);
}

TEST_CASE("star sweep rows") {
  // Equal Neumann star: F = (pi/48 a^2)(1 - 3/B) per piston.
  const auto row = star_sweep_row(4, 1.0, PistonCondition::neumann(), 800.0);
  CHECK(row.f_exact == doctest::Approx(std::numbers::pi / 48 * 0.25).epsilon(1e-4));
  CHECK(row.f_shortest == doctest::Approx(-dilogarithm(-0.5) / (4 * std::numbers::pi)).epsilon(1e-14));

  // The homogeneity shortcut agrees with a direct finite difference in one bond.
  const double a = 1.0, h = 0.01;
  auto e0 = [&](double a1) {
    std::vector<Bond> bonds(4, Bond{a, PistonCondition::neumann()});
    bonds[0].length = a1;
    const StarGraph g(bonds);
    const auto s = find_spectrum(g, 800.0);
    return fit_vacuum_energy(g, s, default_t_grid(800.0, a - 2 * h), 3).e0;
  };
  const double fd = -(e0(a - 2 * h) - 8 * e0(a - h) + 8 * e0(a + h) - e0(a + 2 * h)) / (12 * h);
  CHECK(fd == doctest::Approx(row.f_exact).epsilon(2e-3));
}

TEST_CASE("pistol-crossover json") {
  ExperimentConfig c;
  c.experiment = "pistol-crossover";
  std::string out;
  CHECK(run_quiet(c, &out) == 0);
  CHECK(out.find("\"alpha\": 0.5888") != std::string::npos);
}
