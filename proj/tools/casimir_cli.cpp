#include "experiments.hpp"

#include "casimir/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

struct Flag {
  const char* name;
  const char* help;
};

// Parameter flags per experiment; values are passed through as strings and
// converted by the experiment.
const std::map<std::string, std::vector<Flag>>& experiment_flags() {
  static const std::vector<Flag> graph{{"graph", "star graph JSON file"},
                                       {"lengths", "comma-separated bond lengths"},
                                       {"pistons", "one letter per bond, e.g. DNNN"}};
  static const std::vector<Flag> window{{"w_lo", "minimum omega_max*t"},
                                        {"w_hi", "maximum t / shortest length"},
                                        {"t_grid", "explicit comma-separated t grid"},
                                        {"t_min", "smallest t"},
                                        {"t_max", "largest t"},
                                        {"t_points", "number of t samples"},
                                        {"degree", "fit polynomial degree"}};
  auto join = [](std::vector<Flag> a, const std::vector<Flag>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  static const std::map<std::string, std::vector<Flag>> flags{
      {"piston-1d",
       join({{"bc", "end conditions: DD, DN, ND or NN"},
             {"a", "interval length"},
             {"omega_max", "spectral cutoff"},
             {"l_max", "orbit length cutoff"}},
            window)},
      {"graph-energy",
       join(join(graph, {{"omega_max", "spectral cutoff"}, {"spectrum_csv", "also write the spectrum here"}}),
            window)},
      {"graph-orbits",
       join(graph, {{"l_max", "orbit length cutoff"},
                    {"r_max", "maximum repetition"},
                    {"cap", "maximum number of primitive classes"}})},
      {"orbit-convergence",
       join(graph, {{"omega_max", "spectral cutoff for the reference E0"},
                    {"l_min", "smallest L_max"},
                    {"l_max", "largest L_max"},
                    {"points", "grid points"}})},
      {"star-sweep",
       {{"bc", "piston condition: dirichlet or neumann"},
        {"B", "bond counts, e.g. 2..30 or 3,4,8"},
        {"a", "bond length"},
        {"omega_max", "spectral cutoff"}}},
      {"rect-energy", {{"a", "side a"}, {"b", "side b"}, {"bc", "dirichlet or neumann"}}},
      {"rect-numeric",
       join({{"a", "side a"}, {"b", "side b"}, {"bc", "dirichlet or neumann"}, {"omega_max", "spectral cutoff"}},
            window)},
      {"rect-piston-force",
       {{"a", "separations (comma-separated)"},
        {"b", "piston width"},
        {"a_min", "smallest separation"},
        {"a_max", "largest separation"},
        {"points", "grid points"}}},
      {"pistol-energy",
       {{"r", "gap width"}, {"s", "chamber length"}, {"u", "barrel width"}, {"ell", "barrel length"}}},
      {"pistol-force",
       {{"r", "gap widths (comma-separated)"},
        {"s", "chamber length"},
        {"u", "barrel width"},
        {"ell", "barrel length"},
        {"step", "finite-difference step in s"}}},
      {"pistol-crossover", {}},
      {"selftest", {}},
  };
  return flags;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir energies and forces for quantum graphs and rectangular billiards"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* app;
    std::string config;
    std::string output;
    unsigned threads = 1;
    std::map<std::string, std::string> values;
  };
  std::map<std::string, Sub> subs;

  for (const auto& name : casimir::registered_experiments()) {
    auto& s = subs[name];
    s.app = app.add_subcommand(name, "run the " + name + " experiment");
    s.app->add_option("--config", s.config, "JSON config; flags override its values");
    s.app->add_option("--output,-o", s.output, "output file (written atomically); stdout if omitted");
    s.app->add_option("--threads,-j", s.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    for (const auto& f : experiment_flags().at(name)) s.app->add_option(std::string("--") + f.name, s.values[f.name], f.help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (auto& [name, s] : subs) {
    if (!s.app->parsed()) continue;
    casimir::ExperimentConfig config;
    try {
      if (!s.config.empty()) {
        config = casimir::load_config(s.config);
        if (!config.experiment.empty() && config.experiment != name)
          throw casimir::ConfigError("config is for '" + config.experiment + "', not '" + name + "'");
      }
    } catch (const casimir::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return 2;
    }
    config.experiment = name;
    for (const auto& f : experiment_flags().at(name))
      if (s.app->count(std::string("--") + f.name) > 0) config.params[f.name] = s.values[f.name];
    if (s.app->count("--output") > 0) config.output = s.output;
    if (s.app->count("--threads") > 0) config.threads = s.threads;
    return casimir::run(config, std::cout, std::cerr);
  }
  return 2;
}
