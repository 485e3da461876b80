#pragma once

#include "casimir/graph_model.hpp"

#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace casimir {

struct ExperimentConfig {
  std::string experiment;
  nlohmann::json params = nlohmann::json::object(); // experiment parameters, flags already merged
  std::optional<std::filesystem::path> output;
  unsigned threads = 1;
};

// Summary line plus the document that goes to the output file (or stdout).
struct ExperimentResult {
  std::string summary;
  std::string document;
  bool passed = true; // selftest only
};

const std::vector<std::string>& registered_experiments();

// Throws ConfigError, WindowViolation or NumericError.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Runs, writes outputs atomically and maps errors to exit codes 0/2/3/4.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

// Reads a JSON config file; its "experiment", "output" and "threads" keys
// fill the config, everything else becomes a parameter. Flags merged later win.
ExperimentConfig load_config(const std::filesystem::path& path);

// "2..30" or "3,4,8" or "5".
std::vector<int> parse_int_range(const std::string& s);

// Star graph with the given lengths and a piston string such as "DNNN".
StarGraph star_from_string(const std::vector<double>& lengths, const std::string& pistons);

// Fig. 2 caption lengths.
const std::vector<double>& caption_lengths();

struct StarSweepRow {
  int B;
  double f_exact;
  double f_shortest;
};

// Force on one piston of an equal-length star. F_exact comes from the spectral
// energy through E(lambda a) = E(a)/lambda: at equal lengths each piston
// carries -dE/da / B = E0/(B a).
StarSweepRow star_sweep_row(int B, double a, PistonCondition p, double omega_max, unsigned threads = 1);

// log-log grid of n points over [lo, hi].
std::vector<double> geometric_grid(double lo, double hi, std::size_t n);

} // namespace casimir
