#pragma once

#include "casimir/graph_model.hpp"
#include "casimir/spectrum.hpp"

#include <iosfwd>
#include <vector>

namespace casimir {

// sum_j tan(omega a_j + phi_j), phi_j = theta_j / 2.
double secular_function(const StarGraph& g, double omega);

// Open interval between consecutive tangent poles (or 0 / omega_max) on
// which the secular function is finite and increasing.
struct SecularBracket {
  double lo;
  double hi;
  int pole_multiplicity; // poles coinciding at lo
};

std::vector<SecularBracket> secular_brackets(const StarGraph& g, double omega_max);

Spectrum find_spectrum(const StarGraph& g, double omega_max, unsigned threads = 1);

struct CountWindow {
  double lo;
  double hi;
  long expected;
  long found;
};

struct CountReport {
  double max_deviation = 0.0; // max |N(omega) - omega L / pi|
  std::vector<CountWindow> flagged;
  bool passed = true;
};

CountReport spectral_count_check(const Spectrum& s, const StarGraph& g);

// Columns omega,multiplicity with 15 significant digits.
void write_spectrum_csv(std::ostream& out, const Spectrum& s);

} // namespace casimir
