#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace casimir {

struct Mode {
  double omega;
  int multiplicity;
};

// Eigenfrequencies up to omega_max, strictly increasing.
struct Spectrum {
  std::vector<Mode> modes;
  double omega_max = 0.0;
  std::uint64_t graph_hash = 0;
  std::vector<std::string> warnings;

  std::size_t total_count() const {
    std::size_t n = 0;
    for (const auto& m : modes) n += static_cast<std::size_t>(m.multiplicity);
    return n;
  }
};

} // namespace casimir
