#pragma once

#include "casimir/graph_model.hpp"

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace casimir {

// Primitive periodic orbit: a Lyndon word over bond indices (its smallest
// rotation), bouncing once off the piston of each visited bond.
struct OrbitClass {
  std::vector<int> itinerary;
  double l_prim;
  std::complex<double> amplitude;
};

struct OrbitSumResult {
  double energy = 0.0;
  double l_max = 0.0;
  std::size_t orbit_count = 0; // periodic classes, repetitions included
  std::vector<std::pair<double, double>> per_length_partial; // (L, cumulative energy)
  std::optional<double> tail_bound;
};

struct OrbitTerm {
  double l_prim;
  int repetition;
  double length;
  std::complex<double> amplitude;
  double delta_e;
};

constexpr std::size_t kDefaultOrbitCap = 1'000'000;

// Expected number of primitive classes with l_prim <= l_max.
double orbit_class_estimate(const StarGraph& g, double l_max);

std::vector<OrbitClass> enumerate_orbits(const StarGraph& g, double l_max,
                                         std::size_t cap = kDefaultOrbitCap);
std::vector<OrbitClass> enumerate_orbits(const Interval1D& iv, double l_max);

// -l_prim Re(A^r) / (2 pi (r l_prim)^2)
double orbit_energy_term(double l_prim, std::complex<double> amplitude, int r);

// Every (class, repetition) with r l_prim <= l_max and r <= r_max, sorted by
// (length, itinerary).
std::vector<OrbitTerm> orbit_terms(const std::vector<OrbitClass>& classes, double l_max,
                                   std::optional<int> r_max = std::nullopt);

// Without r_max the sum is evaluated over closed words grouped by bond
// counts, which needs no enumeration. With r_max the classes are enumerated.
OrbitSumResult orbit_sum_energy(const StarGraph& g, double l_max, std::optional<int> r_max = std::nullopt,
                                unsigned threads = 1);
OrbitSumResult orbit_sum_energy_enumerated(const StarGraph& g, double l_max,
                                           std::optional<int> r_max = std::nullopt,
                                           std::size_t cap = kDefaultOrbitCap);
OrbitSumResult orbit_sum_energy(const Interval1D& iv, double l_max, std::optional<int> r_max = std::nullopt);

// -(1/4pi) sum_j Re Li2((2/B - 1) e^{i theta_j}) / a_j
double shortest_orbit_energy(const StarGraph& g);
// -d/da_j of the above.
double shortest_orbit_force(const StarGraph& g, std::size_t bond);

struct ConvergenceRow {
  double l_max;
  double energy;
  double abs_error;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;          // least-squares log|error| vs log l_max
  double envelope_slope = 0.0; // same with max |error| over [L, 1.25 L]
};

ConvergenceTable convergence_study(const StarGraph& g, double spectrum_e0, const std::vector<double>& l_max_grid,
                                   unsigned threads = 1);

void write_orbit_csv(std::ostream& out, const std::vector<OrbitTerm>& terms);
void write_convergence_csv(std::ostream& out, const ConvergenceTable& table);

} // namespace casimir
