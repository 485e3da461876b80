#pragma once

#include "casimir/spectrum.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace casimir {

enum class PistonKind { Dirichlet, Neumann, Phase };

// Reflection amplitude e^{i theta} at a piston. Dirichlet is theta = pi,
// Neumann theta = 0.
class PistonCondition {
public:
  static PistonCondition dirichlet() { return {PistonKind::Dirichlet, kPi}; }
  static PistonCondition neumann() { return {PistonKind::Neumann, 0.0}; }
  static PistonCondition phase(double theta);

  PistonKind kind() const { return kind_; }
  double theta() const { return theta_; }
  // phi = theta/2 enters the secular equation as tan(omega a + phi).
  double secular_phase() const { return 0.5 * theta_; }
  std::complex<double> reflection() const;
  bool is_dirichlet_or_neumann() const { return kind_ != PistonKind::Phase; }
  std::string label() const;

  bool operator==(const PistonCondition&) const = default;

private:
  static constexpr double kPi = 3.14159265358979323846;
  PistonCondition(PistonKind k, double theta) : kind_(k), theta_(theta) {}
  PistonKind kind_;
  double theta_;
};

// Accepts "D"/"N"/"dirichlet"/"neumann" (case-insensitive).
PistonCondition parse_piston(const std::string& s);

struct Bond {
  double length;
  PistonCondition piston;
};

// Star graph: B >= 2 bonds meeting at a Kirchhoff center, a piston at each
// outer end.
class StarGraph {
public:
  explicit StarGraph(std::vector<Bond> bonds);

  const std::vector<Bond>& bonds() const { return bonds_; }
  std::size_t size() const { return bonds_.size(); }
  double min_length() const;
  bool all_neumann() const;
  std::uint64_t hash() const;

  static StarGraph equal(std::size_t B, double a, PistonCondition p);

private:
  std::vector<Bond> bonds_;
};

struct Interval1D {
  Interval1D(double a, PistonCondition left, PistonCondition right);
  double a;
  PistonCondition left;
  PistonCondition right;

  bool mixed() const;
};

Spectrum interval_spectrum(const Interval1D& iv, double omega_max);
double interval_casimir_energy(const Interval1D& iv);
double interval_piston_force(const Interval1D& iv);
double weyl_length(const StarGraph& g);

} // namespace casimir
