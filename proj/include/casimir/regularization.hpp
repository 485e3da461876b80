#pragma once

#include "casimir/graph_model.hpp"
#include "casimir/spectrum.hpp"

#include <vector>

namespace casimir {

struct RegularizedSample {
  double t;
  double e_num;
  double e_weyl;
  double e_finite;
};

// Samples must satisfy omega_max * t >= min_omega_t and
// t <= max_t_over_length * (shortest length scale).
struct FitWindow {
  double min_omega_t = 12.0;
  double max_t_over_length = 0.125;
};

struct EnergyFit {
  std::vector<RegularizedSample> samples;
  int degree = 0;
  double e0 = 0.0;
  std::vector<double> alpha; // alpha[k-1] multiplies t^k
  double residual_rms = 0.0;
  double stability = 0.0;   // |E0(degree+1) - E0(degree)|
  double uncertainty = 0.0; // max(residual_rms, stability)
  double omega_max = 0.0;
};

enum class BoundaryKind { Dirichlet, Neumann };

// 1/2 sum mult * omega * exp(-omega t), ascending, compensated.
double regularized_energy(const Spectrum& s, double t);

// L [1 - (omega_max t + 1) exp(-omega_max t)] / (2 pi t^2)
double weyl_energy_1d(double total_length, double omega_max, double t);

// 1/2 int_0^omega_max omega exp(-omega t) rho(omega), with
// rho = area omega / 2pi - perimeter/4pi (Dirichlet) or + perimeter/4pi (Neumann).
double weyl_energy_2d(double area, double perimeter, BoundaryKind kind, double omega_max, double t);

// sum_i (pi/alpha_i - alpha_i/pi)
double corner_coefficient(const std::vector<double>& angles);

// Regularized lower incomplete gamma P(n, x) for integer n >= 1.
double incomplete_gamma_p(int n, double x);

std::vector<double> linear_grid(double lo, double hi, std::size_t n);

// 12 points over [30/omega_max, min_length/8].
std::vector<double> default_t_grid(double omega_max, double min_length);

void check_window(const std::vector<double>& t_grid, double omega_max, double min_length,
                  const FitWindow& window);

// Least-squares polynomial fit of e_finite in t; no window check.
EnergyFit fit_samples(std::vector<RegularizedSample> samples, int degree, double omega_max);

std::vector<RegularizedSample> sample_energies_1d(const Spectrum& s, double total_length,
                                                  const std::vector<double>& t_grid,
                                                  unsigned threads = 1);

EnergyFit fit_vacuum_energy(const StarGraph& g, const Spectrum& s, const std::vector<double>& t_grid,
                            int degree, const FitWindow& window = {}, unsigned threads = 1);
EnergyFit fit_vacuum_energy(const Interval1D& iv, const Spectrum& s, const std::vector<double>& t_grid,
                            int degree, const FitWindow& window = {}, unsigned threads = 1);

} // namespace casimir
