#pragma once

#include "casimir/regularization.hpp"
#include "casimir/special_functions.hpp"
#include "casimir/spectrum.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace casimir {

struct RectangleGeometry {
  RectangleGeometry(double a, double b, BoundaryKind condition);
  double a;
  double b;
  BoundaryKind condition;
};

// Finite part of the cylinder-kernel energy of a rectangle:
// -zeta(3)/16pi (a/b^2 + b/a^2) - (ab/8pi) S(a,b) + pi/48 (1/a + 1/b) for
// Dirichlet, with -pi/48 for Neumann.
double rectangle_energy_finite(const RectangleGeometry& g);

// Modes pi sqrt(j^2/a^2 + k^2/b^2) <= omega_max; j,k >= 1 (Dirichlet) or
// >= 0 (Neumann, zero mode included).
Spectrum rectangle_spectrum(const RectangleGeometry& g, double omega_max);

// Window for billiards: t <= min(a,b)/2.
FitWindow rectangle_fit_window();

// 12 points over [25/omega_max, min(a,b)/3].
std::vector<double> rectangle_t_grid(const RectangleGeometry& g, double omega_max);

constexpr int kRectangleFitDegree = 4;

std::vector<RegularizedSample> sample_energies_2d(const RectangleGeometry& g, const Spectrum& s,
                                                  const std::vector<double>& t_grid, unsigned threads = 1);

EnergyFit rectangle_numeric_E0(const RectangleGeometry& g, double omega_max, unsigned threads = 1);
EnergyFit rectangle_numeric_E0(const RectangleGeometry& g, double omega_max, const std::vector<double>& t_grid,
                               int degree, const FitWindow& window, unsigned threads = 1);

struct PistonGeometry2D {
  PistonGeometry2D(double a, double b, double L);
  double a;
  double b;
  double L;
};

// (pi/b^2) sum_{j,k>=1} k^2 K1'(2 pi j k a/b)
AcceleratedSum piston_force_2d_sum(double a, double b);
double piston_force_2d(const PistonGeometry2D& g);

// Dirichlet chamber [0,a]x[0,b] plus the parallel-plate energy of the outer
// chamber of length L-a.
double piston_composite_energy(const PistonGeometry2D& g);

// Scaled pistol variables: c = r t, a = s t, b = u t, d = (ell - s) t.
struct PistolGeometry {
  PistolGeometry(double r, double s, double u, double ell);
  double r;
  double s;
  double u;
  double ell;
};

struct PistolTerms {
  double barrel_k;    // (us/pi) sum_k (1-2k^2u^2)/(1+4k^2u^2)^{5/2}
  double barrel_j;    // (us/pi) sum_j (1-2j^2s^2)/(1+4j^2s^2)^{5/2}
  double barrel_jk;   // (2us/pi) sum_{j,k} ...
  double chamber;     // (s/2pi) sum_j (-1+4j^2s^2)/(1+4j^2s^2)^2
  double gaps;        // (2r(ell-s)/pi) sum_k (1-2k^2r^2)/(1+4k^2r^2)^{5/2}
  double abs_error_bound;

  double total() const { return barrel_k + barrel_j + barrel_jk + chamber + gaps; }
};

PistolTerms pistol_energy_terms(const PistolGeometry& g);
// Coefficient of 1/t.
double pistol_energy(const PistolGeometry& g);

// G(r) = sum_{k>=1} (1-2k^2r^2)/(1+4k^2r^2)^{5/2}
double pistol_gap_function(double r);
// dG/dr, summed term by term.
double pistol_gap_function_derivative(double r);
// Root of G on (0.1, 1).
double pistol_gap_crossover();

// -dE/ds at fixed (r, u, ell), coefficient of 1/t^2. Five-point stencil with
// step h, checked against step 2h.
double pistol_force(const PistolGeometry& g, double step = 0.05);

// "narrow" when s^3 < u r^2, "long" otherwise. Reporting only.
std::string pistol_regime(const PistolGeometry& g);

void write_force_csv(std::ostream& out, const std::vector<std::array<double, 3>>& rows);

} // namespace casimir
