#include "casimir/billiards.hpp"
#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

namespace casimir {

RectangleGeometry::RectangleGeometry(double a_, double b_, BoundaryKind c) : a(a_), b(b_), condition(c) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("rectangle sides must be positive");
}

double rectangle_energy_finite(const RectangleGeometry& g) {
  const double pi = std::numbers::pi;
  const double a = g.a, b = g.b;
  const double edge = pi / 48.0 * (1.0 / a + 1.0 / b);
  return -riemann_zeta(3.0) / (16.0 * pi) * (a / (b * b) + b / (a * a)) -
         a * b / (8.0 * pi) * lattice_sum_3half(a, b).value() +
         (g.condition == BoundaryKind::Dirichlet ? edge : -edge);
}

Spectrum rectangle_spectrum(const RectangleGeometry& g, double omega_max) {
  if (!(omega_max > 0.0)) throw DomainError("omega_max must be positive");
  const double pi = std::numbers::pi;
  const long first = g.condition == BoundaryKind::Dirichlet ? 1 : 0;
  const double lim = omega_max / pi;
  std::vector<double> w;
  for (long j = first; j / g.a <= lim; ++j) {
    const double x = j / g.a;
    for (long k = first;; ++k) {
      const double y = k / g.b;
      const double omega = pi * std::sqrt(x * x + y * y);
      if (omega > omega_max) break;
      w.push_back(omega);
    }
  }
  std::sort(w.begin(), w.end());
  Spectrum s;
  s.omega_max = omega_max;
  for (double o : w) {
    if (!s.modes.empty() && o - s.modes.back().omega <= 4e-16 * o)
      ++s.modes.back().multiplicity;
    else
      s.modes.push_back({o, 1});
  }
  return s;
}

FitWindow rectangle_fit_window() {
  FitWindow w;
  w.max_t_over_length = 0.5;
  return w;
}

std::vector<double> rectangle_t_grid(const RectangleGeometry& g, double omega_max) {
  return linear_grid(25.0 / omega_max, std::min(g.a, g.b) / 3.0, 12);
}

std::vector<RegularizedSample> sample_energies_2d(const RectangleGeometry& g, const Spectrum& s,
                                                  const std::vector<double>& t_grid, unsigned threads) {
  std::vector<RegularizedSample> out(t_grid.size());
  parallel_for(t_grid.size(), threads, [&](std::size_t i) {
    const double t = t_grid[i];
    const double num = regularized_energy(s, t);
    const double weyl = weyl_energy_2d(g.a * g.b, 2.0 * (g.a + g.b), g.condition, s.omega_max, t);
    out[i] = {t, num, weyl, num - weyl};
  });
  return out;
}

EnergyFit rectangle_numeric_E0(const RectangleGeometry& g, double omega_max, const std::vector<double>& t_grid,
                               int degree, const FitWindow& window, unsigned threads) {
  check_window(t_grid, omega_max, std::min(g.a, g.b), window);
  const Spectrum s = rectangle_spectrum(g, omega_max);
  return fit_samples(sample_energies_2d(g, s, t_grid, threads), degree, omega_max);
}

EnergyFit rectangle_numeric_E0(const RectangleGeometry& g, double omega_max, unsigned threads) {
  return rectangle_numeric_E0(g, omega_max, rectangle_t_grid(g, omega_max), kRectangleFitDegree,
                              rectangle_fit_window(), threads);
}

// ****************************************************************************

PistonGeometry2D::PistonGeometry2D(double a_, double b_, double L_) : a(a_), b(b_), L(L_) {
  if (!(a > 0.0) || !(b > 0.0) || !(L > a) || !std::isfinite(L))
    throw DomainError("piston geometry needs L > a > 0 and b > 0");
}

namespace {

// |K1'(x)| = K0 + K1/x <= (1 + 1/x) K1(x), with the two-term asymptotic
// form as an upper bound on K1.
double k1_prime_majorant(double x) {
  return (1.0 + 1.0 / x) * std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) * (1.0 + 0.375 / x);
}

} // namespace

AcceleratedSum piston_force_2d_sum(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("piston_force_2d: requires a, b > 0");
  const double x1 = 2.0 * std::numbers::pi * a / b;
  // Terms beyond kCut are below e^-40 of the leading one; the majorant bounds them.
  const double kCut = std::max(60.0, x1 + 40.0);
  const double scale = std::numbers::pi / (b * b);

  AcceleratedSum out;
  double bound = 0.0;
  for (long j = 1;; ++j) {
    const double xj = x1 * j;
    if (xj > kCut) {
      // Whole rows dropped: k^2 majorant summed until negligible, then rows until negligible.
      double rows = 0.0;
      for (long jj = j;; ++jj) {
        double row = 0.0;
        for (long k = 1;; ++k) {
          const double m = static_cast<double>(k) * k * k1_prime_majorant(x1 * jj * k);
          row += m;
          if (m <= 1e-20 * row) break;
        }
        rows += row;
        if (row <= 1e-20 * rows) break;
      }
      bound += scale * rows;
      break;
    }
    long k = 1;
    for (;; ++k) {
      const double x = xj * k;
      if (x > kCut) break;
      out.partial_sum += scale * static_cast<double>(k) * k * bessel_k1_prime(x);
      ++out.terms_used;
    }
    double tail = 0.0;
    for (long kk = k;; ++kk) {
      const double m = static_cast<double>(kk) * kk * k1_prime_majorant(xj * kk);
      tail += m;
      if (m <= 1e-20 * tail) break;
    }
    bound += scale * tail;
  }
  out.abs_error_bound = bound + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(out.partial_sum);
  return out;
}

double piston_force_2d(const PistonGeometry2D& g) { return piston_force_2d_sum(g.a, g.b).value(); }

double piston_composite_energy(const PistonGeometry2D& g) {
  const double outer = -riemann_zeta(3.0) * (g.L - g.a) / (16.0 * std::numbers::pi * g.b * g.b);
  return rectangle_energy_finite(RectangleGeometry(g.a, g.b, BoundaryKind::Dirichlet)) + outer;
}

void write_force_csv(std::ostream& out, const std::vector<std::array<double, 3>>& rows) {
  out << "# units: a,b in length; F in hbar*c/length^2\n";
  out << "a,b,F\n";
  out << std::setprecision(15);
  for (const auto& r : rows) out << r[0] << ',' << r[1] << ',' << r[2] << '\n';
}

} // namespace casimir
