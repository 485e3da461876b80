#include "casimir/regularization.hpp"
#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace casimir {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

} // namespace

double regularized_energy(const Spectrum& s, double t) {
  if (!(t > 0.0)) throw DomainError("regularized_energy: requires t > 0");
  CompensatedSum acc;
  for (const auto& m : s.modes) acc.add(m.multiplicity * m.omega * std::exp(-m.omega * t));
  return 0.5 * acc.value();
}

double incomplete_gamma_p(int n, double x) {
  if (n < 1) throw DomainError("incomplete_gamma_p: requires n >= 1");
  if (!(x >= 0.0)) throw DomainError("incomplete_gamma_p: requires x >= 0");
  if (x == 0.0) return 0.0;
  if (x < n + 5.0) {
    // e^{-x} sum_{k>=0} x^{n+k}/(n+k)!
    double term = std::exp(n * std::log(x) - x - std::lgamma(n + 1.0));
    double sum = term;
    for (int k = 1; k < 1000; ++k) {
      term *= x / (n + k);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return sum;
  }
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < n; ++k) {
    term *= x / k;
    sum += term;
  }
  return 1.0 - std::exp(-x) * sum;
}

double weyl_energy_1d(double total_length, double omega_max, double t) {
  if (!(total_length > 0.0) || !(omega_max > 0.0) || !(t > 0.0))
    throw DomainError("weyl_energy_1d: arguments must be positive");
  return total_length * incomplete_gamma_p(2, omega_max * t) / (2.0 * std::numbers::pi * t * t);
}

double weyl_energy_2d(double area, double perimeter, BoundaryKind kind, double omega_max, double t) {
  if (!(area > 0.0) || !(perimeter > 0.0) || !(omega_max > 0.0) || !(t > 0.0))
    throw DomainError("weyl_energy_2d: arguments must be positive");
  const double x = omega_max * t;
  const double pi = std::numbers::pi;
  const double bulk = area * incomplete_gamma_p(3, x) / (2.0 * pi * t * t * t);
  const double edge = perimeter * incomplete_gamma_p(2, x) / (8.0 * pi * t * t);
  return kind == BoundaryKind::Dirichlet ? bulk - edge : bulk + edge;
}

double corner_coefficient(const std::vector<double>& angles) {
  const double pi = std::numbers::pi;
  double c = 0.0;
  for (double a : angles) {
    if (!(a > 0.0) || !(a < 2.0 * pi)) throw DomainError("corner_coefficient: angle outside (0, 2pi)");
    c += pi / a - a / pi;
  }
  return c;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return g;
}

std::vector<double> default_t_grid(double omega_max, double min_length) {
  return linear_grid(30.0 / omega_max, min_length / 8.0, 12);
}

void check_window(const std::vector<double>& t_grid, double omega_max, double min_length,
                  const FitWindow& window) {
  for (double t : t_grid) {
    if (!(t > 0.0)) throw WindowViolation("fit grid contains non-positive t");
    if (omega_max * t < window.min_omega_t * (1.0 - 1e-12)) {
      std::ostringstream msg;
      msg << "t=" << t << " violates omega_max*t >= " << window.min_omega_t << " (omega_max=" << omega_max
          << ")";
      throw WindowViolation(msg.str());
    }
    if (t > window.max_t_over_length * min_length * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "t=" << t << " violates t <= " << window.max_t_over_length << " * " << min_length;
      throw WindowViolation(msg.str());
    }
  }
}

namespace {

struct PolyFit {
  std::vector<double> coef;
  double rms;
};

PolyFit least_squares(const std::vector<RegularizedSample>& samples, int degree) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  double scale = 0.0;
  for (const auto& s : samples) scale = std::max(scale, std::abs(s.t));
  Eigen::MatrixXd A(n, degree + 1);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = samples[i].t / scale;
    double p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      A(i, k) = p;
      p *= x;
    }
    y(i) = samples[i].e_finite;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-12);
  if (qr.rank() < degree + 1) throw RankDeficientFit("degenerate t grid for the requested degree");
  const Eigen::VectorXd c = qr.solve(y);
  const Eigen::VectorXd r = A * c - y;
  PolyFit out;
  out.rms = std::sqrt(r.squaredNorm() / static_cast<double>(n));
  double p = 1.0;
  for (int k = 0; k <= degree; ++k) {
    out.coef.push_back(c(k) / p);
    p *= scale;
  }
  return out;
}

} // namespace

EnergyFit fit_samples(std::vector<RegularizedSample> samples, int degree, double omega_max) {
  if (degree < 1) throw DomainError("fit degree must be >= 1");
  if (samples.size() < static_cast<std::size_t>(degree) + 2)
    throw RankDeficientFit("need at least degree+2 samples");
  std::set<double> distinct;
  for (const auto& s : samples) distinct.insert(s.t);
  if (distinct.size() < static_cast<std::size_t>(degree) + 2)
    throw RankDeficientFit("need at least degree+2 distinct t values");
  for (const auto& s : samples)
    if (!std::isfinite(s.e_finite)) throw NumericError("non-finite regularized sample");

  const PolyFit main = least_squares(samples, degree);
  const PolyFit next = least_squares(samples, degree + 1);

  EnergyFit fit;
  fit.samples = std::move(samples);
  fit.degree = degree;
  fit.e0 = main.coef[0];
  fit.alpha.assign(main.coef.begin() + 1, main.coef.end());
  fit.residual_rms = main.rms;
  fit.stability = std::abs(next.coef[0] - main.coef[0]);
  fit.uncertainty = std::max(fit.residual_rms, fit.stability);
  fit.omega_max = omega_max;
  return fit;
}

std::vector<RegularizedSample> sample_energies_1d(const Spectrum& s, double total_length,
                                                  const std::vector<double>& t_grid, unsigned threads) {
  std::vector<RegularizedSample> out(t_grid.size());
  parallel_for(t_grid.size(), threads, [&](std::size_t i) {
    const double t = t_grid[i];
    const double num = regularized_energy(s, t);
    const double weyl = weyl_energy_1d(total_length, s.omega_max, t);
    out[i] = {t, num, weyl, num - weyl};
  });
  return out;
}

EnergyFit fit_vacuum_energy(const StarGraph& g, const Spectrum& s, const std::vector<double>& t_grid,
                            int degree, const FitWindow& window, unsigned threads) {
  check_window(t_grid, s.omega_max, g.min_length(), window);
  return fit_samples(sample_energies_1d(s, weyl_length(g), t_grid, threads), degree, s.omega_max);
}

EnergyFit fit_vacuum_energy(const Interval1D& iv, const Spectrum& s, const std::vector<double>& t_grid,
                            int degree, const FitWindow& window, unsigned threads) {
  check_window(t_grid, s.omega_max, iv.a, window);
  return fit_samples(sample_energies_1d(s, iv.a, t_grid, threads), degree, s.omega_max);
}

} // namespace casimir
