#pragma once

#include <complex>
#include <cstddef>

namespace casimir {

// Truncated series plus a tail model. |true - value()| <= abs_error_bound.
struct AcceleratedSum {
  double partial_sum = 0.0;
  double tail_estimate = 0.0;
  std::size_t terms_used = 0;
  double abs_error_bound = 0.0;

  double value() const { return partial_sum + tail_estimate; }
};

double riemann_zeta(double s);

// Li2(x) for |x| <= 1.
double dilogarithm(double x);
// Li2(z) for |z| <= 1.
std::complex<double> dilogarithm(std::complex<double> z);

// K_n(x), x > 0.
double bessel_k(int order, double x);
// dK_1/dx = -(K_0 + K_2)/2.
double bessel_k1_prime(double x);

struct LatticeSumOptions {
  // Explicit summation cutoffs; zero selects them from the target tolerance.
  std::size_t row_terms = 0;
  std::size_t rows = 0;
  double tolerance = 1e-12;
};

// Sum over j,k >= 1 of (a^2 j^2 + b^2 k^2)^(-3/2).
AcceleratedSum lattice_sum_3half(double a, double b, const LatticeSumOptions& opt = {});

namespace detail {
double bessel_i(int order, double x);
// The two K_0/K_1 evaluation routes, exposed for the overlap test.
void bessel_k01_series(double x, double& k0, double& k1);
void bessel_k01_continued_fraction(double x, double& k0, double& k1);
}

} // namespace casimir
