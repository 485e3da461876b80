#include "casimir/special_functions.hpp"
#include "casimir/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace casimir {

namespace {

constexpr std::array<double, 10> kBernoulli2k = {
    1.0 / 6.0,      -1.0 / 30.0,     1.0 / 42.0,     -1.0 / 30.0,        5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,      -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0};

// c_n = B_n/(n+1)! for the series Li2(z) = sum_n c_n u^(n+1), u = -log(1-z).
struct DilogCoefficients {
  static constexpr int kCount = 32;
  std::array<double, kCount> even{}; // even[k] = c_{2k}

  DilogCoefficients() {
    const double two_pi = 2.0 * std::numbers::pi;
    even[0] = 1.0;
    for (int k = 1; k < kCount; ++k) {
      const double sign = (k % 2 == 1) ? 1.0 : -1.0;
      even[k] = sign * 2.0 * riemann_zeta(2.0 * k) /
                ((2.0 * k + 1.0) * std::pow(two_pi, 2.0 * k));
    }
  }
};

const DilogCoefficients& dilog_coefficients() {
  static const DilogCoefficients c;
  return c;
}

template <class T>
T dilog_bernoulli_series(T u) {
  const auto& c = dilog_coefficients();
  const T u2 = u * u;
  T sum = u - 0.25 * u2;
  T power = u;
  for (int k = 1; k < DilogCoefficients::kCount; ++k) {
    power *= u2;
    const T term = c.even[k] * power;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

} // namespace

double riemann_zeta(double s) {
  if (!(s > 1.0)) throw DomainError("riemann_zeta: requires s > 1");
  const int n_direct = 12;
  double sum = 0.0;
  for (int n = n_direct - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
  const double N = n_direct;
  const double N_s = std::pow(N, -s);
  sum += N * N_s / (s - 1.0) + 0.5 * N_s;

  // Euler-Maclaurin corrections: B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)
  double rising = s;
  double factorial = 2.0;
  double power = N_s / N;
  for (std::size_t k = 1; k <= kBernoulli2k.size(); ++k) {
    const double term = kBernoulli2k[k - 1] / factorial * rising * power;
    sum += term;
    if (std::abs(term) < 1e-17 * sum) break;
    rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
    factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    power /= N * N;
  }
  return sum;
}

double dilogarithm(double x) {
  if (!(std::abs(x) <= 1.0)) throw DomainError("dilogarithm: requires |x| <= 1");
  constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
  if (x == 1.0) return pi2_6;
  if (x == 0.0) return 0.0;
  if (x > 0.5) {
    // Li2(x) = pi^2/6 - ln(x) ln(1-x) - Li2(1-x)
    return pi2_6 - std::log(x) * std::log1p(-x) - dilog_bernoulli_series(-std::log(x));
  }
  return dilog_bernoulli_series(-std::log1p(-x));
}

std::complex<double> dilogarithm(std::complex<double> z) {
  if (!(std::abs(z) <= 1.0 + 1e-15)) throw DomainError("dilogarithm: requires |z| <= 1");
  constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
  if (z == std::complex<double>(1.0, 0.0)) return pi2_6;
  if (z == std::complex<double>(0.0, 0.0)) return 0.0;
  if (z.imag() == 0.0) return dilogarithm(std::clamp(z.real(), -1.0, 1.0));
  if (z.real() > 0.5) {
    const std::complex<double> w = 1.0 - z;
    return pi2_6 - std::log(z) * std::log(w) - dilog_bernoulli_series(-std::log(z));
  }
  return dilog_bernoulli_series(-std::log(1.0 - z));
}

} // namespace casimir
