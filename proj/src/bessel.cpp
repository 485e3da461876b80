#include "casimir/special_functions.hpp"
#include "casimir/errors.hpp"

#include <cmath>
#include <numbers>

namespace casimir {

namespace {

constexpr double kEuler = 0.57721566490153286061;
constexpr double kSeriesLimit = 2.0;

} // namespace

namespace detail {

double bessel_i(int order, double x) {
  if (order < 0) throw DomainError("bessel_i: negative order");
  if (x < 0.0) throw DomainError("bessel_i: requires x >= 0");
  const double q = 0.25 * x * x;
  double term = std::pow(0.5 * x, order) / std::tgamma(order + 1.0);
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * static_cast<double>(k + order));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// Ascending series, e.g. A&S 9.6.11 with n = 0, 1.
void bessel_k01_series(double x, double& k0, double& k1) {
  const double q = 0.25 * x * x;
  const double log_half = std::log(0.5 * x);
  double i0 = 0.0, i1 = 0.0, s0 = 0.0, s1 = 0.0;
  double t0 = 1.0;       // q^k/(k!)^2
  double t1 = 0.5 * x;   // (x/2) q^k/(k!(k+1)!)
  double harmonic = 0.0; // H_k
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      t0 *= q / (static_cast<double>(k) * k);
      t1 *= q / (static_cast<double>(k) * (k + 1));
      harmonic += 1.0 / k;
    }
    const double psi1 = -kEuler + harmonic;           // psi(k+1)
    const double psi2 = psi1 + 1.0 / (k + 1.0);        // psi(k+2)
    i0 += t0;
    i1 += t1;
    s0 += psi1 * t0;
    s1 += (psi1 + psi2) * t1;
    if (t0 < 1e-18 * i0 && t1 < 1e-18 * i1) break;
  }
  k0 = -log_half * i0 + s0;
  k1 = 1.0 / x + log_half * i1 - 0.5 * s1;
}

// Steed's continued fraction CF2 (Temme's form), valid for x >~ 2.
void bessel_k01_continued_fraction(double x, double& k0, double& k1) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  int i = 2;
  for (; i <= 100000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 1e-17) break;
  }
  if (i > 100000) throw NumericError("bessel_k: continued fraction failed to converge");
  h *= a1;
  k0 = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
  k1 = k0 * (x + 0.5 - h) / x;
}

} // namespace detail

namespace {

void bessel_k01(double x, double& k0, double& k1) {
  if (x <= kSeriesLimit)
    detail::bessel_k01_series(x, k0, k1);
  else
    detail::bessel_k01_continued_fraction(x, k0, k1);
}

} // namespace

double bessel_k(int order, double x) {
  if (order < 0) throw DomainError("bessel_k: negative order");
  if (!(x > 0.0)) throw DomainError("bessel_k: requires x > 0");
  double k0, k1;
  bessel_k01(x, k0, k1);
  if (order == 0) return k0;
  // Upward recurrence is stable for K.
  double prev = k0, cur = k1;
  for (int n = 1; n < order; ++n) {
    const double next = prev + (2.0 * n / x) * cur;
    prev = cur;
    cur = next;
  }
  return cur;
}

double bessel_k1_prime(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k1_prime: requires x > 0");
  double k0, k1;
  bessel_k01(x, k0, k1);
  // K_2 = K_0 + (2/x) K_1
  return -k0 - k1 / x;
}

} // namespace casimir
