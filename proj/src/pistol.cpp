#include "casimir/billiards.hpp"
#include "casimir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace casimir {

namespace {

// (c - p k^2) / (d + q k^2)^alpha with alpha in {2, 5/2}.
struct RationalTerm {
  double c, p, d, q;
  bool five_halves;

  double value(double k) const {
    const double D = d + q * k * k;
    return (c - p * k * k) / (five_halves ? D * D * std::sqrt(D) : D * D);
  }
  double derivative(double k) const {
    const double D = d + q * k * k;
    const double N = c - p * k * k;
    const double alpha = five_halves ? 2.5 : 2.0;
    const double Dpow = five_halves ? D * D * std::sqrt(D) : D * D;
    return (-2.0 * p * k - alpha * 2.0 * q * k * N / D) / Dpow;
  }
  // int_K^inf, through y = k sqrt(q/d) and psi = atan(1/Y).
  double tail_integral(double K) const {
    const double Y = K * std::sqrt(q / d);
    const double psi = std::atan2(1.0, Y);
    const double cs = std::cos(psi);
    const double one_minus_cos = 2.0 * std::pow(std::sin(0.5 * psi), 2);
    const double jac = std::sqrt(d / q);
    const double ratio = p * d / q;
    if (five_halves) {
      const double A = one_minus_cos * one_minus_cos * (2.0 + cs) / 3.0;   // int (1+y^2)^{-5/2}
      const double Q = one_minus_cos * (1.0 + cs + cs * cs) / 3.0;         // int y^2 (1+y^2)^{-5/2}
      return jac / (d * d * std::sqrt(d)) * (c * A - ratio * Q);
    }
    const double sc = std::sin(psi) * cs;
    const double I1 = 0.5 * (psi - sc); // int (1+y^2)^{-2}
    const double I2 = 0.5 * (psi + sc); // int y^2 (1+y^2)^{-2}
    return jac / (d * d) * (c * I1 - ratio * I2);
  }
  // Length scale in k over which the term varies.
  double scale() const { return std::sqrt(d / q); }
};

// sum_{k >= 1}: direct up to K-1, then int_K + f(K)/2 - f'(K)/12. The
// remainder is bounded by 2 zeta(4)/(2 pi)^4 |f''(K)|-type terms, estimated
// from third differences; K doubles until that is below tol.
AcceleratedSum sum_rational(const RationalTerm& f, double tol) {
  std::size_t K = 64 + static_cast<std::size_t>(std::ceil(4.0 * f.scale()));
  AcceleratedSum out;
  for (int attempt = 0; attempt < 40; ++attempt) {
    double partial = 0.0;
    for (std::size_t k = K - 1; k >= 1; --k) partial += f.value(static_cast<double>(k));
    const double Kd = static_cast<double>(K);
    const double tail = f.tail_integral(Kd) + 0.5 * f.value(Kd) - f.derivative(Kd) / 12.0;
    const double third = std::abs(f.value(Kd + 2.0) - 3.0 * f.value(Kd + 1.0) + 3.0 * f.value(Kd) -
                                  f.value(Kd - 1.0));
    const double bound = 2e-3 * third + 1e-16 * std::abs(partial + tail) * std::sqrt(Kd);
    out = {partial, tail, K - 1, bound};
    if (bound <= tol) break;
    K *= 2;
  }
  return out;
}

constexpr double kTol = 1e-13;

struct BesselExcess {
  double value;
  double bound;
};

// sum_{k>=1} h(k) - [int_0^inf h - h(0)/2] for h(k) = (c - 2u^2k^2)/(d + 4u^2k^2)^{5/2},
// (c = (3 - d)/2 here) through Poisson summation: sum_{m>=1} (x/2ud) [x K2(x)/d - K1(x)], x = pi m sqrt(d)/u.
BesselExcess excess_poisson(double d, double u) {
  const double x1 = std::numbers::pi * std::sqrt(d) / u;
  double sum = 0.0;
  for (long m = 1;; ++m) {
    const double x = x1 * m;
    if (x > 60.0) break;
    const double k1 = bessel_k(1, x);
    const double k2 = bessel_k(2, x);
    sum += x / (2.0 * u * d) * (x * k2 / d - k1);
  }
  return {sum, 1e-15 * std::abs(sum) + 1e-24};
}


PistolTerms pistol_terms_unchecked(double r, double s, double u, double ell) {
  const double pi = std::numbers::pi;
  PistolTerms t{};
  double bound = 0.0;

  const auto fu = sum_rational({1.0, 2.0 * u * u, 1.0, 4.0 * u * u, true}, kTol);
  const auto fs = sum_rational({1.0, 2.0 * s * s, 1.0, 4.0 * s * s, true}, kTol);
  const auto gs = sum_rational({-1.0, -4.0 * s * s, 1.0, 4.0 * s * s, false}, kTol);
  const auto fr = sum_rational({1.0, 2.0 * r * r, 1.0, 4.0 * r * r, true}, kTol);

  t.barrel_k = u * s / pi * fu.value();
  t.barrel_j = u * s / pi * fs.value();
  t.chamber = s / (2.0 * pi) * gs.value();
  t.gaps = 2.0 * r * (ell - s) / pi * fr.value();
  bound += u * s / pi * (fu.abs_error_bound + fs.abs_error_bound) + s / (2.0 * pi) * gs.abs_error_bound +
           2.0 * r * (ell - s) / pi * fr.abs_error_bound;

  // Rows of the double sum: sum_k h_j(k) = cont_j - h_j(0)/2 + excess_j, and
  // sum_j (cont_j - h_j(0)/2) = -gs/(4u) - fs/2.
  double excess = 0.0;
  double excess_bound = 0.0;
  for (long j = 1;; ++j) {
    const double js = j * s;
    const double c = 1.0 - 2.0 * js * js;
    const double d = 1.0 + 4.0 * js * js;
    const double x1 = pi * std::sqrt(d) / u;
    if (x1 > 60.0) {
      // Remaining rows: |excess_j| <~ (x/2ud)(x/d + 1) K2(x) majorant, geometric in j.
      const double m = x1 / (2.0 * u * d) * (x1 / d + 1.0) * bessel_k(2, x1);
      excess_bound += 2.0 * m / (1.0 - std::exp(-pi * 2.0 * s / u));
      break;
    }
    if (x1 >= 1.0) {
      const auto e = excess_poisson(d, u);
      excess += e.value;
      excess_bound += e.bound;
    } else {
      const RationalTerm h{c, 2.0 * u * u, d, 4.0 * u * u, true};
      const auto row = sum_rational(h, kTol * 1e-3);
      const double cont = (1.0 - 4.0 * js * js) / (4.0 * u * d * d);
      excess += row.value() - cont + 0.5 * h.value(0.0);
      excess_bound += row.abs_error_bound;
    }
  }
  t.barrel_jk = 2.0 * u * s / pi * (-gs.value() / (4.0 * u) - 0.5 * fs.value() + excess);
  bound += 2.0 * u * s / pi * (gs.abs_error_bound / (4.0 * u) + 0.5 * fs.abs_error_bound + excess_bound);
  t.abs_error_bound = bound;
  return t;
}

void check_pistol(double r, double s, double u, double ell) {
  if (!(r > 0.0) || !(s >= 10.0) || !(u >= 10.0) || !(ell >= 10.0) || !(ell > s) || !std::isfinite(ell) ||
      !std::isfinite(u))
    throw DomainError("pistol geometry needs r > 0, s,u,ell >= 10 and ell > s");
}

} // namespace

PistolGeometry::PistolGeometry(double r_, double s_, double u_, double ell_) : r(r_), s(s_), u(u_), ell(ell_) {
  check_pistol(r, s, u, ell);
}

PistolTerms pistol_energy_terms(const PistolGeometry& g) { return pistol_terms_unchecked(g.r, g.s, g.u, g.ell); }

double pistol_energy(const PistolGeometry& g) { return pistol_energy_terms(g).total(); }

double pistol_gap_function(double r) {
  if (!(r > 0.0)) throw DomainError("pistol_gap_function: requires r > 0");
  return sum_rational({1.0, 2.0 * r * r, 1.0, 4.0 * r * r, true}, kTol).value();
}

double pistol_gap_function_derivative(double r) {
  if (!(r > 0.0)) throw DomainError("pistol_gap_function_derivative: requires r > 0");
  // d/dr of each term: -24 k^2 r (1 - k^2 r^2) / (1 + 4 k^2 r^2)^{7/2}
  auto term = [r](double k) {
    const double D = 1.0 + 4.0 * k * k * r * r;
    return -24.0 * k * k * r * (1.0 - k * k * r * r) / (D * D * D * std::sqrt(D));
  };
  const long K = 200000;
  double sum = 0.0;
  for (long k = K - 1; k >= 1; --k) sum += term(static_cast<double>(k));
  // Tail: the terms approach (3/(16 r^4)) k^{-3}.
  const double Kd = static_cast<double>(K);
  sum += 0.5 * term(Kd) + 3.0 / (16.0 * r * r * r * r) / (2.0 * Kd * Kd);
  return sum;
}

double pistol_gap_crossover() {
  double lo = 0.1, hi = 1.0;
  double flo = pistol_gap_function(lo);
  if (!(flo > 0.0) || !(pistol_gap_function(hi) < 0.0)) throw NumericError("pistol gap bracket is invalid");
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    const double fm = pistol_gap_function(mid);
    if (fm > 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double pistol_force(const PistolGeometry& g, double step) {
  if (!(step > 0.0) || step >= 0.25 * g.s) throw StepTooLarge("pistol_force: step must be in (0, s/4)");
  auto energy = [&](double s) { return pistol_terms_unchecked(g.r, s, g.u, g.ell).total(); };
  auto stencil = [&](double h) {
    return -(energy(g.s - 2.0 * h) - 8.0 * energy(g.s - h) + 8.0 * energy(g.s + h) - energy(g.s + 2.0 * h)) /
           (12.0 * h);
  };
  const double f1 = stencil(step);
  const double f2 = stencil(2.0 * step);
  if (std::abs(f1 - f2) > 1e-3 * std::max(std::abs(f1), 1e-10))
    throw StepTooLarge("pistol_force: step and double step disagree beyond 1e-3");
  return f1;
}

std::string pistol_regime(const PistolGeometry& g) {
  return g.s * g.s * g.s < g.u * g.r * g.r ? "narrow" : "long";
}

} // namespace casimir
