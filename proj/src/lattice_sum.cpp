#include "casimir/special_functions.hpp"
#include "casimir/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace casimir {

namespace {

// One row sum_{k>=1} (c^2 + b^2 k^2)^(-3/2): direct terms up to K-1, then
// Euler-Maclaurin from K with the f' correction. The remainder is bounded by
// 2 zeta(4)/(2 pi)^4 * |f'''(K)| since f'''' keeps one sign beyond K.
struct RowResult {
  double partial;
  double tail;
  double bound;
};

RowResult lattice_row(double c, double b, std::size_t K) {
  const double c2 = c * c, b2 = b * b;
  auto f = [&](double k) {
    const double g = c2 + b2 * k * k;
    return 1.0 / (g * std::sqrt(g));
  };
  double partial = 0.0;
  for (std::size_t k = K - 1; k >= 1; --k) partial += f(static_cast<double>(k));

  const double Kd = static_cast<double>(K);
  const double g = c2 + b2 * Kd * Kd;
  const double Y = b * Kd / c;
  const double root = std::sqrt(1.0 + Y * Y);
  const double integral = 1.0 / (b * c2 * root * (root + Y));
  const double fK = 1.0 / (g * std::sqrt(g));
  const double f1 = -3.0 * b2 * Kd * fK / g;
  const double f3 = (45.0 * b2 * b2 * Kd - 105.0 * b2 * b2 * b2 * Kd * Kd * Kd / g) * fK / (g * g);
  const double em_bound = 2.0 * (std::numbers::pi * std::numbers::pi * std::numbers::pi *
                                 std::numbers::pi / 90.0) /
                          std::pow(2.0 * std::numbers::pi, 4) * std::abs(f3);
  return {partial, integral + 0.5 * fK - f1 / 12.0, em_bound};
}

double zeta_tail(double s, std::size_t J) {
  double head = 0.0;
  for (std::size_t j = J; j >= 1; --j) head += std::pow(static_cast<double>(j), -s);
  return riemann_zeta(s) - head;
}

} // namespace

AcceleratedSum lattice_sum_3half(double a, double b, const LatticeSumOptions& opt) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("lattice_sum_3half: requires a, b > 0");
  const double two_pi = 2.0 * std::numbers::pi;

  // Rows beyond J are replaced by their Poisson-leading part
  // 1/(b c^2) - 1/(2 c^3); what is dropped is (4 pi/(b^2 c)) sum_m m K1(2 pi m c/b).
  std::size_t J = opt.rows;
  if (J == 0) {
    const double target = std::max(opt.tolerance, 1e-16);
    J = 1;
    for (;;) {
      const double x = two_pi * a * (J + 1) / b;
      const double c = a * (J + 1);
      const double k1_upper = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) * (1.0 + 0.375 / x);
      const double row_drop = 4.0 * std::numbers::pi / (b * b * c) * k1_upper;
      if (x > 20.0 && row_drop / (1.0 - std::exp(-two_pi * a / b)) < 0.25 * target) break;
      ++J;
    }
  }

  AcceleratedSum out;
  double bound = 0.0;
  std::size_t terms = 0;
  for (std::size_t j = J; j >= 1; --j) {
    const double c = a * static_cast<double>(j);
    std::size_t K = opt.row_terms;
    if (K == 0) K = 512 + static_cast<std::size_t>(std::ceil(2.0 * c / b));
    K = std::max<std::size_t>(K, 2);
    const RowResult row = lattice_row(c, b, K);
    out.partial_sum += row.partial;
    out.tail_estimate += row.tail;
    bound += row.bound;
    terms += K - 1;
  }

  // Dropped Bessel parts of rows j > J: geometric majorant in j, doubled for m >= 2.
  {
    const double x = two_pi * a * (J + 1) / b;
    const double c = a * (J + 1);
    const double k1_upper = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) * (1.0 + 0.375 / x);
    const double ratio = std::exp(-two_pi * a / b);
    bound += 2.0 * 4.0 * std::numbers::pi / (b * b * c) * k1_upper / (1.0 - ratio);
  }
  out.tail_estimate += zeta_tail(2.0, J) / (b * a * a) - zeta_tail(3.0, J) / (2.0 * a * a * a);
  bound += 4.0 * std::numeric_limits<double>::epsilon() * std::abs(out.value());

  out.terms_used = terms;
  out.abs_error_bound = bound;
  return out;
}

} // namespace casimir
