#include <doctest.h>

#include "casimir/errors.hpp"
#include "casimir/special_functions.hpp"

#include <cmath>
#include <numbers>

using namespace casimir;

namespace {

constexpr double pi = std::numbers::pi;

bool rel_close(double x, double y, double tol) { return std::abs(x - y) <= tol * std::abs(y); }

// Hurwitz zeta by Euler-Maclaurin; only used to build beta(s) below.
double hurwitz_zeta(double s, double q) {
  const int N = 2000;
  double sum = 0.0;
  for (int n = N - 1; n >= 0; --n) sum += std::pow(n + q, -s);
  const double x = N + q;
  sum += std::pow(x, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(x, -s);
  sum += s / 12.0 * std::pow(x, -s - 1.0);
  sum -= s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(x, -s - 3.0);
  return sum;
}

double dirichlet_beta(double s) {
  return std::pow(4.0, -s) * (hurwitz_zeta(s, 0.25) - hurwitz_zeta(s, 0.75));
}

} // namespace

TEST_CASE("riemann_zeta") {
  CHECK(rel_close(riemann_zeta(2.0), pi * pi / 6.0, 1e-14));
  CHECK(rel_close(riemann_zeta(3.0), 1.2020569031595943, 1e-13));
  CHECK(rel_close(riemann_zeta(1.5), 2.6123753486854883, 1e-13));
  CHECK(rel_close(riemann_zeta(5.0), 1.0369277551433699, 1e-13));
  CHECK(rel_close(riemann_zeta(4.0), std::pow(pi, 4) / 90.0, 1e-14));
  CHECK_THROWS_AS(riemann_zeta(1.0), DomainError);
  CHECK_THROWS_AS(riemann_zeta(0.5), DomainError);
}

TEST_CASE("dilogarithm real") {
  CHECK(rel_close(dilogarithm(1.0), pi * pi / 6.0, 1e-15));
  CHECK(rel_close(dilogarithm(-1.0), -pi * pi / 12.0, 1e-14));
  CHECK(dilogarithm(0.0) == 0.0);

  // Direct series with the geometric remainder bound |x|^(N+1)/((N+1)^2 (1-|x|)).
  const double x = -1.0 / 3.0;
  double direct = 0.0, power = 1.0;
  const int N = 60;
  for (int r = 1; r <= N; ++r) {
    power *= x;
    direct += power / (static_cast<double>(r) * r);
  }
  const double remainder = std::pow(1.0 / 3.0, N + 1) / ((N + 1.0) * (N + 1.0) * (2.0 / 3.0));
  CHECK(std::abs(dilogarithm(x) - direct) <= remainder + 1e-16);
  CHECK(rel_close(dilogarithm(x), -0.30903312648780846, 1e-13));

  const double frozen[][2] = {{0.3, 0.32612951007547606},  {0.7, 0.88937762428603866},
                              {-0.75, -0.64276126883997888}, {0.75, 0.9784693929303061},
                              {0.9, 1.2997147230049588},     {-0.9, -0.75216317921726164},
                              {0.5, 0.58224052646501251},    {-0.5, -0.4484142069236462}};
  for (const auto& row : frozen) CHECK(rel_close(dilogarithm(row[0]), row[1], 1e-13));

  for (double y : {0.3, 0.7, 1.0})
    CHECK(std::abs(dilogarithm(y) + dilogarithm(-y) - 0.5 * dilogarithm(y * y)) < 1e-10);

  CHECK_THROWS_AS(dilogarithm(1.0001), DomainError);
  CHECK_THROWS_AS(dilogarithm(-2.0), DomainError);
}

TEST_CASE("dilogarithm complex") {
  struct Row {
    std::complex<double> z, value;
  };
  const Row rows[] = {
      {{0.3, 0.4}, {0.26659686674274042, 0.46136289181910899}},
      {{-0.6, 0.7}, {-0.5897281963267368, 0.53612192038848391}},
      {{0.9, 0.1}, {1.264186732338754, 0.24373567998101405}},
      {std::polar(0.98, 1.3), {0.02915501369246151, 0.97123489187500493}},
  };
  for (const auto& r : rows) CHECK(std::abs(dilogarithm(r.z) - r.value) < 1e-13);
  // Conjugation symmetry and agreement with the real branch.
  CHECK(std::abs(dilogarithm(std::complex<double>(0.3, -0.4)) - std::conj(rows[0].value)) < 1e-13);
  CHECK(std::abs(dilogarithm(std::complex<double>(-1.0 / 3.0, 0.0)).real() - dilogarithm(-1.0 / 3.0)) < 1e-15);
  CHECK(std::abs(dilogarithm(std::complex<double>(-1.0, 0.0)) - (-pi * pi / 12.0)) < 1e-14);
  CHECK_THROWS_AS(dilogarithm(std::complex<double>(0.9, 0.9)), DomainError);
}

TEST_CASE("bessel_k frozen table") {
  struct Row {
    int n;
    double x, value;
  };
  const Row rows[] = {
      {0, 1e-3, 7.0236888005623813},     {0, 0.1, 2.4270690247020166},      {0, 0.5, 0.92441907122766586},
      {0, 1.0, 0.42102443824070833},     {0, 2.0, 0.11389387274953344},     {0, 2.5, 0.062347553200366186},
      {0, 5.0, 0.0036910983340425943},   {0, 8.0, 0.00014647070522281539},  {0, 10.0, 1.7780062316167652e-5},
      {0, 20.0, 5.7412378153365243e-10}, {0, 50.0, 3.4101677497894955e-23}, {1, 1e-3, 999.99623815608555},
      {1, 0.1, 9.8538447808706056},      {1, 0.5, 1.6564411200033009},      {1, 1.0, 0.60190723019723457},
      {1, 2.0, 0.13986588181652243},     {1, 2.5, 0.073890816347747064},    {1, 5.0, 0.0040446134454521642},
      {1, 8.0, 0.00015536921180500113},  {1, 10.0, 1.8648773453825585e-5},  {1, 20.0, 5.8830579695570382e-10},
      {1, 50.0, 3.4441022267175556e-23}, {2, 1e-3, 1999999.5000009716},     {2, 1.0, 1.6248388986351775},
      {2, 2.5, 0.12146020627856384},     {2, 10.0, 2.1509817006932769e-5},  {5, 0.1, 38376009.995835918},
      {5, 1.0, 360.9605896012407},       {5, 8.0, 0.00061935801098512512},  {5, 50.0, 4.3671822541009863e-23},
  };
  for (const auto& r : rows) {
    CAPTURE(r.n);
    CAPTURE(r.x);
    CHECK(rel_close(bessel_k(r.n, r.x), r.value, 1e-12));
  }
  CHECK_THROWS_AS(bessel_k(0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_k(1, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_k(-1, 1.0), DomainError);
}

TEST_CASE("bessel identities") {
  for (double x : {0.5, 1.0, 2.0, 10.0}) {
    CAPTURE(x);
    const double w = detail::bessel_i(0, x) * bessel_k(1, x) + detail::bessel_i(1, x) * bessel_k(0, x);
    CHECK(rel_close(w, 1.0 / x, 1e-12));
  }
  for (double x : {0.5, 2.0, 10.0}) {
    CAPTURE(x);
    CHECK(rel_close(bessel_k(2, x) - bessel_k(0, x), (2.0 / x) * bessel_k(1, x), 1e-9));
  }
  CHECK(rel_close(detail::bessel_i(0, 1.0), 1.2660658777520083, 1e-14));
  CHECK(rel_close(detail::bessel_i(1, 10.0), 2670.9883037012547, 1e-13));
}

TEST_CASE("bessel K0(2 pi) against its integral representation") {
  // K0(x) = int_0^inf exp(-x cosh u) du; the trapezoid rule is spectrally
  // accurate for this doubly-exponentially decaying integrand.
  const double x = 2.0 * pi;
  const double h = 0.005;
  double q = 0.5 * std::exp(-x);
  for (int i = 1; i * h < 6.0; ++i) q += std::exp(-x * std::cosh(i * h));
  q *= h;
  CHECK(rel_close(bessel_k(0, x), q, 1e-9));
  CHECK(rel_close(bessel_k(0, x), 0.00091658436090437031, 1e-12));
}

TEST_CASE("series and continued fraction overlap") {
  for (double x = 1.0; x <= 3.0; x += 0.25) {
    double s0, s1, c0, c1;
    detail::bessel_k01_series(x, s0, s1);
    detail::bessel_k01_continued_fraction(x, c0, c1);
    CAPTURE(x);
    CHECK(rel_close(s0, c0, 1e-12));
    CHECK(rel_close(s1, c1, 1e-12));
  }
}

TEST_CASE("bessel_k1_prime") {
  for (double x : {0.1, 0.7, 1.0, 3.0, 10.0, 40.0}) {
    CAPTURE(x);
    CHECK(std::abs(bessel_k1_prime(x) + 0.5 * (bessel_k(0, x) + bessel_k(2, x))) <=
          1e-14 * std::abs(bessel_k1_prime(x)));
  }
  const double h = 1e-6;
  const double fd = (bessel_k(1, 1.0 + h) - bessel_k(1, 1.0 - h)) / (2.0 * h);
  CHECK(rel_close(bessel_k1_prime(1.0), fd, 1e-6));
  for (double x : {0.1, 1.0, 10.0}) CHECK(bessel_k1_prime(x) < 0.0);
  CHECK_THROWS_AS(bessel_k1_prime(0.0), DomainError);
}

TEST_CASE("lattice_sum_3half") {
  const auto s11 = lattice_sum_3half(1.0, 1.0);
  const double identity = riemann_zeta(1.5) * dirichlet_beta(1.5) - riemann_zeta(3.0);
  CHECK(rel_close(dirichlet_beta(1.5), 0.86450265346120204, 1e-13));
  CHECK(std::abs(s11.value() - identity) < 1e-10);
  CHECK(std::abs(s11.value() - 1.0563485176156433) < 1e-12);
  CHECK(s11.abs_error_bound <= 1e-10);
  CHECK(s11.abs_error_bound >= 0.0);

  const double frozen[][3] = {{1.0, 2.0, 0.33611293303259452},
                              {2.0, 1.0, 0.33611293303259452},
                              {1.3, 0.7, 1.1169728891559938},
                              {0.1, 1.0, 15.848312216902466}};
  for (const auto& r : frozen) {
    const auto s = lattice_sum_3half(r[0], r[1]);
    CAPTURE(r[0]);
    CAPTURE(r[1]);
    CHECK(std::abs(s.value() - r[2]) <= s.abs_error_bound);
    CHECK(s.abs_error_bound <= 1e-10);
  }

  // Homogeneity of degree -3.
  const auto big = lattice_sum_3half(2.0, 4.0), small = lattice_sum_3half(1.0, 2.0);
  CHECK(std::abs(8.0 * big.value() - small.value()) <= 8.0 * big.abs_error_bound + small.abs_error_bound);
  // Monotone decreasing in a.
  double prev = lattice_sum_3half(0.5, 1.0).value();
  for (double a : {0.75, 1.0, 2.0, 5.0}) {
    const double v = lattice_sum_3half(a, 1.0).value();
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(lattice_sum_3half(0.0, 1.0), DomainError);
}

TEST_CASE("lattice_sum_3half bound shrinks and covers doubled cutoffs") {
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}, std::pair{0.4, 1.3}}) {
    double last_bound = 1e300;
    for (std::size_t K : {32u, 64u, 128u, 256u}) {
      LatticeSumOptions o;
      o.row_terms = K;
      const auto r = lattice_sum_3half(a, b, o);
      o.row_terms = 2 * K;
      const auto r2 = lattice_sum_3half(a, b, o);
      CHECK(std::abs(r2.value() - r.value()) < r.abs_error_bound);
      CHECK(r.abs_error_bound <= last_bound);
      last_bound = r.abs_error_bound;
    }
  }
}
