#include <doctest.h>

#include "casimir/billiards.hpp"
#include "casimir/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace casimir;

namespace {
constexpr double pi = std::numbers::pi;
constexpr double zeta3 = 1.2020569031595943;

double composite_fd(double a, double b, double L, double h) {
  auto e = [&](double x) { return piston_composite_energy(PistonGeometry2D(x, b, L)); };
  return -(e(a - 2 * h) - 8 * e(a - h) + 8 * e(a + h) - e(a + 2 * h)) / (12 * h);
}
} // namespace

TEST_CASE("rectangle closed form") {
  const double frozen[][4] = {{1.0, 1.0, 0.041040597344096999, -0.22075879045505244},
                              {2.0, 1.0, 0.017620887993171405, -0.17872865285619067},
                              {1.3, 0.7, 0.030051731951213516, -0.25763990299290675}};
  for (const auto& r : frozen) {
    CAPTURE(r[0]);
    CHECK(std::abs(rectangle_energy_finite({r[0], r[1], BoundaryKind::Dirichlet}) - r[2]) < 1e-10);
    CHECK(std::abs(rectangle_energy_finite({r[0], r[1], BoundaryKind::Neumann}) - r[3]) < 1e-10);
  }
  const double s11 = lattice_sum_3half(1.0, 1.0).value();
  CHECK(rectangle_energy_finite({1.0, 1.0, BoundaryKind::Dirichlet}) ==
        doctest::Approx(-zeta3 / (8 * pi) - s11 / (8 * pi) + pi / 24).epsilon(1e-13));
  for (auto k : {BoundaryKind::Dirichlet, BoundaryKind::Neumann}) {
    CHECK(rectangle_energy_finite({1.0, 2.0, k}) == doctest::Approx(rectangle_energy_finite({2.0, 1.0, k})).epsilon(1e-14));
    CHECK(rectangle_energy_finite({3.9, 2.1, k}) ==
          doctest::Approx(rectangle_energy_finite({1.3, 0.7, k}) / 3.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(RectangleGeometry(0.0, 1.0, BoundaryKind::Dirichlet), DomainError);
}

TEST_CASE("rectangle spectrum counts") {
  const RectangleGeometry g(1.0, 1.0, BoundaryKind::Dirichlet);
  const auto s = rectangle_spectrum(g, 300.0);
  const double weyl = 300.0 * 300.0 / (4 * pi) - 4.0 * 300.0 / (4 * pi);
  CHECK(std::abs(static_cast<double>(s.total_count()) - weyl) <= 25.0);
  CHECK(s.modes.front().omega == doctest::Approx(pi * std::sqrt(2.0)).epsilon(1e-15));
  const auto n = rectangle_spectrum({1.0, 1.0, BoundaryKind::Neumann}, 300.0);
  CHECK(n.modes.front().omega == 0.0);
  const double weyl_n = 300.0 * 300.0 / (4 * pi) + 4.0 * 300.0 / (4 * pi);
  CHECK(std::abs(static_cast<double>(n.total_count()) - weyl_n) <= 25.0);
  for (std::size_t i = 1; i < s.modes.size(); ++i) CHECK(s.modes[i].omega > s.modes[i - 1].omega);
}

TEST_CASE("rectangle spectral pipeline agrees with the closed form") {
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}}) {
    for (auto k : {BoundaryKind::Dirichlet, BoundaryKind::Neumann}) {
      const RectangleGeometry g(a, b, k);
      const auto fit = rectangle_numeric_E0(g, 300.0);
      CAPTURE(a);
      CAPTURE(fit.uncertainty);
      CHECK(fit.residual_rms < 1e-3);
      CHECK(std::abs(fit.e0 - rectangle_energy_finite(g)) <= 3.0 * fit.uncertainty);
    }
  }
  const RectangleGeometry g(1.0, 1.0, BoundaryKind::Dirichlet);
  CHECK_THROWS_AS(rectangle_numeric_E0(g, 300.0, linear_grid(0.01, 0.3, 12), 4, rectangle_fit_window()),
                  WindowViolation);
}

TEST_CASE("piston force values") {
  const double frozen[][3] = {{1.0, 1.0, -0.0033938635798996468},
                              {0.5, 1.0, -0.14471067786208281},
                              {2.0, 1.0, -4.1538040956113301e-6},
                              {0.1, 1.0, -41.307253971169498}};
  for (const auto& r : frozen) {
    const auto s = piston_force_2d_sum(r[0], r[1]);
    CAPTURE(r[0]);
    CHECK(std::abs(s.value() - r[2]) <= 1e-12 * std::abs(r[2]));
    CHECK(s.abs_error_bound <= 1e-10);
  }
  CHECK(piston_force_2d(PistonGeometry2D(1.0, 1.0, 7.0)) == piston_force_2d_sum(1.0, 1.0).value());
  CHECK(std::abs(piston_force_2d_sum(5.0, 1.0).value()) < 1e-4 * pi);
  // Far apart the force is tiny but still strictly attractive, with decay e^{-2 pi a/b}.
  for (double q : {9.0, 10.0, 20.0, 50.0}) {
    const auto s = piston_force_2d_sum(q, 1.0);
    CAPTURE(q);
    CHECK(s.value() < 0.0);
    CHECK(s.value() == doctest::Approx(pi * bessel_k1_prime(2 * pi * q)).epsilon(1e-12));
  }
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const double a = 0.5 + 0.375 * i, b = 0.5 + 0.375 * j;
      CHECK(piston_force_2d_sum(a, b).value() < 0.0);
    }
  CHECK_THROWS_AS(PistonGeometry2D(2.0, 1.0, 1.5), DomainError);
}

TEST_CASE("piston force is minus the derivative of the composite energy") {
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.7, 1.2}, std::pair{1.5, 1.0}}) {
    const double f = piston_force_2d_sum(a, b).value();
    CAPTURE(a);
    CHECK(std::abs(composite_fd(a, b, 10.0, 2.5e-3 * a) / f - 1.0) < 1e-6);
  }
  // The outer chamber contributes the parallel-plate energy of its length.
  const PistonGeometry2D g(1.0, 1.0, 10.0);
  CHECK(piston_composite_energy(g) ==
        doctest::Approx(rectangle_energy_finite({1.0, 1.0, BoundaryKind::Dirichlet}) - zeta3 * 9.0 / (16 * pi))
            .epsilon(1e-14));
}

TEST_CASE("parallel-plate limit stabilizes") {
  // C(q) = F a^3 / b at a/b = q has a linear correction; Richardson removes it.
  auto C = [](double q) { return piston_force_2d_sum(q, 1.0).value() * q * q * q; };
  const double r1 = 2 * C(0.05) - C(0.1);
  const double r2 = 2 * C(0.025) - C(0.05);
  CHECK(std::abs(r1 - r2) < 5e-4 * std::abs(r2));
  CHECK(r2 == doctest::Approx(-zeta3 / (8 * pi)).epsilon(1e-3));
}

TEST_CASE("force csv") {
  std::ostringstream out;
  write_force_csv(out, {{{1.0, 1.0, -0.5}}});
  CHECK(out.str() == "# units: a,b in length; F in hbar*c/length^2\na,b,F\n1,1,-0.5\n");
}

TEST_CASE("pistol gap function") {
  CHECK(pistol_gap_function(0.3) == doctest::Approx(0.33551345012257119).epsilon(1e-12));
  CHECK(pistol_gap_function(0.9) == doctest::Approx(-0.030243964628140965).epsilon(1e-11));
  CHECK(pistol_gap_function(0.3) > 0.0);
  CHECK(pistol_gap_function(0.9) < 0.0);
  const double alpha = pistol_gap_crossover();
  // Decreasing through the root; G has a shallow minimum near r = 0.856 and
  // stays negative up to r = 1, so the root in (0.1, 1) is unique.
  for (double r = 0.1; r <= 1.0; r += 0.05) {
    CAPTURE(r);
    if (r < 0.85) CHECK(pistol_gap_function_derivative(r) < 0.0);
    if (r > alpha) CHECK(pistol_gap_function(r) < 0.0);
    const double h = 1e-5;
    const double fd = (pistol_gap_function(r + h) - pistol_gap_function(r - h)) / (2 * h);
    CHECK(pistol_gap_function_derivative(r) == doctest::Approx(fd).epsilon(1e-6));
  }
  CHECK(pistol_gap_function_derivative(0.9) == doctest::Approx(0.0114573).epsilon(1e-5));
  CHECK(alpha == doctest::Approx(0.58881576035944481).epsilon(1e-10));
  CHECK(std::abs(alpha - 0.5888) < 1e-3);
  CHECK_THROWS_AS(pistol_gap_function(0.0), DomainError);
}

TEST_CASE("pistol energy terms") {
  // Chamber term against brute-force summation with an integral tail.
  const PistolGeometry g(0.5, 10.0, 10.0, 100.0);
  const auto t = pistol_energy_terms(g);
  const double s = 10.0;
  double brute = 0.0;
  const long J = 2000000;
  for (long j = J; j >= 1; --j) {
    const double x = 4.0 * j * j * s * s;
    brute += (x - 1.0) / ((1.0 + x) * (1.0 + x));
  }
  brute += 1.0 / (4.0 * s * s * J);
  CHECK(std::abs(t.chamber - s / (2 * pi) * brute) < 1e-10);
  CHECK(brute == doctest::Approx(0.0040921208127398998).epsilon(1e-9));
  CHECK(t.abs_error_bound <= 1e-9);
  CHECK(t.total() == pistol_energy(g));

  // Gap term sign follows the k=1 summand for small r.
  CHECK(pistol_energy_terms(PistolGeometry(0.3, 10.0, 10.0, 100.0)).gaps > 0.0);
  CHECK(pistol_energy_terms(PistolGeometry(0.9, 10.0, 10.0, 100.0)).gaps < 0.0);

  // Barrel k-sum ~ -zeta(3) s/(16 pi u^2) at large u: doubling u quarters it.
  const double k1 = pistol_energy_terms(PistolGeometry(0.5, 20.0, 40.0, 100.0)).barrel_k;
  const double k2 = pistol_energy_terms(PistolGeometry(0.5, 20.0, 80.0, 100.0)).barrel_k;
  CHECK(k2 / k1 == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(k1 == doctest::Approx(-zeta3 * 20.0 / (16 * pi * 1600.0)).epsilon(1e-3));

  CHECK_THROWS_AS(PistolGeometry(0.5, 5.0, 10.0, 100.0), DomainError);
  CHECK_THROWS_AS(PistolGeometry(0.5, 50.0, 10.0, 40.0), DomainError);
  CHECK_THROWS_AS(PistolGeometry(0.0, 50.0, 10.0, 100.0), DomainError);
}

TEST_CASE("pistol force") {
  // Long chamber: sign change across alpha, independent of s.
  const PistolGeometry a(0.4, 50.0, 10.0, 200.0), b(0.4, 100.0, 10.0, 300.0);
  const double fa = pistol_force(a), fb = pistol_force(b);
  CHECK(fa > 0.0);
  CHECK(std::abs(fa / fb - 1.0) < 1e-2);
  const PistolGeometry c(0.8, 50.0, 10.0, 200.0), d(0.8, 100.0, 10.0, 300.0);
  const double fc = pistol_force(c), fd = pistol_force(d);
  CHECK(fc < 0.0);
  CHECK(std::abs(fc / fd - 1.0) < 1e-2);
  CHECK(pistol_regime(a) == "long");

  // Narrow chamber: F s^3/u approaches the parallel-plate constant.
  for (double s : {10.0, 15.0, 20.0}) {
    const PistolGeometry g(1.0, s, 1e5, 100.0);
    CHECK(pistol_regime(g) == "narrow");
    const double scaled = pistol_force(g) * s * s * s / 1e5;
    CAPTURE(s);
    CHECK(scaled == doctest::Approx(-zeta3 / (8 * pi)).epsilon(0.03));
  }
  CHECK_THROWS_AS(pistol_force(a, 20.0), StepTooLarge);
}
