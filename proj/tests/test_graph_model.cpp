#include <doctest.h>

#include "casimir/errors.hpp"
#include "casimir/graph_model.hpp"

#include <cmath>
#include <numbers>

using namespace casimir;

namespace {
constexpr double pi = std::numbers::pi;
const auto D = PistonCondition::dirichlet();
const auto N = PistonCondition::neumann();
} // namespace

TEST_CASE("piston conditions") {
  CHECK(D.reflection() == std::complex<double>(-1.0, 0.0));
  CHECK(N.reflection() == std::complex<double>(1.0, 0.0));
  CHECK(D.secular_phase() == doctest::Approx(pi / 2));
  CHECK(N.secular_phase() == 0.0);
  const auto p = PistonCondition::phase(-pi / 2);
  CHECK(p.theta() == doctest::Approx(3 * pi / 2));
  CHECK(std::abs(p.reflection() - std::complex<double>(0.0, -1.0)) < 1e-15);
  CHECK(parse_piston("Dirichlet") == D);
  CHECK(parse_piston("n") == N);
  CHECK_THROWS_AS(parse_piston("robin"), ConfigError);
  CHECK_THROWS_AS(PistonCondition::phase(NAN), DomainError);
}

TEST_CASE("interval spectra") {
  const auto dd = interval_spectrum(Interval1D(1.0, D, D), 10.0);
  REQUIRE(dd.modes.size() == 3);
  for (int n = 0; n < 3; ++n) {
    CHECK(dd.modes[n].omega == doctest::Approx((n + 1) * pi).epsilon(1e-15));
    CHECK(dd.modes[n].multiplicity == 1);
  }
  const auto dn = interval_spectrum(Interval1D(1.0, D, N), 5.0);
  REQUIRE(dn.modes.size() == 2);
  CHECK(dn.modes[0].omega == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(dn.modes[1].omega == doctest::Approx(3 * pi / 2).epsilon(1e-15));
  const auto nn = interval_spectrum(Interval1D(2.0, N, N), 2.0);
  REQUIRE(nn.modes.size() == 2);
  CHECK(nn.modes[0].omega == 0.0);
  CHECK(nn.modes[1].omega == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK_THROWS_AS(interval_spectrum(Interval1D(1.0, D, D), 0.0), DomainError);
  CHECK_THROWS_AS(interval_spectrum(Interval1D(1.0, D, PistonCondition::phase(1.0)), 5.0), UnsupportedCondition);
}

TEST_CASE("interval closed forms") {
  CHECK(interval_casimir_energy(Interval1D(1.0, D, D)) == doctest::Approx(-pi / 24).epsilon(1e-15));
  CHECK(interval_casimir_energy(Interval1D(1.0, D, N)) == doctest::Approx(pi / 48).epsilon(1e-15));
  CHECK(interval_casimir_energy(Interval1D(1.0, N, D)) == doctest::Approx(pi / 48).epsilon(1e-15));
  CHECK(interval_casimir_energy(Interval1D(1.0, N, N)) == doctest::Approx(-pi / 24).epsilon(1e-15));
  CHECK(interval_casimir_energy(Interval1D(2.0, D, D)) == doctest::Approx(-pi / 48).epsilon(1e-15));
  CHECK(interval_piston_force(Interval1D(1.0, D, D)) == doctest::Approx(-pi / 24).epsilon(1e-15));
  CHECK(interval_piston_force(Interval1D(1.0, D, N)) == doctest::Approx(pi / 48).epsilon(1e-15));
  CHECK(interval_piston_force(Interval1D(3.0, D, D)) == doctest::Approx(-pi / 216).epsilon(1e-15));
  // Force is -dE/da.
  const double h = 1e-4;
  const double fd = -(interval_casimir_energy(Interval1D(1 + h, D, D)) - interval_casimir_energy(Interval1D(1 - h, D, D))) / (2 * h);
  CHECK(fd == doctest::Approx(interval_piston_force(Interval1D(1.0, D, D))).epsilon(1e-7));
  CHECK_THROWS_AS(Interval1D(0.0, D, D), DomainError);
}

TEST_CASE("star graph model") {
  CHECK(weyl_length(StarGraph({{1, N}, {1, N}})) == 2.0);
  const StarGraph caption({{1.1, N}, {1.6176, N}, {1.2985, N}, {1.1159, N}});
  CHECK(weyl_length(caption) == doctest::Approx(5.132).epsilon(1e-12));
  const StarGraph doubled({{2.2, N}, {3.2352, N}, {2.597, N}, {2.2318, N}});
  CHECK(weyl_length(doubled) == doctest::Approx(2 * weyl_length(caption)).epsilon(1e-15));
  CHECK(caption.min_length() == 1.1);
  CHECK(caption.all_neumann());
  CHECK_FALSE(StarGraph({{1, N}, {1, D}}).all_neumann());
  CHECK(caption.hash() != doubled.hash());
  CHECK(caption.hash() == StarGraph({{1.1, N}, {1.6176, N}, {1.2985, N}, {1.1159, N}}).hash());
  CHECK(StarGraph::equal(5, 1.0, D).size() == 5);
  CHECK_THROWS_AS(StarGraph({{1, N}}), DomainError);
  CHECK_THROWS_AS(StarGraph({{1, N}, {-1, N}}), DomainError);
}
