#include "casimir/graph_model.hpp"
#include "casimir/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <numbers>

namespace casimir {

PistonCondition PistonCondition::phase(double theta) {
  if (!std::isfinite(theta)) throw DomainError("piston phase must be finite");
  const double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  if (theta >= two_pi) theta = 0.0;
  return {PistonKind::Phase, theta};
}

std::complex<double> PistonCondition::reflection() const {
  switch (kind_) {
  case PistonKind::Dirichlet: return {-1.0, 0.0};
  case PistonKind::Neumann: return {1.0, 0.0};
  case PistonKind::Phase: break;
  }
  return std::polar(1.0, theta_);
}

std::string PistonCondition::label() const {
  switch (kind_) {
  case PistonKind::Dirichlet: return "D";
  case PistonKind::Neumann: return "N";
  case PistonKind::Phase: break;
  }
  return "phase(" + std::to_string(theta_) + ")";
}

PistonCondition parse_piston(const std::string& s) {
  std::string t(s);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "d" || t == "dirichlet") return PistonCondition::dirichlet();
  if (t == "n" || t == "neumann") return PistonCondition::neumann();
  throw ConfigError("unknown piston condition '" + s + "'");
}

// ****************************************************************************

StarGraph::StarGraph(std::vector<Bond> bonds) : bonds_(std::move(bonds)) {
  if (bonds_.size() < 2) throw DomainError("star graph needs at least 2 bonds");
  for (const auto& b : bonds_)
    if (!(b.length > 0.0) || !std::isfinite(b.length))
      throw DomainError("bond lengths must be positive and finite");
}

double StarGraph::min_length() const {
  double m = bonds_.front().length;
  for (const auto& b : bonds_) m = std::min(m, b.length);
  return m;
}

bool StarGraph::all_neumann() const {
  return std::all_of(bonds_.begin(), bonds_.end(),
                     [](const Bond& b) { return b.piston.kind() == PistonKind::Neumann; });
}

std::uint64_t StarGraph::hash() const {
  // FNV-1a over the raw bond data.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& b : bonds_) {
    mix(b.length);
    mix(b.piston.theta());
  }
  return h;
}

StarGraph StarGraph::equal(std::size_t B, double a, PistonCondition p) {
  return StarGraph(std::vector<Bond>(B, Bond{a, p}));
}

double weyl_length(const StarGraph& g) {
  double L = 0.0;
  for (const auto& b : g.bonds()) L += b.length;
  return L;
}

// ****************************************************************************

Interval1D::Interval1D(double a_, PistonCondition l, PistonCondition r) : a(a_), left(l), right(r) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("interval length must be positive");
}

bool Interval1D::mixed() const {
  if (!left.is_dirichlet_or_neumann() || !right.is_dirichlet_or_neumann())
    throw UnsupportedCondition("interval closed forms need Dirichlet or Neumann ends");
  return left.kind() != right.kind();
}

Spectrum interval_spectrum(const Interval1D& iv, double omega_max) {
  if (!(omega_max > 0.0)) throw DomainError("omega_max must be positive");
  const bool mixed = iv.mixed();
  const bool neumann = !mixed && iv.left.kind() == PistonKind::Neumann;
  Spectrum s;
  s.omega_max = omega_max;
  const double step = std::numbers::pi / iv.a;
  for (long n = (mixed || neumann) ? 0 : 1;; ++n) {
    const double omega = mixed ? (n + 0.5) * step : n * step;
    if (omega > omega_max) break;
    s.modes.push_back({omega, 1});
  }
  return s;
}

double interval_casimir_energy(const Interval1D& iv) {
  return iv.mixed() ? std::numbers::pi / (48.0 * iv.a) : -std::numbers::pi / (24.0 * iv.a);
}

double interval_piston_force(const Interval1D& iv) {
  return iv.mixed() ? std::numbers::pi / (48.0 * iv.a * iv.a)
                    : -std::numbers::pi / (24.0 * iv.a * iv.a);
}

} // namespace casimir
