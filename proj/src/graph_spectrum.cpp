#include "casimir/graph_spectrum.hpp"
#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace casimir {

namespace {

struct PoleGroup {
  double omega;
  int count;
};

struct PoleLayout {
  std::vector<PoleGroup> groups;
  std::vector<std::string> warnings;
};

PoleLayout tangent_poles(const StarGraph& g, double omega_max) {
  std::vector<double> poles;
  const double pi = std::numbers::pi;
  for (const auto& b : g.bonds()) {
    const double phi = b.piston.secular_phase();
    for (long n = (phi <= 0.5 * pi) ? 0 : 1;; ++n) {
      const double w = (0.5 * pi - phi + n * pi) / b.length;
      if (w > omega_max) break;
      poles.push_back(std::max(w, 0.0));
    }
  }
  std::sort(poles.begin(), poles.end());

  PoleLayout out;
  const double close = 1e-10 / g.min_length();
  for (double p : poles) {
    if (!out.groups.empty()) {
      auto& last = out.groups.back();
      const double gap = p - last.omega;
      if (gap <= 1e-12 * std::max(1.0, p)) {
        ++last.count;
        continue;
      }
      if (gap < close) {
        std::ostringstream msg;
        msg << std::setprecision(15) << "ill-conditioned: tangent poles at " << last.omega << " and "
            << p << " are distinct but closer than " << close;
        out.warnings.push_back(msg.str());
      }
    }
    out.groups.push_back({p, 1});
  }
  return out;
}

double secular_unchecked(const StarGraph& g, double omega) {
  double s = 0.0;
  for (const auto& b : g.bonds()) s += std::tan(omega * b.length + b.piston.secular_phase());
  return s;
}

double value_at_zero(const StarGraph& g) {
  double s = 0.0;
  for (const auto& b : g.bonds()) s += std::tan(b.piston.secular_phase());
  return s;
}

// Brackets (lo, hi) containing exactly one root; lo/hi flagged when they are
// not poles so that their function value can be used by the secant step.
struct RootBracket {
  double lo, hi;
  bool lo_finite, hi_finite;
};

std::vector<RootBracket> root_brackets(const StarGraph& g, double omega_max,
                                       const std::vector<PoleGroup>& poles) {
  std::vector<RootBracket> out;
  const bool pole_at_zero = !poles.empty() && poles.front().omega == 0.0;
  const double f0 = value_at_zero(g);
  if (poles.empty()) {
    if (omega_max > 0.0 && f0 < 0.0 && secular_unchecked(g, omega_max) >= 0.0)
      out.push_back({0.0, omega_max, true, true});
    return out;
  }
  if (!pole_at_zero && f0 < 0.0) out.push_back({0.0, poles.front().omega, true, false});
  for (std::size_t i = 0; i + 1 < poles.size(); ++i)
    out.push_back({poles[i].omega, poles[i + 1].omega, false, false});
  const double last = poles.back().omega;
  if (last < omega_max && secular_unchecked(g, omega_max) >= 0.0)
    out.push_back({last, omega_max, false, true});
  return out;
}

double refine_root(const StarGraph& g, const RootBracket& br) {
  double l = br.lo, h = br.hi;
  double fl = br.lo_finite ? secular_unchecked(g, l) : 0.0;
  double fh = br.hi_finite ? secular_unchecked(g, h) : 0.0;
  bool l_ok = br.lo_finite, h_ok = br.hi_finite;
  if (l_ok && fl == 0.0) return l;
  if (h_ok && fh == 0.0) return h;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (l + h);
    if (h - l <= 1e-13 * std::max(1.0, m)) break;
    const double fm = secular_unchecked(g, m);
    if (fm == 0.0) return m;
    if (fm < 0.0) {
      l = m;
      fl = fm;
      l_ok = true;
    } else {
      h = m;
      fh = fm;
      h_ok = true;
    }
  }
  if (l_ok && h_ok && fh != fl) {
    const double w = l - fl * (h - l) / (fh - fl);
    if (w >= l && w <= h) return w;
  }
  return 0.5 * (l + h);
}

} // namespace

double secular_function(const StarGraph& g, double omega) {
  double s = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const auto& b = g.bonds()[j];
    const double arg = omega * b.length + b.piston.secular_phase();
    if (std::abs(std::cos(arg)) < 1e-14) throw PoleProximityError(j, omega);
    s += std::tan(arg);
  }
  return s;
}

std::vector<SecularBracket> secular_brackets(const StarGraph& g, double omega_max) {
  const auto layout = tangent_poles(g, omega_max);
  std::vector<SecularBracket> out;
  double lo = 0.0;
  int mult = 0;
  for (const auto& p : layout.groups) {
    if (p.omega > lo) out.push_back({lo, p.omega, mult});
    lo = p.omega;
    mult = p.count;
  }
  if (lo < omega_max) out.push_back({lo, omega_max, mult});
  return out;
}

Spectrum find_spectrum(const StarGraph& g, double omega_max, unsigned threads) {
  if (!(omega_max > 0.0) || !std::isfinite(omega_max)) throw DomainError("omega_max must be positive");
  auto layout = tangent_poles(g, omega_max);
  const auto brackets = root_brackets(g, omega_max, layout.groups);

  std::vector<double> roots(brackets.size());
  parallel_for(brackets.size(), threads, [&](std::size_t i) { roots[i] = refine_root(g, brackets[i]); });

  Spectrum s;
  s.omega_max = omega_max;
  s.graph_hash = g.hash();
  s.warnings = std::move(layout.warnings);
  if (g.all_neumann()) s.modes.push_back({0.0, 1});
  for (double r : roots) {
    if (!std::isfinite(r)) throw NumericError("non-finite eigenfrequency");
    if (r > 0.0) s.modes.push_back({r, 1});
  }
  for (const auto& p : layout.groups)
    if (p.count > 1 && p.omega > 0.0) s.modes.push_back({p.omega, p.count - 1});
  std::sort(s.modes.begin(), s.modes.end(), [](const Mode& a, const Mode& b) { return a.omega < b.omega; });

  // Two brackets sharing an endpoint cannot both return it, but guard anyway.
  std::vector<Mode> merged;
  for (const auto& m : s.modes) {
    if (!merged.empty() && merged.back().omega == m.omega)
      merged.back().multiplicity += m.multiplicity;
    else
      merged.push_back(m);
  }
  s.modes = std::move(merged);
  return s;
}

CountReport spectral_count_check(const Spectrum& s, const StarGraph& g) {
  CountReport rep;
  const double L = weyl_length(g);
  const double B = static_cast<double>(g.size());

  long n = 0;
  for (const auto& m : s.modes) {
    const double weyl = m.omega * L / std::numbers::pi;
    rep.max_deviation = std::max(rep.max_deviation, std::abs(n - weyl));
    n += m.multiplicity;
    rep.max_deviation = std::max(rep.max_deviation, std::abs(n - weyl));
  }
  if (s.omega_max > 0.0)
    rep.max_deviation = std::max(rep.max_deviation, std::abs(n - s.omega_max * L / std::numbers::pi));

  if (s.omega_max <= 0.0) {
    rep.passed = s.modes.empty();
    return rep;
  }

  // Interlacing: one simple root per inter-pole interval, m-1 at an m-fold pole.
  const auto layout = tangent_poles(g, s.omega_max);
  const auto& poles = layout.groups;
  std::vector<double> edges{0.0};
  for (const auto& p : poles) {
    if (p.omega > 0.0) edges.push_back(p.omega);
  }
  edges.push_back(s.omega_max);
  const auto brackets = root_brackets(g, s.omega_max, poles);

  auto count_open = [&](double lo, double hi) {
    long c = 0;
    for (const auto& m : s.modes)
      if (m.omega > lo && m.omega < hi) c += m.multiplicity;
    return c;
  };
  auto has_bracket = [&](double lo, double hi) {
    for (const auto& br : brackets)
      if (br.lo == lo && br.hi == hi) return true;
    return false;
  };
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i], hi = edges[i + 1];
    if (!(hi > lo)) continue;
    long expected = has_bracket(lo, hi) ? 1 : 0;
    long found = count_open(lo, hi);
    // A root landing exactly on omega_max belongs to the last interval.
    if (i + 2 == edges.size())
      for (const auto& m : s.modes)
        if (m.omega == hi) found += m.multiplicity;
    if (found != expected) rep.flagged.push_back({lo, hi, expected, found});
  }
  for (const auto& p : poles) {
    if (p.omega <= 0.0) continue;
    long found = 0;
    for (const auto& m : s.modes)
      if (m.omega == p.omega) found += m.multiplicity;
    if (found != p.count - 1) rep.flagged.push_back({p.omega, p.omega, p.count - 1, found});
  }
  const bool zero_expected = g.all_neumann();
  const bool zero_found = !s.modes.empty() && s.modes.front().omega == 0.0;
  if (zero_expected != zero_found) rep.flagged.push_back({0.0, 0.0, zero_expected ? 1 : 0, zero_found ? 1 : 0});

  rep.passed = rep.flagged.empty() && rep.max_deviation <= B + 1.0;
  return rep;
}

void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
  out << "# units: omega in 1/length\n";
  out << "omega,multiplicity\n";
  out << std::setprecision(15);
  for (const auto& m : s.modes) out << m.omega << ',' << m.multiplicity << '\n';
}

} // namespace casimir
