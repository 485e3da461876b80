#include "casimir/orbit_sum.hpp"
#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"
#include "casimir/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>

namespace casimir {

namespace {

constexpr double kLengthSlack = 1e-12;

bool fits(double length, double l_max) { return length <= l_max * (1.0 + kLengthSlack); }

// Center factor for leaving bond `from` and entering bond `to`.
double center_factor(std::size_t B, int from, int to) {
  const double t = 2.0 / static_cast<double>(B);
  return from == to ? t - 1.0 : t;
}

std::complex<double> cyclic_amplitude(const StarGraph& g, const std::vector<int>& word) {
  std::complex<double> a(1.0, 0.0);
  const std::size_t n = word.size();
  for (std::size_t i = 0; i < n; ++i) {
    a *= g.bonds()[word[i]].piston.reflection();
    a *= center_factor(g.size(), word[i], word[(i + 1) % n]);
  }
  return a;
}

// Mixed-radix box of bond-count vectors c_j with 2 sum c_j a_j <= l_max.
struct CountBox {
  std::vector<std::size_t> radix;
  std::vector<std::size_t> stride;
  std::size_t size = 1;

  CountBox(const StarGraph& g, double l_max) {
    for (const auto& b : g.bonds()) {
      const auto r = static_cast<std::size_t>(std::floor(l_max * (1.0 + kLengthSlack) / (2.0 * b.length))) + 1;
      stride.push_back(size);
      radix.push_back(r);
      if (size > std::numeric_limits<std::size_t>::max() / r) throw OrbitCapExceeded(1e300, 0);
      size *= r;
    }
  }
  std::size_t digit(std::size_t idx, std::size_t j) const { return (idx / stride[j]) % radix[j]; }
};

double log_multinomial(const std::vector<std::size_t>& c) {
  double n = 0.0, s = 0.0;
  for (auto k : c) {
    n += static_cast<double>(k);
    s -= std::lgamma(static_cast<double>(k) + 1.0);
  }
  return s + std::lgamma(n + 1.0);
}

// Necklaces (periodic classes, repetitions included) with content c.
double necklace_count(const std::vector<std::size_t>& c) {
  std::size_t g = 0, n = 0;
  for (auto k : c) {
    g = std::gcd(g, k);
    n += k;
  }
  if (n == 0) return 0.0;
  double total = 0.0;
  for (std::size_t d = 1; d <= g; ++d) {
    if (g % d) continue;
    std::size_t phi = d;
    {
      std::size_t m = d, r = d;
      for (std::size_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        r -= r / p;
      }
      if (m > 1) r -= r / m;
      phi = r;
    }
    std::vector<std::size_t> cd(c);
    for (auto& k : cd) k /= d;
    total += static_cast<double>(phi) * std::exp(log_multinomial(cd));
  }
  return total / static_cast<double>(n);
}

template <class Visit>
void for_each_count(const StarGraph& g, const CountBox& box, double l_max, Visit&& visit) {
  std::vector<std::size_t> c(g.size());
  for (std::size_t idx = 0; idx < box.size; ++idx) {
    double length = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      c[j] = box.digit(idx, j);
      length += 2.0 * c[j] * g.bonds()[j].length;
    }
    if (idx == 0 || !fits(length, l_max)) continue;
    visit(idx, c, length);
  }
}

std::vector<std::pair<double, double>> cumulative_by_length(std::vector<std::pair<double, double>> contrib) {
  std::sort(contrib.begin(), contrib.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<double, double>> out;
  double acc = 0.0;
  for (const auto& [L, e] : contrib) {
    acc += e;
    if (!out.empty() && out.back().first == L)
      out.back().second = acc;
    else
      out.emplace_back(L, acc);
  }
  return out;
}

} // namespace

double orbit_energy_term(double l_prim, std::complex<double> amplitude, int r) {
  const double L = r * l_prim;
  return -l_prim * std::pow(amplitude, r).real() / (2.0 * std::numbers::pi * L * L);
}

double orbit_class_estimate(const StarGraph& g, double l_max) {
  if (!(l_max > 0.0)) return 0.0;
  // B=2 reflects with amplitude 0: only the alternating word survives.
  if (g.size() == 2) return fits(2.0 * weyl_length(g), l_max) ? 1.0 : 0.0;
  const CountBox box(g, l_max);
  double total = 0.0;
  for_each_count(g, box, l_max, [&](std::size_t, const std::vector<std::size_t>& c, double) {
    const double n = std::accumulate(c.begin(), c.end(), 0.0);
    total += std::exp(log_multinomial(c)) / n;
  });
  return total;
}

std::vector<OrbitClass> enumerate_orbits(const StarGraph& g, double l_max, std::size_t cap) {
  if (!(l_max > 0.0)) throw DomainError("enumerate_orbits: l_max must be positive");
  const double estimate = orbit_class_estimate(g, l_max);
  if (estimate > static_cast<double>(cap)) throw OrbitCapExceeded(estimate, cap);

  const int B = static_cast<int>(g.size());
  double min_step = 2.0 * g.min_length();
  std::vector<OrbitClass> out;
  std::vector<int> a{0}; // a[0] is the sentinel of the prenecklace recursion

  // Prenecklace tree: a[1..t] with Lyndon period p; it is a Lyndon word iff p == t.
  std::function<void(std::size_t, std::size_t, double)> grow = [&](std::size_t t, std::size_t p, double length) {
    if (p == t) {
      std::vector<int> word(a.begin() + 1, a.end());
      const auto amp = cyclic_amplitude(g, word);
      if (amp != std::complex<double>(0.0, 0.0)) {
        out.push_back({std::move(word), length, amp});
        if (out.size() > cap) throw OrbitCapExceeded(estimate, cap);
      }
    }
    if (!fits(length + min_step, l_max)) return;
    for (int j = a[t + 1 - p]; j < B; ++j) {
      if (B == 2 && j == a[t]) continue; // zero reflection amplitude
      const double next = length + 2.0 * g.bonds()[j].length;
      if (!fits(next, l_max)) continue;
      a.push_back(j);
      grow(t + 1, j == a[t + 1 - p] ? p : t + 1, next);
      a.pop_back();
    }
  };
  for (int j = 0; j < B; ++j) {
    const double length = 2.0 * g.bonds()[j].length;
    if (!fits(length, l_max)) continue;
    a.push_back(j);
    grow(1, 1, length);
    a.pop_back();
  }
  std::sort(out.begin(), out.end(), [](const OrbitClass& x, const OrbitClass& y) {
    if (x.l_prim != y.l_prim) return x.l_prim < y.l_prim;
    return x.itinerary < y.itinerary;
  });
  return out;
}

std::vector<OrbitClass> enumerate_orbits(const Interval1D& iv, double l_max) {
  if (!(l_max > 0.0)) throw DomainError("enumerate_orbits: l_max must be positive");
  std::vector<OrbitClass> out;
  if (fits(2.0 * iv.a, l_max)) out.push_back({{0}, 2.0 * iv.a, iv.left.reflection() * iv.right.reflection()});
  return out;
}

std::vector<OrbitTerm> orbit_terms(const std::vector<OrbitClass>& classes, double l_max, std::optional<int> r_max) {
  std::vector<std::pair<const OrbitClass*, OrbitTerm>> tagged;
  for (const auto& p : classes) {
    for (int r = 1;; ++r) {
      if (r_max && r > *r_max) break;
      const double L = r * p.l_prim;
      if (!fits(L, l_max)) break;
      tagged.push_back({&p, {p.l_prim, r, L, std::pow(p.amplitude, r), orbit_energy_term(p.l_prim, p.amplitude, r)}});
    }
  }
  std::stable_sort(tagged.begin(), tagged.end(), [](const auto& x, const auto& y) {
    if (x.second.length != y.second.length) return x.second.length < y.second.length;
    return x.first->itinerary < y.first->itinerary;
  });
  std::vector<OrbitTerm> out;
  out.reserve(tagged.size());
  for (auto& t : tagged) out.push_back(t.second);
  return out;
}

OrbitSumResult orbit_sum_energy_enumerated(const StarGraph& g, double l_max, std::optional<int> r_max,
                                           std::size_t cap) {
  if (r_max && *r_max < 1) throw DomainError("r_max must be >= 1");
  const auto classes = enumerate_orbits(g, l_max, cap);
  const auto terms = orbit_terms(classes, l_max, r_max);
  std::vector<std::pair<double, double>> contrib;
  for (const auto& t : terms) contrib.emplace_back(t.length, t.delta_e);
  OrbitSumResult res;
  res.l_max = l_max;
  res.orbit_count = terms.size();
  res.per_length_partial = cumulative_by_length(std::move(contrib));
  res.energy = res.per_length_partial.empty() ? 0.0 : res.per_length_partial.back().second;
  return res;
}

OrbitSumResult orbit_sum_energy(const StarGraph& g, double l_max, std::optional<int> r_max, unsigned threads) {
  if (!(l_max > 0.0)) throw DomainError("orbit_sum_energy: l_max must be positive");
  if (r_max) {
    if (*r_max < 1) throw DomainError("r_max must be >= 1");
    const int r_default = static_cast<int>(std::ceil(l_max / (2.0 * g.min_length())));
    if (*r_max < r_default) return orbit_sum_energy_enumerated(g, l_max, r_max);
  }

  // Sum over closed words w (sequences, not classes) of -Re A_w / (2 pi n_w L_w);
  // each class p^r appears as n_p rotations, which reproduces the class sum.
  const std::size_t B = g.size();
  const CountBox box(g, l_max);
  if (box.size > 50'000'000 / B) throw OrbitCapExceeded(static_cast<double>(box.size), 50'000'000 / B);

  std::vector<double> length(box.size, 0.0);
  std::vector<std::size_t> letters(box.size, 0);
  for (std::size_t idx = 0; idx < box.size; ++idx)
    for (std::size_t j = 0; j < B; ++j) {
      const auto c = box.digit(idx, j);
      length[idx] += 2.0 * c * g.bonds()[j].length;
      letters[idx] += c;
    }

  std::vector<std::complex<double>> piston(B);
  for (std::size_t j = 0; j < B; ++j) piston[j] = g.bonds()[j].piston.reflection();

  std::vector<std::vector<std::complex<double>>> trace(B);
  parallel_for(B, threads, [&](std::size_t s) {
    auto& T = trace[s];
    T.assign(box.size, {0.0, 0.0});
    std::vector<std::complex<double>> dp(box.size * B, {0.0, 0.0});
    if (!fits(length[box.stride[s]], l_max)) return;
    dp[box.stride[s] * B + s] = piston[s];
    for (std::size_t idx = 1; idx < box.size; ++idx) {
      if (!fits(length[idx], l_max)) continue;
      for (std::size_t cur = 0; cur < B; ++cur) {
        const auto v = dp[idx * B + cur];
        if (v == std::complex<double>(0.0, 0.0)) continue;
        T[idx] += v * center_factor(B, static_cast<int>(cur), static_cast<int>(s));
        for (std::size_t j = 0; j < B; ++j) {
          if (box.digit(idx, j) + 1 >= box.radix[j]) continue;
          const std::size_t next = idx + box.stride[j];
          if (!fits(length[next], l_max)) continue;
          dp[next * B + j] += v * center_factor(B, static_cast<int>(cur), static_cast<int>(j)) * piston[j];
        }
      }
    }
  });

  std::vector<std::pair<double, double>> contrib;
  OrbitSumResult res;
  res.l_max = l_max;
  double classes = 0.0;
  for (std::size_t idx = 1; idx < box.size; ++idx) {
    if (!fits(length[idx], l_max)) continue;
    std::complex<double> t(0.0, 0.0);
    for (std::size_t s = 0; s < B; ++s) t += trace[s][idx];
    const double e = -t.real() / (2.0 * std::numbers::pi * static_cast<double>(letters[idx]) * length[idx]);
    if (e != 0.0) contrib.emplace_back(length[idx], e);
  }
  if (B == 2) {
    // Only the alternating word survives the transparent center.
    classes = std::floor(l_max * (1.0 + kLengthSlack) / (2.0 * (g.bonds()[0].length + g.bonds()[1].length)));
  } else {
    for_each_count(g, box, l_max,
                   [&](std::size_t, const std::vector<std::size_t>& c, double) { classes += necklace_count(c); });
  }
  res.orbit_count = static_cast<std::size_t>(std::llround(classes));
  res.per_length_partial = cumulative_by_length(std::move(contrib));
  res.energy = res.per_length_partial.empty() ? 0.0 : res.per_length_partial.back().second;
  return res;
}

OrbitSumResult orbit_sum_energy(const Interval1D& iv, double l_max, std::optional<int> r_max) {
  if (!(l_max > 0.0)) throw DomainError("orbit_sum_energy: l_max must be positive");
  const double l_prim = 2.0 * iv.a;
  const auto amp = iv.left.reflection() * iv.right.reflection();
  long R = static_cast<long>(std::floor(l_max * (1.0 + kLengthSlack) / l_prim));
  if (r_max) R = std::min<long>(R, *r_max);
  OrbitSumResult res;
  res.l_max = l_max;
  res.orbit_count = static_cast<std::size_t>(std::max(0L, R));
  // Ascending r; the partial list is thinned to keep it small for huge R.
  const long keep_every = std::max(1L, R / 1000);
  std::complex<double> power(1.0, 0.0);
  double acc = 0.0;
  for (long r = 1; r <= R; ++r) {
    power *= amp;
    const double L = r * l_prim;
    acc += -l_prim * power.real() / (2.0 * std::numbers::pi * L * L);
    if (r % keep_every == 0 || r == R) res.per_length_partial.emplace_back(L, acc);
  }
  res.energy = acc;
  // |sum_{r>R} A^r/r^2| / (4 pi a) <= 1/(4 pi a R)
  if (R >= 1) res.tail_bound = 1.0 / (4.0 * std::numbers::pi * iv.a * static_cast<double>(R));
  return res;
}

double shortest_orbit_energy(const StarGraph& g) {
  const double refl = 2.0 / static_cast<double>(g.size()) - 1.0;
  double e = 0.0;
  for (const auto& b : g.bonds()) e -= dilogarithm(refl * b.piston.reflection()).real() / b.length;
  return e / (4.0 * std::numbers::pi);
}

double shortest_orbit_force(const StarGraph& g, std::size_t bond) {
  if (bond >= g.size()) throw DomainError("bond index out of range");
  const auto& b = g.bonds()[bond];
  const double refl = 2.0 / static_cast<double>(g.size()) - 1.0;
  return -dilogarithm(refl * b.piston.reflection()).real() / (4.0 * std::numbers::pi * b.length * b.length);
}

namespace {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return std::nan("");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  return sxy / sxx;
}

} // namespace

ConvergenceTable convergence_study(const StarGraph& g, double spectrum_e0, const std::vector<double>& l_max_grid,
                                   unsigned threads) {
  ConvergenceTable table;
  if (l_max_grid.empty()) return table;
  std::vector<double> grid(l_max_grid);
  std::sort(grid.begin(), grid.end());
  const double top = 1.25 * grid.back();
  const auto res = orbit_sum_energy(g, top, std::nullopt, threads);
  const auto& partial = res.per_length_partial;

  auto energy_at = [&](double L) {
    double e = 0.0;
    for (const auto& [len, cum] : partial) {
      if (!fits(len, L)) break;
      e = cum;
    }
    return e;
  };

  std::vector<double> xs, raw, env;
  for (double L : grid) {
    const double e = energy_at(L);
    const double err = std::abs(e - spectrum_e0);
    table.rows.push_back({L, e, err});
    double worst = err;
    for (const auto& [len, cum] : partial)
      if (len > L && fits(len, 1.25 * L)) worst = std::max(worst, std::abs(cum - spectrum_e0));
    if (err > 0.0) {
      xs.push_back(L);
      raw.push_back(err);
      env.push_back(worst);
    }
  }
  table.slope = loglog_slope(xs, raw);
  table.envelope_slope = loglog_slope(xs, env);
  return table;
}

void write_orbit_csv(std::ostream& out, const std::vector<OrbitTerm>& terms) {
  out << "# units: lengths in length, delta_E in hbar*c/length\n";
  out << "l_prim,repetition,length,re_amplitude,im_amplitude,delta_E\n";
  out << std::setprecision(15);
  for (const auto& t : terms)
    out << t.l_prim << ',' << t.repetition << ',' << t.length << ',' << t.amplitude.real() << ','
        << t.amplitude.imag() << ',' << t.delta_e << '\n';
}

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table) {
  out << "# units: l_max in length, energy and abs_error in hbar*c/length\n";
  out << "l_max,energy,abs_error\n";
  out << std::setprecision(15);
  for (const auto& r : table.rows) out << r.l_max << ',' << r.energy << ',' << r.abs_error << '\n';
}

} // namespace casimir
