#include "experiments.hpp"

#include "casimir/billiards.hpp"
#include "casimir/errors.hpp"
#include "casimir/graph_spectrum.hpp"
#include "casimir/io.hpp"
#include "casimir/orbit_sum.hpp"
#include "casimir/parallel.hpp"
#include "casimir/regularization.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

namespace casimir {

using nlohmann::json;

namespace {

constexpr double pi = std::numbers::pi;

// ---- parameter access ------------------------------------------------------

class Params {
public:
  explicit Params(const json& j) : j_(j) {
    if (!j_.is_object()) throw ConfigError("parameters must be a JSON object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      try {
        std::size_t used = 0;
        const double d = std::stod(v.get<std::string>(), &used);
        if (used == v.get<std::string>().size()) return d;
      } catch (const std::exception&) {
      }
    }
    throw ConfigError("parameter '" + key + "' must be a number");
  }

  double positive(const std::string& key, double fallback) const {
    const double v = number(key, fallback);
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("parameter '" + key + "' must be positive");
    return v;
  }

  int integer(const std::string& key, int fallback) const {
    const double v = number(key, fallback);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("parameter '" + key + "' must be an integer");
    return static_cast<int>(v);
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw ConfigError("parameter '" + key + "' must be a string");
  }

  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    std::vector<double> out;
    if (v.is_array()) {
      for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError("parameter '" + key + "' must be a list of numbers");
        out.push_back(x.get<double>());
      }
    } else if (v.is_string()) {
      std::stringstream ss(v.get<std::string>());
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          out.push_back(std::stod(item));
        } catch (const std::exception&) {
          throw ConfigError("parameter '" + key + "' must be a comma-separated list of numbers");
        }
      }
    } else if (v.is_number()) {
      out.push_back(v.get<double>());
    } else {
      throw ConfigError("parameter '" + key + "' must be a list of numbers");
    }
    if (out.empty()) throw ConfigError("parameter '" + key + "' is empty");
    return out;
  }

  const json& raw() const { return j_; }

private:
  const json& j_;
};

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << v;
  return s.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Two-letter piston pair such as "DN".
std::pair<PistonCondition, PistonCondition> parse_pair(const std::string& bc) {
  if (bc.size() != 2) throw ConfigError("--bc must be two letters from {D,N}, e.g. DD or DN");
  return {parse_piston(bc.substr(0, 1)), parse_piston(bc.substr(1, 1))};
}

BoundaryKind parse_boundary(const std::string& s) {
  const auto p = parse_piston(s);
  return p.kind() == PistonKind::Dirichlet ? BoundaryKind::Dirichlet : BoundaryKind::Neumann;
}

// Graph from "graph" (file path) or inline "bonds", else lengths + pistons.
StarGraph graph_from(const Params& p) {
  if (p.has("graph")) return load_star_graph(p.text("graph", ""));
  if (p.has("bonds")) return parse_star_graph(p.raw());
  if (p.has("lengths") || p.has("pistons")) {
    const auto lengths = p.numbers("lengths", caption_lengths());
    return star_from_string(lengths, p.text("pistons", std::string(lengths.size(), 'N')));
  }
  throw ConfigError("a graph is required: --graph FILE, inline \"bonds\", or --lengths/--pistons");
}

FitWindow window_from(const Params& p, FitWindow w) {
  w.min_omega_t = p.positive("w_lo", w.min_omega_t);
  w.max_t_over_length = p.positive("w_hi", w.max_t_over_length);
  return w;
}

std::vector<double> t_grid_from(const Params& p, std::vector<double> fallback) {
  if (p.has("t_grid")) return p.numbers("t_grid", {});
  if (p.has("t_min") || p.has("t_max")) {
    const double lo = p.positive("t_min", fallback.front());
    const double hi = p.positive("t_max", fallback.back());
    return linear_grid(lo, hi, static_cast<std::size_t>(p.integer("t_points", 12)));
  }
  return fallback;
}

// ---- experiments -------------------------------------------------------------

ExperimentResult piston_1d(const Params& p, unsigned threads) {
  const auto [left, right] = parse_pair(p.text("bc", "DD"));
  const double a = p.positive("a", 1.0);
  const double omega_max = p.positive("omega_max", 800.0 / a);
  const double l_max = p.positive("l_max", 2.0e6 * a);
  const int degree = p.integer("degree", 3);
  const Interval1D iv(a, left, right);

  const double f_exact = interval_piston_force(iv);
  const auto spectrum = interval_spectrum(iv, omega_max);
  const auto grid = t_grid_from(p, default_t_grid(omega_max, a));
  const auto fit = fit_vacuum_energy(iv, spectrum, grid, degree, window_from(p, {}), threads);
  // E0 scales as 1/a, so -dE0/da = E0/a.
  const double f_spectral = fit.e0 / a;
  const auto orbit = orbit_sum_energy(iv, l_max);
  const double f_orbit = orbit.energy / a;
  const double f_orbit_bound = orbit.tail_bound.value_or(INFINITY) / a;

  json doc;
  doc["experiment"] = "piston-1d";
  doc["bc"] = left.label() + right.label();
  doc["a"] = a;
  doc["force_exact"] = f_exact;
  doc["force_spectral"] = f_spectral;
  doc["force_spectral_uncertainty"] = fit.uncertainty / a;
  doc["force_orbit"] = f_orbit;
  doc["force_orbit_tail_bound"] = f_orbit_bound;
  doc["energy_exact"] = interval_casimir_energy(iv);
  doc["fit"] = fit_report(fit);
  doc["units"] = "energy hbar*c/length, force hbar*c/length^2";

  ExperimentResult r;
  r.summary = "piston-1d bc=" + doc["bc"].get<std::string>() + " force=" + fixed(f_exact, 7) +
              " spectral=" + fixed(f_spectral, 7) + " orbit=" + fixed(f_orbit, 7) +
              " residual=" + sci(fit.uncertainty);
  r.document = dump(doc);
  return r;
}

ExperimentResult graph_energy(const Params& p, unsigned threads) {
  const auto g = graph_from(p);
  const double omega_max = p.positive("omega_max", 800.0 / g.min_length());
  const int degree = p.integer("degree", 3);
  const auto spectrum = find_spectrum(g, omega_max, threads);
  const auto count = spectral_count_check(spectrum, g);
  const auto grid = t_grid_from(p, default_t_grid(omega_max, g.min_length()));
  const auto fit = fit_vacuum_energy(g, spectrum, grid, degree, window_from(p, {}), threads);

  json doc = fit_report(fit);
  doc["experiment"] = "graph-energy";
  doc["modes"] = spectrum.total_count();
  doc["count_check"] = {{"passed", count.passed},
                        {"max_deviation", count.max_deviation},
                        {"flagged_windows", count.flagged.size()}};
  doc["warnings"] = spectrum.warnings;
  doc["units"] = "E0 in hbar*c/length, t in length, omega in 1/length";

  if (p.has("spectrum_csv")) {
    std::ostringstream csv;
    write_spectrum_csv(csv, spectrum);
    atomic_write(p.text("spectrum_csv", ""), csv.str());
  }

  ExperimentResult r;
  r.summary = "graph-energy B=" + std::to_string(g.size()) + " E0=" + fixed(fit.e0, 8) +
              " residual=" + sci(fit.uncertainty) + " count_check=" + (count.passed ? "pass" : "FAIL");
  r.document = dump(doc);
  return r;
}

ExperimentResult graph_orbits(const Params& p, unsigned) {
  const auto g = graph_from(p);
  const double l_max = p.positive("l_max", 8.0 * weyl_length(g) / static_cast<double>(g.size()));
  std::optional<int> r_max;
  if (p.has("r_max")) r_max = p.integer("r_max", 1);
  const auto cap = static_cast<std::size_t>(p.positive("cap", static_cast<double>(kDefaultOrbitCap)));
  const auto classes = enumerate_orbits(g, l_max, cap);
  const auto terms = orbit_terms(classes, l_max, r_max);
  double energy = 0.0;
  for (const auto& t : terms) energy += t.delta_e;

  std::ostringstream csv;
  write_orbit_csv(csv, terms);
  ExperimentResult r;
  r.summary = "graph-orbits B=" + std::to_string(g.size()) + " l_max=" + fixed(l_max, 4) +
              " classes=" + std::to_string(classes.size()) + " terms=" + std::to_string(terms.size()) +
              " E_orbit=" + fixed(energy, 8);
  r.document = csv.str();
  return r;
}

ExperimentResult orbit_convergence(const Params& p, unsigned threads) {
  const json caption{{"pistons", "NNNN"}};
  const bool explicit_graph = p.has("graph") || p.has("bonds") || p.has("lengths") || p.has("pistons");
  const auto g = explicit_graph ? graph_from(p) : graph_from(Params(caption));
  const double omega_max = p.positive("omega_max", 800.0 / g.min_length());
  const double lo = p.positive("l_min", 10.0);
  const double hi = p.positive("l_max", 40.0);
  if (!(hi > lo)) throw ConfigError("l_max must exceed l_min");
  const int points = p.integer("points", 31);
  if (points < 2) throw ConfigError("points must be >= 2");
  const auto grid = geometric_grid(lo, hi, static_cast<std::size_t>(points));

  const auto spectrum = find_spectrum(g, omega_max, threads);
  const auto fit = fit_vacuum_energy(g, spectrum, default_t_grid(omega_max, g.min_length()), 3, {}, threads);
  const auto table = convergence_study(g, fit.e0, grid, threads);

  std::ostringstream csv;
  csv << "# E0_spectral=" << std::setprecision(15) << fit.e0 << " uncertainty=" << fit.uncertainty
      << " slope=" << table.slope << " envelope_slope=" << table.envelope_slope << "\n";
  write_convergence_csv(csv, table);
  ExperimentResult r;
  r.summary = "orbit-convergence E0=" + fixed(fit.e0, 8) + " slope=" + fixed(table.slope, 3) +
              " envelope_slope=" + fixed(table.envelope_slope, 3) + " residual=" + sci(fit.uncertainty);
  r.document = csv.str();
  return r;
}

ExperimentResult star_sweep(const Params& p, unsigned threads) {
  const auto piston = parse_piston(p.text("bc", "neumann"));
  const auto Bs = parse_int_range(p.text("B", "2..30"));
  const double a = p.positive("a", 1.0);
  const double omega_max = p.positive("omega_max", 800.0 / a);
  for (int B : Bs)
    if (B < 2) throw ConfigError("B must be >= 2");

  std::ostringstream csv;
  csv << "# units: forces in hbar*c/length^2 (force on one piston)\n";
  csv << "B,F_exact,F_shortest\n" << std::setprecision(15);
  double worst = 0.0;
  for (int B : Bs) {
    const auto row = star_sweep_row(B, a, piston, omega_max, threads);
    csv << row.B << ',' << row.f_exact << ',' << row.f_shortest << '\n';
    if (B >= 8) worst = std::max(worst, std::abs(row.f_shortest - row.f_exact) / std::abs(row.f_exact));
  }
  ExperimentResult r;
  r.summary = "star-sweep bc=" + piston.label() + " points=" + std::to_string(Bs.size()) +
              " max_rel_diff(B>=8)=" + fixed(worst, 4);
  r.document = csv.str();
  return r;
}

RectangleGeometry rectangle_from(const Params& p) {
  return RectangleGeometry(p.positive("a", 1.0), p.positive("b", 1.0), parse_boundary(p.text("bc", "dirichlet")));
}

ExperimentResult rect_energy(const Params& p, unsigned) {
  const auto g = rectangle_from(p);
  const double e = rectangle_energy_finite(g);
  json doc{{"experiment", "rect-energy"},
           {"a", g.a},
           {"b", g.b},
           {"bc", g.condition == BoundaryKind::Dirichlet ? "dirichlet" : "neumann"},
           {"E0", e},
           {"units", "E0 in hbar*c/length"}};
  ExperimentResult r;
  r.summary = "rect-energy E0=" + fixed(e, 10) + " residual=0";
  r.document = dump(doc);
  return r;
}

ExperimentResult rect_numeric(const Params& p, unsigned threads) {
  const auto g = rectangle_from(p);
  const double omega_max = p.positive("omega_max", 300.0 / std::min(g.a, g.b));
  const auto grid = t_grid_from(p, rectangle_t_grid(g, omega_max));
  const auto fit = rectangle_numeric_E0(g, omega_max, grid, p.integer("degree", kRectangleFitDegree),
                                        window_from(p, rectangle_fit_window()), threads);
  const double closed = rectangle_energy_finite(g);
  json doc = fit_report(fit);
  doc["experiment"] = "rect-numeric";
  doc["E0_closed_form"] = closed;
  doc["difference"] = fit.e0 - closed;
  doc["units"] = "E0 in hbar*c/length, t in length";
  ExperimentResult r;
  r.summary = "rect-numeric E0=" + fixed(fit.e0, 8) + " closed_form=" + fixed(closed, 8) +
              " residual=" + sci(fit.uncertainty);
  r.document = dump(doc);
  return r;
}

ExperimentResult rect_piston_force(const Params& p, unsigned threads) {
  const double b = p.positive("b", 1.0);
  std::vector<double> as;
  if (p.has("a")) {
    as = p.numbers("a", {});
  } else {
    const int points = p.integer("points", 41);
    if (points < 2) throw ConfigError("points must be >= 2");
    as = geometric_grid(p.positive("a_min", 0.1 * b), p.positive("a_max", 10.0 * b),
                        static_cast<std::size_t>(points));
  }
  for (double a : as)
    if (!(a > 0.0)) throw ConfigError("piston separations must be positive");
  std::vector<std::array<double, 3>> rows(as.size());
  parallel_for(as.size(), threads, [&](std::size_t i) {
    rows[i] = {as[i], b, piston_force_2d_sum(as[i], b).value()};
  });
  bool attractive = true;
  for (const auto& row : rows) attractive = attractive && row[2] < 0.0;
  std::ostringstream csv;
  write_force_csv(csv, rows);
  ExperimentResult r;
  r.summary = "rect-piston-force points=" + std::to_string(rows.size()) + " F(first)=" +
              fixed(rows.front()[2], 10) + " attractive=" + (attractive ? "yes" : "NO");
  r.document = csv.str();
  return r;
}

PistolGeometry pistol_from(const Params& p, double r) {
  const double s = p.positive("s", 50.0);
  return PistolGeometry(r, s, p.positive("u", 10.0), p.positive("ell", 2.0 * s + 100.0));
}

ExperimentResult pistol_energy_exp(const Params& p, unsigned) {
  const auto g = pistol_from(p, p.positive("r", 0.5));
  const auto t = pistol_energy_terms(g);
  json doc{{"experiment", "pistol-energy"},
           {"r", g.r},
           {"s", g.s},
           {"u", g.u},
           {"ell", g.ell},
           {"E_coefficient", t.total()},
           {"terms",
            {{"barrel_k", t.barrel_k},
             {"barrel_j", t.barrel_j},
             {"barrel_jk", t.barrel_jk},
             {"chamber", t.chamber},
             {"gaps", t.gaps}}},
           {"abs_error_bound", t.abs_error_bound},
           {"regime", pistol_regime(g)},
           {"units", "energy = E_coefficient * hbar*c / t (t the scale length)"}};
  ExperimentResult r;
  r.summary = "pistol-energy E=" + fixed(t.total(), 10) + " regime=" + pistol_regime(g) +
              " residual=" + sci(t.abs_error_bound);
  r.document = dump(doc);
  return r;
}

ExperimentResult pistol_force_exp(const Params& p, unsigned threads) {
  const auto rs = p.numbers("r", {0.4, 0.5, 0.5888, 0.7, 0.8});
  const double step = p.positive("step", 0.05);
  std::vector<double> forces(rs.size());
  std::vector<std::string> regimes(rs.size());
  parallel_for(rs.size(), threads, [&](std::size_t i) {
    const auto g = pistol_from(p, rs[i]);
    forces[i] = pistol_force(g, step);
    regimes[i] = pistol_regime(g);
  });
  std::ostringstream csv;
  csv << "# units: r,s,u,ell in units of t; F coefficient of hbar*c/t^2\n";
  csv << "r,s,u,ell,F,regime\n" << std::setprecision(15);
  const auto g0 = pistol_from(p, rs.front());
  for (std::size_t i = 0; i < rs.size(); ++i)
    csv << rs[i] << ',' << g0.s << ',' << g0.u << ',' << g0.ell << ',' << forces[i] << ',' << regimes[i] << '\n';
  ExperimentResult r;
  r.summary = "pistol-force points=" + std::to_string(rs.size()) + " F(r=" + fixed(rs.front(), 4) +
              ")=" + fixed(forces.front(), 10);
  r.document = csv.str();
  return r;
}

ExperimentResult pistol_crossover(const Params&, unsigned) {
  const double alpha = pistol_gap_crossover();
  json doc{{"alpha", alpha}};
  ExperimentResult r;
  r.summary = "pistol-crossover alpha=" + fixed(alpha, 10) + " residual=" + sci(std::abs(pistol_gap_function(alpha)));
  r.document = dump(doc);
  return r;
}

ExperimentResult selftest(const Params&, unsigned threads) {
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, double value, double reference, double tolerance) {
    const bool ok = std::abs(value - reference) <= tolerance;
    all = all && ok;
    checks.push_back({{"check", name}, {"value", value}, {"reference", reference},
                      {"tolerance", tolerance}, {"passed", ok}});
  };

  {
    const Interval1D dd(1.0, PistonCondition::dirichlet(), PistonCondition::dirichlet());
    const auto fit = fit_vacuum_energy(dd, interval_spectrum(dd, 800.0), default_t_grid(800.0, 1.0), 3, {}, threads);
    record("interval DD spectral E0", fit.e0, -pi / 24.0, 1e-4);
    const auto orbit = orbit_sum_energy(dd, 2.0e6);
    record("interval DD orbit E0", orbit.energy, -pi / 24.0, *orbit.tail_bound);
  }
  {
    // B=2 star is a single interval of length a1+a2.
    const StarGraph g({{0.7, PistonCondition::dirichlet()}, {1.3, PistonCondition::neumann()}});
    const auto s = find_spectrum(g, 200.0, threads);
    double worst = 0.0;
    for (std::size_t n = 0; n < s.modes.size(); ++n)
      worst = std::max(worst, std::abs(s.modes[n].omega - (n + 0.5) * pi / 2.0));
    record("B=2 star vs interval roots", worst, 0.0, 1e-10);
  }
  {
    const RectangleGeometry g(1.0, 1.0, BoundaryKind::Dirichlet);
    const auto fit = rectangle_numeric_E0(g, 300.0, threads);
    record("rectangle 1x1 closed form vs spectral", fit.e0, rectangle_energy_finite(g), 3.0 * fit.uncertainty);
  }
  {
    const double h = 2.5e-3;
    auto e = [](double a) { return piston_composite_energy(PistonGeometry2D(a, 1.0, 10.0)); };
    const double fd = -(e(1 - 2 * h) - 8 * e(1 - h) + 8 * e(1 + h) - e(1 + 2 * h)) / (12 * h);
    const double f = piston_force_2d(PistonGeometry2D(1.0, 1.0, 10.0));
    record("piston force vs energy finite difference", f, fd, 1e-6 * std::abs(fd));
  }
  record("pistol crossover", pistol_gap_crossover(), 0.5888, 1e-3);

  json doc{{"experiment", "selftest"}, {"checks", checks}, {"passed", all}};
  std::size_t passed = 0;
  for (const auto& c : checks) passed += c["passed"].get<bool>() ? 1 : 0;
  ExperimentResult r;
  r.summary = "selftest " + std::to_string(passed) + "/" + std::to_string(checks.size()) + " passed" +
              (all ? "" : " FAIL");
  r.document = dump(doc);
  r.passed = all;
  return r;
}

using Runner = std::function<ExperimentResult(const Params&, unsigned)>;

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> r{
      {"piston-1d", piston_1d},
      {"graph-energy", graph_energy},
      {"graph-orbits", graph_orbits},
      {"orbit-convergence", orbit_convergence},
      {"star-sweep", star_sweep},
      {"rect-energy", rect_energy},
      {"rect-numeric", rect_numeric},
      {"rect-piston-force", rect_piston_force},
      {"pistol-energy", pistol_energy_exp},
      {"pistol-force", pistol_force_exp},
      {"pistol-crossover", pistol_crossover},
      {"selftest", selftest},
  };
  return r;
}

} // namespace

const std::vector<std::string>& registered_experiments() {
  static const std::vector<std::string> names{"piston-1d",   "graph-energy",      "graph-orbits",
                                              "orbit-convergence", "star-sweep", "rect-energy",
                                              "rect-numeric", "rect-piston-force", "pistol-energy",
                                              "pistol-force", "pistol-crossover", "selftest"};
  return names;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto it = registry().find(config.experiment);
  if (it == registry().end()) throw ConfigError("unknown experiment '" + config.experiment + "'");
  if (config.threads < 1) throw ConfigError("thread count must be >= 1");
  const Params p(config.params);
  try {
    return it->second(p, config.threads);
  } catch (const DomainError& e) {
    // Geometry constructors reject bad numbers; for the CLI that is a config error.
    throw ConfigError(e.what());
  }
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto result = run_experiment(config);
    if (config.output) {
      atomic_write(*config.output, result.document);
      out << result.summary << " -> " << config.output->string() << "\n";
    } else {
      out << result.summary << "\n" << result.document;
    }
    return result.passed ? 0 : 3;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const WindowViolation& e) {
    err << "window violation: " << e.what() << "\n";
    return 4;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed config " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  for (auto& [key, value] : j.items()) {
    if (key == "experiment") {
      if (!value.is_string()) throw ConfigError("\"experiment\" must be a string");
      c.experiment = value.get<std::string>();
    } else if (key == "output") {
      if (!value.is_string()) throw ConfigError("\"output\" must be a string");
      c.output = value.get<std::string>();
    } else if (key == "threads") {
      if (!value.is_number_integer() || value.get<long long>() < 1) throw ConfigError("\"threads\" must be >= 1");
      c.threads = static_cast<unsigned>(value.get<long long>());
    } else {
      c.params[key] = value;
    }
  }
  return c;
}

std::vector<int> parse_int_range(const std::string& s) {
  std::vector<int> out;
  auto to_int = [&](const std::string& t) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(t, &used);
      if (used != t.size()) throw ConfigError("bad integer '" + t + "'");
      return v;
    } catch (const std::logic_error&) {
      throw ConfigError("bad integer '" + t + "' in '" + s + "'");
    }
  };
  const auto dots = s.find("..");
  if (dots != std::string::npos) {
    const int lo = to_int(s.substr(0, dots));
    const int hi = to_int(s.substr(dots + 2));
    if (hi < lo) throw ConfigError("empty range '" + s + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_int(item));
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

StarGraph star_from_string(const std::vector<double>& lengths, const std::string& pistons) {
  if (lengths.size() != pistons.size())
    throw ConfigError("need one piston letter per bond length (" + std::to_string(lengths.size()) + ")");
  std::vector<Bond> bonds;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (!(lengths[i] > 0.0)) throw ConfigError("bond lengths must be positive");
    bonds.push_back({lengths[i], parse_piston(std::string(1, pistons[i]))});
  }
  if (bonds.size() < 2) throw ConfigError("a star graph needs at least 2 bonds");
  return StarGraph(std::move(bonds));
}

const std::vector<double>& caption_lengths() {
  static const std::vector<double> l{1.1, 1.6176, 1.2985, 1.1159};
  return l;
}

StarSweepRow star_sweep_row(int B, double a, PistonCondition p, double omega_max, unsigned threads) {
  const auto g = StarGraph::equal(static_cast<std::size_t>(B), a, p);
  const auto s = find_spectrum(g, omega_max, threads);
  const auto fit = fit_vacuum_energy(g, s, default_t_grid(omega_max, a), 3, {}, threads);
  // + 0.0 turns the -0 of a transparent vertex (B=2) into 0.
  return {B, fit.e0 / (B * a), shortest_orbit_force(g, 0) + 0.0};
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t n) {
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return out;
}

} // namespace casimir
