#include "casimir/io.hpp"
#include "casimir/errors.hpp"

#include <fstream>
#include <sstream>

namespace casimir {

StarGraph parse_star_graph(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("bonds") || !j["bonds"].is_array())
    throw ConfigError("graph description needs a \"bonds\" array");
  std::vector<Bond> bonds;
  for (const auto& b : j["bonds"]) {
    if (!b.is_object() || !b.contains("length") || !b["length"].is_number())
      throw ConfigError("each bond needs a numeric \"length\"");
    const double length = b["length"].get<double>();
    PistonCondition piston = PistonCondition::neumann();
    if (b.contains("piston")) {
      const auto& p = b["piston"];
      if (p.is_string())
        piston = parse_piston(p.get<std::string>());
      else if (p.is_object() && p.contains("phase") && p["phase"].is_number())
        piston = PistonCondition::phase(p["phase"].get<double>());
      else
        throw ConfigError("piston must be \"dirichlet\", \"neumann\" or {\"phase\": theta}");
    }
    if (!(length > 0.0)) throw ConfigError("bond lengths must be positive");
    bonds.push_back({length, piston});
  }
  if (bonds.size() < 2) throw ConfigError("a star graph needs at least 2 bonds");
  return StarGraph(std::move(bonds));
}

StarGraph load_star_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open graph file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed graph file " + path.string() + ": " + e.what());
  }
  return parse_star_graph(j);
}

nlohmann::json fit_report(const EnergyFit& fit) {
  nlohmann::json j;
  j["E0"] = fit.e0;
  j["alpha"] = fit.alpha;
  j["residual_rms"] = fit.residual_rms;
  j["uncertainty"] = fit.uncertainty;
  std::vector<double> t;
  for (const auto& s : fit.samples) t.push_back(s.t);
  j["t_grid"] = t;
  j["omega_max"] = fit.omega_max;
  j["degree"] = fit.degree;
  return j;
}

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw ConfigError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ConfigError("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

} // namespace casimir
