#pragma once

#include "casimir/graph_model.hpp"
#include "casimir/regularization.hpp"

#include <filesystem>
#include <json.hpp>
#include <string>

namespace casimir {

// { "bonds": [ {"length": 1.1, "piston": "neumann"}, {"length": 2.0, "piston": {"phase": 1.3}} ] }
StarGraph parse_star_graph(const nlohmann::json& j);
StarGraph load_star_graph(const std::filesystem::path& path);

nlohmann::json fit_report(const EnergyFit& fit);

// Writes to a sibling temporary file and renames it over the target.
void atomic_write(const std::filesystem::path& path, const std::string& contents);

} // namespace casimir
