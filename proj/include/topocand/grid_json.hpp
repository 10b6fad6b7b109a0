#pragma once

#include <string>

#include "topocand/grid.hpp"

#include <json.hpp>

namespace topocand {

// Canonical JSON snapshot with stable key order, suitable for fixtures.
nlohmann::ordered_json grid_to_json(const Grid& grid);
Grid grid_from_json(const nlohmann::ordered_json& j);

void save_grid_json(const Grid& grid, const std::string& path);
Grid load_grid_json(const std::string& path);

}  // namespace topocand
