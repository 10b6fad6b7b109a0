#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "topocand/grid.hpp"

namespace topocand {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Parses a Matpower-style case (mpc.baseMVA, mpc.bus, mpc.gen, mpc.branch,
// mpc.gencost). All quantities are converted to per-unit on baseMVA.
// Out-of-service elements are retained with in_service = false.
// Unknown matrices and extra columns are ignored; a note per ignored matrix
// is appended to `warnings` when given.
Grid parse_matpower(const std::string& text, std::vector<std::string>* warnings = nullptr);

Grid load_matpower_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

}  // namespace topocand
