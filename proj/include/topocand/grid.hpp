#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace topocand {

enum class BusRole { Slack, Pv, Pq };

const char* to_string(BusRole role);
BusRole bus_role_from_string(const std::string& s);

struct Bus {
    int id = 0;
    BusRole role = BusRole::Pq;
    double vmin = 0.9;  // p.u.
    double vmax = 1.1;  // p.u.
    double base_kv = 0.0;

    bool operator==(const Bus&) const = default;
};

struct Branch {
    int id = 0;
    int from_bus = 0;
    int to_bus = 0;
    double r = 0.0;         // series resistance, p.u.
    double x = 0.0;         // series reactance, p.u.
    double b_charge = 0.0;  // total line charging susceptance, p.u.
    double tap = 1.0;       // off-nominal ratio, 1 = none
    double shift = 0.0;     // phase shift, rad
    double rate_a = 0.0;    // thermal limit, p.u. MVA; 0 = unlimited
    double ang_min = 0.0;   // rad
    double ang_max = 0.0;   // rad
    bool in_service = true;

    bool operator==(const Branch&) const = default;

    // series admittance g + jb
    std::pair<double, double> series_admittance() const {
        const double d = r * r + x * x;
        return {r / d, -x / d};
    }
};

struct GenCost {
    enum class Kind { Polynomial, Piecewise };
    Kind kind = Kind::Polynomial;
    // polynomial: $/h = c2*P^2 + c1*P + c0, P in MW
    double c2 = 0.0, c1 = 0.0, c0 = 0.0;
    // piecewise: (MW, $/h) breakpoints, non-decreasing in MW
    std::vector<std::pair<double, double>> points;

    bool operator==(const GenCost&) const = default;
};

struct Generator {
    int id = 0;
    int bus = 0;
    double pmin = 0.0, pmax = 0.0;  // p.u.
    double qmin = 0.0, qmax = 0.0;  // p.u.
    double vg = 1.0;                // voltage setpoint from the case file, p.u.
    bool in_service = true;
    GenCost cost;

    bool operator==(const Generator&) const = default;
};

struct Load {
    int id = 0;
    int bus = 0;
    double pd = 0.0, qd = 0.0;  // p.u.
    bool in_service = true;

    bool operator==(const Load&) const = default;
};

struct Shunt {
    int id = 0;
    int bus = 0;
    double gs = 0.0, bs = 0.0;  // p.u. admittance at V = 1
    bool in_service = true;

    bool operator==(const Shunt&) const = default;
};

struct ElementCount {
    int bus = 0;
    int n_branches = 0;
    int n_elements = 0;
};

// Immutable network case in per-unit. Bus ids are preserved from the source
// file; element ids are stable across serialization.
struct Grid {
    std::string name;
    double base_mva = 100.0;
    std::vector<Bus> buses;
    std::vector<Branch> branches;
    std::vector<Generator> generators;
    std::vector<Load> loads;
    std::vector<Shunt> shunts;

    bool operator==(const Grid&) const = default;

    int bus_index(int bus_id) const;         // -1 if unknown
    int require_bus_index(int bus_id) const; // throws on unknown
    const Bus& bus_by_id(int bus_id) const;
    int slack_bus_id() const;  // throws if not exactly one
};

// Incidence lookup built once per grid; positions refer to the grid's vectors.
struct GridIndex {
    std::unordered_map<int, int> bus_pos;
    std::vector<std::vector<int>> branches_at;  // per bus, incident branch positions
    std::vector<std::vector<int>> gens_at;
    std::vector<std::vector<int>> loads_at;
    std::vector<std::vector<int>> shunts_at;

    static GridIndex build(const Grid& grid);
};

struct ValidationIssue {
    std::string kind;  // "referential" | "bound" | "structural"
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

ValidationReport validate_grid(const Grid& grid);

// In-service incident branch ends plus generators, loads and shunts at the bus.
ElementCount count_elements(const Grid& grid, int bus_id);
ElementCount count_elements(const Grid& grid, const GridIndex& index, int bus_id);

// Connected components over in-service branches; returns bus ids with no path
// to the slack bus.
std::vector<int> islanded_buses(const Grid& grid);

}  // namespace topocand
