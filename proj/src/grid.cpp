#include "topocand/grid.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace topocand {

const char* to_string(BusRole role) {
    switch (role) {
        case BusRole::Slack: return "slack";
        case BusRole::Pv: return "pv";
        case BusRole::Pq: return "pq";
    }
    return "?";
}

BusRole bus_role_from_string(const std::string& s) {
    if (s == "slack") return BusRole::Slack;
    if (s == "pv") return BusRole::Pv;
    if (s == "pq") return BusRole::Pq;
    throw std::invalid_argument("unknown bus role: " + s);
}

int Grid::bus_index(int bus_id) const {
    for (size_t i = 0; i < buses.size(); ++i) {
        if (buses[i].id == bus_id) return static_cast<int>(i);
    }
    return -1;
}

int Grid::require_bus_index(int bus_id) const {
    const int idx = bus_index(bus_id);
    if (idx < 0) throw std::out_of_range("unknown bus id " + std::to_string(bus_id));
    return idx;
}

const Bus& Grid::bus_by_id(int bus_id) const {
    return buses[static_cast<size_t>(require_bus_index(bus_id))];
}

int Grid::slack_bus_id() const {
    int found = -1;
    for (const auto& b : buses) {
        if (b.role == BusRole::Slack) {
            if (found >= 0) throw std::logic_error("multiple slack buses");
            found = b.id;
        }
    }
    if (found < 0) throw std::logic_error("no slack bus");
    return found;
}

GridIndex GridIndex::build(const Grid& grid) {
    GridIndex idx;
    idx.bus_pos.reserve(grid.buses.size());
    for (size_t i = 0; i < grid.buses.size(); ++i) {
        idx.bus_pos.emplace(grid.buses[i].id, static_cast<int>(i));
    }
    const size_t n = grid.buses.size();
    idx.branches_at.resize(n);
    idx.gens_at.resize(n);
    idx.loads_at.resize(n);
    idx.shunts_at.resize(n);
    auto pos = [&](int bus_id) {
        auto it = idx.bus_pos.find(bus_id);
        if (it == idx.bus_pos.end()) {
            throw std::out_of_range("unknown bus id " + std::to_string(bus_id));
        }
        return static_cast<size_t>(it->second);
    };
    for (size_t i = 0; i < grid.branches.size(); ++i) {
        idx.branches_at[pos(grid.branches[i].from_bus)].push_back(static_cast<int>(i));
        idx.branches_at[pos(grid.branches[i].to_bus)].push_back(static_cast<int>(i));
    }
    for (size_t i = 0; i < grid.generators.size(); ++i) {
        idx.gens_at[pos(grid.generators[i].bus)].push_back(static_cast<int>(i));
    }
    for (size_t i = 0; i < grid.loads.size(); ++i) {
        idx.loads_at[pos(grid.loads[i].bus)].push_back(static_cast<int>(i));
    }
    for (size_t i = 0; i < grid.shunts.size(); ++i) {
        idx.shunts_at[pos(grid.shunts[i].bus)].push_back(static_cast<int>(i));
    }
    return idx;
}

namespace {

void check_bus_ref(const Grid& grid, std::vector<ValidationIssue>& issues,
                   const char* what, int element_id, int bus_id) {
    if (grid.bus_index(bus_id) < 0) {
        std::ostringstream os;
        os << what << " " << element_id << " references missing bus " << bus_id;
        issues.push_back({"referential", os.str()});
    }
}

}  // namespace

ValidationReport validate_grid(const Grid& grid) {
    ValidationReport report;
    auto& issues = report.issues;

    if (!(grid.base_mva > 0)) {
        issues.push_back({"bound", "base_mva must be positive"});
    }
    int n_slack = 0;
    for (const auto& b : grid.buses) {
        if (b.role == BusRole::Slack) ++n_slack;
        if (!(b.vmin > 0) || !(b.vmin <= b.vmax)) {
            issues.push_back({"bound", "bus " + std::to_string(b.id) +
                                           " violates 0 < vmin <= vmax"});
        }
    }
    if (n_slack != 1) {
        issues.push_back({"structural", "expected exactly one slack bus, found " +
                                            std::to_string(n_slack)});
    }
    for (const auto& br : grid.branches) {
        check_bus_ref(grid, issues, "branch", br.id, br.from_bus);
        check_bus_ref(grid, issues, "branch", br.id, br.to_bus);
        if (br.in_service && br.x == 0.0) {
            issues.push_back({"bound", "in-service branch " + std::to_string(br.id) +
                                           " has zero reactance"});
        }
        if (br.rate_a < 0) {
            issues.push_back({"bound", "branch " + std::to_string(br.id) +
                                           " has negative rate_a"});
        }
        if (!(br.ang_min <= 0.0 && 0.0 <= br.ang_max)) {
            issues.push_back({"bound", "branch " + std::to_string(br.id) +
                                           " angle bounds must bracket zero"});
        }
    }
    for (const auto& g : grid.generators) {
        check_bus_ref(grid, issues, "generator", g.id, g.bus);
        if (g.pmin > g.pmax) {
            issues.push_back({"bound", "generator " + std::to_string(g.id) +
                                           " has pmin > pmax"});
        }
        if (g.qmin > g.qmax) {
            issues.push_back({"bound", "generator " + std::to_string(g.id) +
                                           " has qmin > qmax"});
        }
    }
    for (const auto& l : grid.loads) {
        check_bus_ref(grid, issues, "load", l.id, l.bus);
    }
    for (const auto& s : grid.shunts) {
        check_bus_ref(grid, issues, "shunt", s.id, s.bus);
    }
    return report;
}

ElementCount count_elements(const Grid& grid, const GridIndex& index, int bus_id) {
    auto it = index.bus_pos.find(bus_id);
    if (it == index.bus_pos.end()) {
        throw std::out_of_range("unknown bus id " + std::to_string(bus_id));
    }
    const size_t p = static_cast<size_t>(it->second);
    ElementCount count;
    count.bus = bus_id;
    for (int bi : index.branches_at[p]) {
        if (grid.branches[static_cast<size_t>(bi)].in_service) ++count.n_branches;
    }
    count.n_elements = count.n_branches;
    for (int gi : index.gens_at[p]) {
        if (grid.generators[static_cast<size_t>(gi)].in_service) ++count.n_elements;
    }
    for (int li : index.loads_at[p]) {
        if (grid.loads[static_cast<size_t>(li)].in_service) ++count.n_elements;
    }
    for (int si : index.shunts_at[p]) {
        if (grid.shunts[static_cast<size_t>(si)].in_service) ++count.n_elements;
    }
    return count;
}

ElementCount count_elements(const Grid& grid, int bus_id) {
    return count_elements(grid, GridIndex::build(grid), bus_id);
}

std::vector<int> islanded_buses(const Grid& grid) {
    const GridIndex index = GridIndex::build(grid);
    const size_t n = grid.buses.size();
    std::vector<char> seen(n, 0);
    const int slack_pos = grid.require_bus_index(grid.slack_bus_id());
    std::queue<int> frontier;
    frontier.push(slack_pos);
    seen[static_cast<size_t>(slack_pos)] = 1;
    while (!frontier.empty()) {
        const int p = frontier.front();
        frontier.pop();
        for (int bi : index.branches_at[static_cast<size_t>(p)]) {
            const auto& br = grid.branches[static_cast<size_t>(bi)];
            if (!br.in_service) continue;
            for (int end : {br.from_bus, br.to_bus}) {
                const int q = grid.require_bus_index(end);
                if (!seen[static_cast<size_t>(q)]) {
                    seen[static_cast<size_t>(q)] = 1;
                    frontier.push(q);
                }
            }
        }
    }
    std::vector<int> out;
    for (size_t i = 0; i < n; ++i) {
        if (!seen[i]) out.push_back(grid.buses[i].id);
    }
    return out;
}

}  // namespace topocand
