#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "topocand/grid.hpp"
#include "topocand/lpac.hpp"
#include "topocand/milp.hpp"

namespace topocand {

enum class ElementKind { BranchFrom, BranchTo, Gen, LoadElem, ShuntElem };

const char* to_string(ElementKind k);

struct ElementRef {
    ElementKind kind = ElementKind::Gen;
    int position = -1;  // index into the base grid's vector
    int id = 0;
};

// One rewired element: an auxiliary bus carrying the element plus a switch to
// the original bus and one to its twin.
struct SwitchPair {
    ElementRef element;
    int aux_bus = 0;
    double p_bound = 0.0;  // symmetric switch flow limits, at least the element rating
    double q_bound = 0.0;
};

struct SplitGrid {
    Grid base;
    Grid expanded;  // twin + auxiliary buses, incident elements rewired
    int target_bus = 0;
    int twin_bus = 0;
    std::vector<SwitchPair> switches;
    double coupler_p_bound = 0.0;
    double coupler_q_bound = 0.0;
};

SplitGrid expand_busbar(const Grid& grid, int bus_id);

struct SplitOptions {
    LpacOptions lpac;
    bool allow_disconnection = true;  // pair exclusivity as <= 1; false forces == 1
    bool strict_coupler = false;      // closed coupler also forces main-side switches closed
    bool force_null = false;          // pin the original topology
    double switch_bound_factor = 1.5;
};

struct BusSplitModel {
    MilpProblem milp;
    LpacIndex lpac_index;  // over the expanded grid
    std::vector<int> z_to_main, z_to_twin;                    // per switch pair
    std::vector<int> p_sw_main, q_sw_main, p_sw_twin, q_sw_twin;
    std::vector<ElementKind> pair_kinds;
    int z_coupler = -1;
    int p_coupler = -1, q_coupler = -1;
};

BusSplitModel build_bus_milp(const SplitGrid& split, const SplitOptions& opts = {});

// Solves the split MILP with the original topology seeded as the incumbent:
// relaxation first, then a warm fix of all switches onto the main section,
// then branch-and-bound from that basis.
MilpSolution solve_split_milp(const BusSplitModel& model, const MilpOptions& opts = {});

struct TopologyAssignment {
    enum class Placement { OnMain, OnTwin, Disconnected };
    std::vector<Placement> placements;  // parallel to SplitGrid::switches
    bool coupler_closed = true;
    std::vector<int> islanded_buses;

    nlohmann::ordered_json to_json(const SplitGrid& split) const;
};

const char* to_string(TopologyAssignment::Placement p);

// Collapses closed switches, drops open pairs as out-of-service elements and
// merges the twin back when the coupler is closed. The returned grid reuses
// the base grid's element ids.
std::pair<Grid, TopologyAssignment> extract_topology(const SplitGrid& split,
                                                     const BusSplitModel& model,
                                                     const MilpSolution& sol);

}  // namespace topocand
