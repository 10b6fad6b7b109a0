#include <doctest.h>

#include <cmath>

#include "test_paths.hpp"
#include "topocand/bus_split.hpp"
#include "topocand/matpower.hpp"

using namespace topocand;

namespace {

// two branches, one generator and one load on the target busbar
Grid station_grid() {
    Grid g;
    g.base_mva = 100.0;
    g.buses = {{1, BusRole::Slack, 0.9, 1.1, 345.0},
               {2, BusRole::Pq, 0.9, 1.1, 345.0},
               {3, BusRole::Pq, 0.9, 1.1, 345.0}};
    Branch a{1, 1, 3, 0.002, 0.02, 0.0, 1.0, 0.0, 3.0, -0.5, 0.5, true};
    Branch b{2, 2, 3, 0.002, 0.02, 0.0, 1.0, 0.0, 3.0, -0.5, 0.5, true};
    Branch c{3, 1, 2, 0.004, 0.04, 0.0, 1.0, 0.0, 0.8, -0.5, 0.5, true};
    g.branches = {a, b, c};
    Generator cheap{1, 1, 0.0, 10.0, -5.0, 5.0, 1.0, true, {}};
    cheap.cost.c1 = 10.0;
    Generator local{2, 3, 0.0, 5.0, -3.0, 3.0, 1.0, true, {}};
    local.cost.c1 = 35.0;
    g.generators = {cheap, local};
    g.loads = {{1, 3, 1.2, 0.2, true}, {2, 2, 1.5, 0.3, true}};
    return g;
}

}  // namespace

TEST_CASE("expansion bookkeeping for a four-element busbar") {
    const Grid g = station_grid();
    const SplitGrid split = expand_busbar(g, 3);
    CHECK(split.switches.size() == 4);  // 2 branches + gen + load
    CHECK(split.expanded.buses.size() == 3 + 1 + 4);  // twin + one aux per element
    CHECK(split.twin_bus == 4);
    // rewired endpoints point at auxiliary buses, everything else untouched
    CHECK(split.expanded.branches[0].to_bus != 3);
    CHECK(split.expanded.branches[1].to_bus != 3);
    CHECK(split.expanded.branches[2].from_bus == 1);
    CHECK(split.expanded.generators[1].bus != 3);
    CHECK(split.expanded.loads[0].bus != 3);
    CHECK(split.base == g);
    // switch bounds cover the element ratings
    for (const auto& pair : split.switches) {
        CHECK(pair.p_bound >= 0.1);
        CHECK(pair.q_bound >= 0.1);
    }
}

TEST_CASE("expansion edge cases") {
    SUBCASE("single-load bus yields one pair") {
        Grid g = station_grid();
        g.buses.push_back({9, BusRole::Pq, 0.9, 1.1, 345.0});
        g.branches.push_back({4, 2, 9, 0.002, 0.02, 0.0, 1.0, 0.0, 2.0, -0.5, 0.5, true});
        g.loads.push_back({3, 9, 0.2, 0.0, true});
        const SplitGrid split = expand_busbar(g, 9);
        CHECK(split.switches.size() == 2);  // branch end + load
    }
    SUBCASE("unknown bus") {
        CHECK_THROWS_AS(expand_busbar(station_grid(), 42), std::out_of_range);
    }
    SUBCASE("bus with no in-service elements") {
        Grid g = station_grid();
        g.buses.push_back({7, BusRole::Pq, 0.9, 1.1, 345.0});
        CHECK_THROWS_AS(expand_busbar(g, 7), std::invalid_argument);
    }
}

TEST_CASE("118-bus hub expands to seven pairs and fifteen binaries") {
    const Grid g = load_matpower_file(test_data_path("case118_ieee.m"));
    const SplitGrid split = expand_busbar(g, 69);
    CHECK(split.switches.size() == 7);
    const BusSplitModel model = build_bus_milp(split);
    CHECK(model.milp.integer_vars.size() == 2 * 7 + 1);
}

TEST_CASE("null reformulation reproduces the unsplit objective") {
    const Grid g = station_grid();
    const double base_obj = solve_lpac_opf(g).objective;
    SplitOptions opts;
    opts.force_null = true;
    const SplitGrid split = expand_busbar(g, 3);
    const BusSplitModel model = build_bus_milp(split, opts);
    const MilpSolution sol = solve_milp(model.milp);
    REQUIRE(sol.status == MilpStatus::Optimal);
    CHECK(std::abs(sol.objective - base_obj) <= 1e-6 * std::abs(base_obj));
}

TEST_CASE("exhaustive oracle agrees with branch-and-bound on the split MILP") {
    const SplitGrid split = expand_busbar(station_grid(), 3);
    const BusSplitModel model = build_bus_milp(split);
    REQUIRE(model.milp.integer_vars.size() == 9);
    const MilpSolution enumerated = enumerate_exhaustive(model.milp);
    CHECK(enumerated.lp_solves == 512);
    MilpOptions mopts;
    const MilpSolution bb = solve_milp(model.milp, mopts);
    REQUIRE(enumerated.status == MilpStatus::Optimal);
    REQUIRE((bb.status == MilpStatus::Optimal || bb.status == MilpStatus::GapReached));
    CHECK(std::abs(bb.objective - enumerated.objective) <=
          1e-4 * std::abs(enumerated.objective) + 1e-9);
    // any feasible fixed assignment is bounded below by the enumerated optimum
    CHECK(enumerated.objective <= bb.objective + 1e-9);
}

TEST_CASE("null incumbent extracts back to the original grid") {
    const Grid g = station_grid();
    SplitOptions opts;
    opts.force_null = true;
    const SplitGrid split = expand_busbar(g, 3);
    const BusSplitModel model = build_bus_milp(split, opts);
    const MilpSolution sol = solve_milp(model.milp);
    REQUIRE(!sol.incumbent.empty());
    const auto [extracted, assign] = extract_topology(split, model, sol);
    CHECK(extracted == g);
    CHECK(assign.coupler_closed);
    for (const auto p : assign.placements) {
        CHECK(p == TopologyAssignment::Placement::OnMain);
    }
    CHECK(assign.islanded_buses.empty());
}

TEST_CASE("split assignment produces two electrical sections") {
    const Grid g = station_grid();
    const SplitGrid split = expand_busbar(g, 3);
    const BusSplitModel model = build_bus_milp(split);
    // craft an incumbent: branch 1 + generator on main, branch 2 + load on twin,
    // coupler open
    MilpSolution sol;
    sol.status = MilpStatus::Optimal;
    sol.incumbent.assign(model.milp.base.variables.size(), 0.0);
    for (size_t k = 0; k < split.switches.size(); ++k) {
        const auto kind = split.switches[k].element.kind;
        const bool main_side =
            kind == ElementKind::Gen || (kind != ElementKind::LoadElem &&
                                         split.switches[k].element.id == 1);
        sol.incumbent[static_cast<size_t>(main_side ? model.z_to_main[k]
                                                    : model.z_to_twin[k])] = 1.0;
    }
    const auto [extracted, assign] = extract_topology(split, model, sol);
    CHECK(!assign.coupler_closed);
    CHECK(extracted.buses.size() == 4);  // twin materialized
    CHECK(validate_grid(extracted).ok());
    // branch 2 and the load moved to the twin section
    CHECK(extracted.branches[1].to_bus == split.twin_bus);
    CHECK(extracted.loads[0].bus == split.twin_bus);
    CHECK(extracted.branches[0].to_bus == 3);
    CHECK(extracted.generators[1].bus == 3);
}

TEST_CASE("exclusivity violations are refused at extraction") {
    const SplitGrid split = expand_busbar(station_grid(), 3);
    const BusSplitModel model = build_bus_milp(split);
    MilpSolution sol;
    sol.incumbent.assign(model.milp.base.variables.size(), 0.0);
    sol.incumbent[static_cast<size_t>(model.z_to_main[0])] = 1.0;
    sol.incumbent[static_cast<size_t>(model.z_to_twin[0])] = 1.0;
    CHECK_THROWS_AS(extract_topology(split, model, sol), std::logic_error);
}

TEST_CASE("splitting cannot cost more than the original topology") {
    const Grid g = load_matpower_file(test_data_path("case39_epri.m"));
    const double base_obj = solve_lpac_opf(g).objective;
    MilpOptions mopts;
    for (const int bus : {3, 25}) {
        const SplitGrid split = expand_busbar(g, bus);
        const BusSplitModel model = build_bus_milp(split);
        const MilpSolution sol = solve_milp(model.milp, mopts);
        REQUIRE((sol.status == MilpStatus::Optimal || sol.status == MilpStatus::GapReached));
        CHECK(sol.objective <= base_obj * (1.0 + mopts.gap) + 1e-6);
    }
}

TEST_CASE("extraction loses no information against a fresh solve") {
    const Grid g = load_matpower_file(test_data_path("case39_epri.m"));
    const SplitGrid split = expand_busbar(g, 25);
    const BusSplitModel model = build_bus_milp(split);
    const MilpSolution sol = solve_milp(model.milp);
    REQUIRE(!sol.incumbent.empty());
    const auto [extracted, assign] = extract_topology(split, model, sol);
    CHECK(validate_grid(extracted).ok());
    const OpfSolution resolved = solve_lpac_opf(extracted);
    CHECK(std::abs(resolved.objective - sol.objective) <= 1e-5 * std::abs(sol.objective));
}

TEST_CASE("splitting the slack busbar keeps its anchor on the main section") {
    Grid g = station_grid();
    const SplitGrid split = expand_busbar(g, 1);  // slack with gen + 2 branch ends
    const BusSplitModel model = build_bus_milp(split);
    const MilpSolution sol = solve_milp(model.milp);
    REQUIRE(!sol.incumbent.empty());
    const auto [extracted, assign] = extract_topology(split, model, sol);
    for (size_t k = 0; k < split.switches.size(); ++k) {
        if (split.switches[k].element.kind == ElementKind::Gen) {
            CHECK(assign.placements[k] == TopologyAssignment::Placement::OnMain);
        }
    }
    CHECK(validate_grid(extracted).ok());
}
