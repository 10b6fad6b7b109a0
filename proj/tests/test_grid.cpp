#include <doctest.h>

#include <string>

#include "test_paths.hpp"
#include "topocand/grid.hpp"
#include "topocand/grid_json.hpp"
#include "topocand/matpower.hpp"

using namespace topocand;

namespace {

// Bus with two branches, a generator and a load, plus two remote ends.
Grid four_element_bus_grid() {
    Grid g;
    g.base_mva = 100.0;
    g.buses = {{1, BusRole::Slack, 0.9, 1.1, 345.0},
               {2, BusRole::Pq, 0.9, 1.1, 345.0},
               {3, BusRole::Pq, 0.9, 1.1, 345.0},
               {4, BusRole::Pq, 0.9, 1.1, 345.0}};
    g.branches = {{1, 1, 2, 0.01, 0.1, 0.0, 1.0, 0.0, 2.0, -0.5, 0.5, true},
                  {2, 1, 3, 0.01, 0.1, 0.0, 1.0, 0.0, 2.0, -0.5, 0.5, true}};
    g.generators = {{1, 1, 0.0, 3.0, -1.5, 1.5, 1.0, true, {}}};
    g.loads = {{1, 1, 0.8, 0.1, true}};
    // bus 4 stays isolated on purpose
    return g;
}

}  // namespace

TEST_CASE("2-bus fixture parses with expected counts") {
    const Grid g = load_matpower_file(test_data_path("case2_toy.m"));
    CHECK(g.buses.size() == 2);
    CHECK(g.branches.size() == 1);
    CHECK(g.generators.size() == 1);
    CHECK(g.loads.size() == 1);
    CHECK(g.base_mva == doctest::Approx(100.0));
    CHECK(g.bus_by_id(1).role == BusRole::Slack);
    CHECK(g.bus_by_id(2).role == BusRole::Pq);
    // per-unit conversion against the MW value in the file
    CHECK(g.loads[0].pd * g.base_mva == doctest::Approx(100.0).epsilon(1e-9));
    CHECK(g.branches[0].rate_a == doctest::Approx(2.5));
    CHECK(validate_grid(g).ok());
}

TEST_CASE("case39 parses with published dimensions") {
    const Grid g = load_matpower_file(test_data_path("case39_epri.m"));
    CHECK(g.buses.size() == 39);
    CHECK(g.branches.size() == 46);
    CHECK(g.generators.size() == 10);
    CHECK(g.loads.size() == 21);
    CHECK(validate_grid(g).ok());
}

TEST_CASE("case118 parses with published dimensions") {
    const Grid g = load_matpower_file(test_data_path("case118_ieee.m"));
    CHECK(g.buses.size() == 118);
    CHECK(g.branches.size() == 186);
    CHECK(g.generators.size() == 54);
    CHECK(g.loads.size() == 99);
    CHECK(validate_grid(g).ok());
}

TEST_CASE("count_elements on typical and edge buses") {
    const Grid g = four_element_bus_grid();
    SUBCASE("two branches plus generator and load") {
        const auto c = count_elements(g, 1);
        CHECK(c.n_branches == 2);
        CHECK(c.n_elements == 4);
    }
    SUBCASE("isolated bus counts nothing") {
        const auto c = count_elements(g, 4);
        CHECK(c.n_branches == 0);
        CHECK(c.n_elements == 0);
    }
    SUBCASE("unknown bus throws") {
        CHECK_THROWS_AS(count_elements(g, 99), std::out_of_range);
    }
    SUBCASE("out-of-service branch is not counted") {
        Grid g2 = g;
        g2.branches[1].in_service = false;
        const auto c = count_elements(g2, 1);
        CHECK(c.n_branches == 1);
        CHECK(c.n_elements == 3);
    }
}

TEST_CASE("count_elements on the 118-bus hub") {
    const Grid g = load_matpower_file(test_data_path("case118_ieee.m"));
    const auto c = count_elements(g, 69);
    CHECK(c.n_branches == 6);
    CHECK(c.n_elements == 7);
}

TEST_CASE("count summation covers every element the right number of times") {
    const Grid g = load_matpower_file(test_data_path("case39_epri.m"));
    const GridIndex idx = GridIndex::build(g);
    long branch_ends = 0, others = 0;
    for (const auto& b : g.buses) {
        const auto c = count_elements(g, idx, b.id);
        branch_ends += c.n_branches;
        others += c.n_elements - c.n_branches;
    }
    long in_service = 0;
    for (const auto& br : g.branches) in_service += br.in_service ? 1 : 0;
    CHECK(branch_ends == 2 * in_service);
    CHECK(others == static_cast<long>(g.generators.size() + g.loads.size() + g.shunts.size()));
}

TEST_CASE("validate_grid reports crafted violations") {
    SUBCASE("well-formed case is clean") {
        const Grid g = load_matpower_file(test_data_path("case39_epri.m"));
        CHECK(validate_grid(g).issues.empty());
    }
    SUBCASE("dangling branch reference") {
        Grid g = four_element_bus_grid();
        g.branches[0].to_bus = 999;
        const auto report = validate_grid(g);
        REQUIRE(report.issues.size() == 1);
        CHECK(report.issues[0].kind == "referential");
    }
    SUBCASE("generator with inverted active limits") {
        Grid g = four_element_bus_grid();
        g.generators[0].pmin = 2.0;
        g.generators[0].pmax = 1.0;
        const auto report = validate_grid(g);
        REQUIRE(report.issues.size() == 1);
        CHECK(report.issues[0].kind == "bound");
    }
}

TEST_CASE("JSON snapshot round-trips field by field") {
    for (const char* name : {"case2_toy.m", "case39_epri.m", "case118_ieee.m"}) {
        const Grid g = load_matpower_file(test_data_path(name));
        const Grid back = grid_from_json(grid_to_json(g));
        CHECK(back == g);
    }
}

TEST_CASE("per-unit load consistency against source MW values") {
    const Grid g = load_matpower_file(test_data_path("case39_epri.m"));
    // bus 3 carries the 322 MW load in the case file
    bool found = false;
    for (const auto& l : g.loads) {
        if (l.bus == 3) {
            CHECK(l.pd * g.base_mva == doctest::Approx(322.0).epsilon(1e-9));
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("parser reports malformed rows with line numbers") {
    const std::string bad =
        "function mpc = broken\n"
        "mpc.baseMVA = 100;\n"
        "mpc.bus = [\n"
        "1 3 0 0 0 0 1 1 0 345 1 1.1 0.9;\n"
        "2 1 oops 0 0 0 1 1 0 345 1 1.1 0.9;\n"
        "];\n";
    CHECK_THROWS_AS(parse_matpower(bad), ParseError);
    try {
        parse_matpower(bad);
    } catch (const ParseError& e) {
        CHECK(e.line == 5);
    }
}

TEST_CASE("parser rejects dangling bus references") {
    const std::string bad =
        "mpc.baseMVA = 100;\n"
        "mpc.bus = [\n"
        "1 3 0 0 0 0 1 1 0 345 1 1.1 0.9;\n"
        "];\n"
        "mpc.gen = [1 0 0 10 -10 1 100 1 50 0;];\n"
        "mpc.branch = [1 7 0.01 0.1 0 100 100 100 0 0 1 -30 30;];\n";
    CHECK_THROWS_WITH_AS(parse_matpower(bad), doctest::Contains("missing bus"), std::runtime_error);
}

TEST_CASE("unknown matrices are ignored with a warning") {
    const std::string text =
        "mpc.baseMVA = 100;\n"
        "mpc.bus = [\n"
        "1 3 0 0 0 0 1 1 0 345 1 1.1 0.9;\n"
        "2 1 10 2 0 0 1 1 0 345 1 1.1 0.9;\n"
        "];\n"
        "mpc.gen = [1 0 0 10 -10 1 100 1 50 0;];\n"
        "mpc.branch = [1 2 0.01 0.1 0 100 100 100 0 0 1 -30 30;];\n"
        "mpc.bus_name = [1; 2;];\n";
    std::vector<std::string> warnings;
    const Grid g = parse_matpower(text, &warnings);
    CHECK(g.buses.size() == 2);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("bus_name") != std::string::npos);
}
