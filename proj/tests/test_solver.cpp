#include <doctest.h>

#include <cmath>
#include <random>

#include "tableau_oracle.hpp"
#include "topocand/milp.hpp"
#include "topocand/simplex.hpp"

using namespace topocand;

namespace {

// feasible-by-construction random box LP
LpProblem random_lp(unsigned seed, int n_vars, int n_rows) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coef(-5.0, 5.0);
    std::uniform_real_distribution<double> ub_dist(1.0, 10.0);
    std::uniform_real_distribution<double> cost(-10.0, 10.0);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    std::uniform_int_distribution<int> rel_pick(0, 2);

    LpProblem p;
    std::vector<double> x0(static_cast<size_t>(n_vars));
    for (int j = 0; j < n_vars; ++j) {
        const double ub = ub_dist(rng);
        p.add_var("v" + std::to_string(j), 0.0, ub, cost(rng));
        x0[static_cast<size_t>(j)] = frac(rng) * ub;
    }
    for (int r = 0; r < n_rows; ++r) {
        std::vector<std::pair<int, double>> row;
        double act = 0.0;
        for (int j = 0; j < n_vars; ++j) {
            if (frac(rng) < 0.35) {
                const double c = coef(rng);
                row.emplace_back(j, c);
                act += c * x0[static_cast<size_t>(j)];
            }
        }
        if (row.empty()) continue;
        switch (rel_pick(rng)) {
            case 0: p.add_row(Relation::LessEqual, act + frac(rng) * 2.0, row); break;
            case 1: p.add_row(Relation::GreaterEqual, act - frac(rng) * 2.0, row); break;
            default: p.add_row(Relation::Equal, act, row); break;
        }
    }
    return p;
}

}  // namespace

TEST_CASE("one variable lower-bounded LP and its dual") {
    LpProblem p;
    p.add_var("x", 0.0, 10.0, 1.0);
    const int row = p.add_row(Relation::GreaterEqual, 3.0, {{0, 1.0}});
    const LpSolution sol = solve_lp(p);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.primal[0] == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(sol.duals[static_cast<size_t>(row)] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("symmetric simplex case with binding row dual") {
    LpProblem p;
    p.add_var("x", 0.0, 1.0, -1.0);
    p.add_var("y", 0.0, 1.0, -1.0);
    const int row = p.add_row(Relation::LessEqual, 1.0, {{0, 1.0}, {1, 1.0}});
    const LpSolution sol = solve_lp(p);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(sol.duals[static_cast<size_t>(row)] == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("infeasible and unbounded statuses") {
    {
        LpProblem p;
        p.add_var("x", 0.0, 3.0, 1.0);
        p.add_row(Relation::GreaterEqual, 5.0, {{0, 1.0}});
        CHECK(solve_lp(p).status == LpStatus::Infeasible);
    }
    {
        LpProblem p;
        p.add_var("x", 0.0, kInf, -1.0);
        p.add_row(Relation::GreaterEqual, 1.0, {{0, 1.0}});
        CHECK(solve_lp(p).status == LpStatus::Unbounded);
    }
}

TEST_CASE("random LPs match the dense tableau oracle") {
    int optimal_seen = 0;
    for (unsigned seed = 1; seed <= 20; ++seed) {
        const LpProblem p = random_lp(seed, 40, 20);
        const auto expect = topocand::testing::TableauOracle::solve(p);
        const LpSolution got = solve_lp(p);
        REQUIRE(got.status == expect.status);
        if (expect.status == LpStatus::Optimal) {
            ++optimal_seen;
            CHECK(got.objective ==
                  doctest::Approx(expect.objective).epsilon(1e-7).scale(std::max(1.0, std::abs(expect.objective))));
        }
    }
    CHECK(optimal_seen >= 15);  // generator aims for feasible instances
}

TEST_CASE("strong duality holds at reported optima") {
    for (unsigned seed = 100; seed < 110; ++seed) {
        const LpProblem p = random_lp(seed, 25, 12);
        const LpSolution sol = solve_lp(p);
        if (sol.status != LpStatus::Optimal) continue;
        // dual objective: y*b plus bound terms of nonbasic reduced costs
        double dual_obj = p.objective_constant;
        for (size_t r = 0; r < p.constraints.size(); ++r) {
            dual_obj += sol.duals[r] * p.constraints[r].rhs;
        }
        std::vector<double> d = p.objective;
        for (size_t r = 0; r < p.constraints.size(); ++r) {
            for (const auto& [j, c] : p.constraints[r].coeffs) {
                d[static_cast<size_t>(j)] -= sol.duals[r] * c;
            }
        }
        for (size_t j = 0; j < p.variables.size(); ++j) {
            if (d[j] > 0) {
                dual_obj += d[j] * p.variables[j].lb;
            } else {
                dual_obj += d[j] * p.variables[j].ub;
            }
        }
        CHECK(dual_obj ==
              doctest::Approx(sol.objective).epsilon(1e-6).scale(std::max(1.0, std::abs(sol.objective))));
    }
}

TEST_CASE("knapsack MILP equals subset enumeration") {
    // maximize value within capacity 10 == minimize negative value
    const double value[5] = {6, 5, 4, 3, 7};
    const double weight[5] = {5, 4, 3, 2, 6};
    MilpProblem mp;
    for (int j = 0; j < 5; ++j) {
        mp.base.add_var("take" + std::to_string(j), 0.0, 1.0, -value[j]);
        mp.integer_vars.push_back(j);
    }
    {
        std::vector<std::pair<int, double>> row;
        for (int j = 0; j < 5; ++j) row.emplace_back(j, weight[j]);
        mp.base.add_row(Relation::LessEqual, 10.0, row);
    }
    double best = 0.0;
    for (int mask = 0; mask < 32; ++mask) {
        double v = 0.0, w = 0.0;
        for (int j = 0; j < 5; ++j) {
            if (mask >> j & 1) {
                v += value[j];
                w += weight[j];
            }
        }
        if (w <= 10.0) best = std::max(best, v);
    }
    const MilpSolution sol = solve_milp(mp);
    REQUIRE(sol.status == MilpStatus::Optimal);
    CHECK(-sol.objective == doctest::Approx(best).epsilon(1e-9));

    const MilpSolution enumerated = enumerate_exhaustive(mp);
    CHECK(enumerated.lp_solves == 32);
    CHECK(enumerated.objective == doctest::Approx(sol.objective).epsilon(1e-9));
}

TEST_CASE("integral relaxation takes zero branches") {
    MilpProblem mp;
    mp.base.add_var("z", 0.0, 1.0, 1.0);
    mp.integer_vars.push_back(0);
    mp.base.add_row(Relation::GreaterEqual, 1.0, {{0, 1.0}});
    const MilpSolution sol = solve_milp(mp);
    CHECK(sol.status == MilpStatus::Optimal);
    CHECK(sol.branched_nodes == 0);
    CHECK(sol.objective == doctest::Approx(1.0));
}

TEST_CASE("exhaustive enumeration edge cases") {
    SUBCASE("zero binaries behaves like solve_lp") {
        MilpProblem mp;
        mp.base.add_var("x", 0.0, 4.0, 2.0);
        mp.base.add_row(Relation::GreaterEqual, 1.5, {{0, 1.0}});
        const auto lp = solve_lp(mp.base);
        const auto en = enumerate_exhaustive(mp);
        CHECK(en.status == MilpStatus::Optimal);
        CHECK(en.objective == doctest::Approx(lp.objective));
        CHECK(en.lp_solves == 1);
    }
    SUBCASE("two binaries with one infeasible assignment") {
        MilpProblem mp;
        mp.base.add_var("a", 0.0, 1.0, 1.0);
        mp.base.add_var("b", 0.0, 1.0, 2.0);
        mp.integer_vars = {0, 1};
        mp.base.add_row(Relation::LessEqual, 1.0, {{0, 1.0}, {1, 1.0}});   // kills (1,1)
        mp.base.add_row(Relation::GreaterEqual, 1.0, {{0, 1.0}, {1, 1.0}});
        const auto en = enumerate_exhaustive(mp);
        CHECK(en.lp_solves == 4);
        CHECK(en.status == MilpStatus::Optimal);
        CHECK(en.objective == doctest::Approx(1.0));  // a=1, b=0
    }
}

TEST_CASE("branch-and-bound equals enumeration on random small MILPs") {
    for (unsigned seed = 40; seed < 52; ++seed) {
        LpProblem base = random_lp(seed, 18, 10);
        MilpProblem mp;
        mp.base = base;
        std::mt19937 rng(seed * 7 + 1);
        std::uniform_int_distribution<int> pick(0, 17);
        for (int c = 0; c < 10; ++c) {
            const int j = pick(rng);
            bool dup = false;
            for (int e : mp.integer_vars) dup |= (e == j);
            if (dup) continue;
            mp.base.variables[static_cast<size_t>(j)].lb = 0.0;
            mp.base.variables[static_cast<size_t>(j)].ub = 1.0;
            mp.integer_vars.push_back(j);
        }
        const auto en = enumerate_exhaustive(mp);
        const auto bb = solve_milp(mp);
        REQUIRE((en.status == MilpStatus::Infeasible) == (bb.status == MilpStatus::Infeasible));
        if (en.status == MilpStatus::Infeasible) continue;
        const double scale = std::max(std::abs(en.objective), 1.0);
        CHECK(std::abs(bb.objective - en.objective) <= 1e-4 * scale + 1e-9);
        CHECK(bb.objective >= bb.best_bound - 1e-6 * scale);
    }
}

TEST_CASE("bound log is non-decreasing and runs deterministically") {
    LpProblem base = random_lp(77, 16, 8);
    MilpProblem mp;
    mp.base = base;
    for (int j = 0; j < 8; ++j) {
        mp.base.variables[static_cast<size_t>(j)].lb = 0.0;
        mp.base.variables[static_cast<size_t>(j)].ub = 1.0;
        mp.integer_vars.push_back(j);
    }
    const auto a = solve_milp(mp);
    const auto b = solve_milp(mp);
    CHECK(a.node_count == b.node_count);
    CHECK(a.branched_nodes == b.branched_nodes);
    if (a.status != MilpStatus::Infeasible) {
        CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-14));
        REQUIRE(a.incumbent.size() == b.incumbent.size());
        for (size_t j = 0; j < a.incumbent.size(); ++j) {
            CHECK(a.incumbent[j] == doctest::Approx(b.incumbent[j]).epsilon(1e-12));
        }
    }
    for (size_t i = 1; i < a.bound_log.size(); ++i) {
        CHECK(a.bound_log[i] >= a.bound_log[i - 1] - 1e-9);
    }
}

TEST_CASE("LP text export prints 17 significant digits") {
    MilpProblem mp;
    mp.base.add_var("x", 0.0, 1.0, 0.1);
    mp.base.add_var("y", -kInf, kInf, -2.0);
    mp.integer_vars = {0};
    mp.base.add_row(Relation::LessEqual, 1.5, {{0, 1.0 / 3.0}, {1, -1.0}}, "cap");
    const std::string text = to_lp_format(mp);
    CHECK(text.find("Minimize") != std::string::npos);
    CHECK(text.find("0.33333333333333331") != std::string::npos);
    CHECK(text.find("Binaries") != std::string::npos);
    CHECK(text.find(" y free") != std::string::npos);
    CHECK(text.find("End") != std::string::npos);
}
