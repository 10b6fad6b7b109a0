#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "topocand/grid.hpp"
#include "topocand/lp.hpp"

namespace topocand {

struct LpacOptions {
    int cosine_segments = 10;   // tangent cuts on cos over [-theta_max, theta_max]
    double theta_max = 0.35;    // rad
    int thermal_segments = 8;   // apparent-power polygon sides
    int cost_segments = 10;     // PWL pieces for quadratic generator costs
};

// One LPAC branch evaluation, both directions. Mirrors the affine
// expressions embedded in the LP rows exactly.
struct BranchFlow {
    double p_from = 0.0, q_from = 0.0;
    double p_to = 0.0, q_to = 0.0;
};

// affine form c0 + a_ti*theta_i + a_tj*theta_j + a_pi*phi_i + a_pj*phi_j + a_cs*cs
struct FlowAffine {
    double c0 = 0.0, a_ti = 0.0, a_tj = 0.0, a_pi = 0.0, a_pj = 0.0, a_cs = 0.0;
    double eval(double ti, double tj, double pi, double pj, double cs) const {
        return c0 + a_ti * ti + a_tj * tj + a_pi * pi + a_pj * pj + a_cs * cs;
    }
};

struct BranchAffine {
    FlowAffine p_from, q_from, p_to, q_to;
};

BranchAffine branch_flow_affine(const Branch& br);
BranchFlow lpac_flow(const Branch& br, double theta_i, double theta_j, double phi_i,
                     double phi_j, double cs);

// cosine surrogate envelope value at a given shifted angle difference
double cs_envelope(double delta, const LpacOptions& opts);

// Variable/row bookkeeping for a built model. Positions follow the grid's
// vectors; -1 marks an absent variable (e.g. out-of-service branch).
struct LpacIndex {
    std::vector<int> theta, phi;                    // per bus
    std::vector<int> cs, p_from, q_from, p_to, q_to;  // per branch
    std::vector<int> branch_active;                 // per branch, switchable builds only
    std::vector<int> p_gen, q_gen, cost_epi;        // per generator
    std::vector<int> p_balance_row, q_balance_row;  // per bus
    std::vector<std::vector<int>> thermal_rows_from, thermal_rows_to;  // per branch
    std::vector<int> angle_upper_row, angle_lower_row;                  // per branch
};

struct LpacModel {
    LpProblem problem;
    LpacIndex index;
};

// Builds the LPAC approximation of the AC-OPF over the grid. Branches listed
// in `switchable_branches` (by position) get an activity variable gating their
// flows; callers tie that variable to their own switching logic.
LpacModel build_lpac(const Grid& grid, const LpacOptions& opts = {},
                     const std::set<int>& switchable_branches = {});

struct OpfSolution {
    double objective = 0.0;  // currency/h
    std::vector<int> bus_ids;
    std::vector<double> lmp;     // currency/MWh, per bus
    std::vector<double> qlmp;    // reactive duals, reported but unused by phi
    std::vector<double> angles;  // rad
    std::vector<double> vmags;   // p.u.
    std::vector<int> gen_ids;
    std::vector<double> p_dispatch, q_dispatch;  // p.u.
    std::vector<int> branch_ids;
    std::vector<BranchFlow> flows;                       // p.u., per in-service branch
    std::vector<std::vector<std::string>> bus_binding;   // vmag-upper / vmag-lower
    std::vector<std::vector<std::string>> branch_binding;  // thermal / angle-upper / angle-lower

    int bus_pos(int bus_id) const;
    nlohmann::ordered_json to_json() const;
};

struct LpacInfeasible : std::runtime_error {
    std::vector<std::pair<int, double>> shed_buses;  // bus id, unserved p.u.
    explicit LpacInfeasible(std::vector<std::pair<int, double>> shed);
};

OpfSolution solve_lpac_opf(const Grid& grid, const LpacOptions& opts = {});

// Shared by the split pipeline: turn a solved model into an OpfSolution.
OpfSolution extract_opf_solution(const Grid& grid, const LpacModel& model,
                                 const LpSolution& lp, const LpacOptions& opts);

}  // namespace topocand
