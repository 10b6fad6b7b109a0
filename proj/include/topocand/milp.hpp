#pragma once

#include <string>
#include <vector>

#include "topocand/lp.hpp"
#include "topocand/simplex.hpp"

namespace topocand {

// Mixed-integer LP; the listed variables are restricted to {0,1} and must be
// declared with bounds inside [0,1].
struct MilpProblem {
    LpProblem base;
    std::vector<int> integer_vars;

    void validate() const;
};

enum class MilpStatus { Optimal, Infeasible, GapReached, NodeLimit };

const char* to_string(MilpStatus s);

struct MilpSolution {
    MilpStatus status = MilpStatus::Infeasible;
    std::vector<double> incumbent;   // full primal vector
    double objective = 0.0;
    double best_bound = -kInf;
    double gap = 0.0;                // (objective - best_bound) / max(|objective|, 1e-10)
    long node_count = 0;             // LP-solved nodes (root included)
    long branched_nodes = 0;
    long lp_solves = 0;              // exhaustive enumeration: one per assignment
    std::vector<double> bound_log;   // best bound after each processed node
};

struct MilpOptions {
    double gap = 1e-4;              // relative MIP gap target
    long node_limit = 200000;
    SimplexOptions lp;
    // known feasible point (objective, full primal); lets pruning bite early
    bool has_warm_incumbent = false;
    double warm_objective = 0.0;
    std::vector<double> warm_solution;
    // starting basis for the root relaxation (empty = cold start)
    Simplex::Basis root_basis;
};

// Best-bound search, branching on the most fractional binary with ties broken
// by the lowest variable index. Deterministic: no time-based decisions.
MilpSolution solve_milp(const MilpProblem& problem, const MilpOptions& opts = {});

// Solves one LP per binary assignment; guard |integer_vars| <= 24.
MilpSolution enumerate_exhaustive(const MilpProblem& problem, const SimplexOptions& lp_opts = {});

// CPLEX-style LP text format with 17 significant digits.
std::string to_lp_format(const MilpProblem& problem);

}  // namespace topocand
