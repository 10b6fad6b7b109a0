#include "topocand/lp.hpp"

#include "topocand/simplex.hpp"

namespace topocand {

const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

LpSolution solve_lp(const LpProblem& problem, const SimplexOptions& opts) {
    Simplex engine(problem, opts);
    return engine.solve();
}

}  // namespace topocand
