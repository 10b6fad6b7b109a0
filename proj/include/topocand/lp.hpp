#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace topocand {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LpVar {
    std::string name;
    double lb = 0.0;
    double ub = kInf;
};

struct LpRow {
    std::vector<std::pair<int, double>> coeffs;  // (variable index, coefficient)
    Relation rel = Relation::LessEqual;
    double rhs = 0.0;
    std::string name;
};

// Linear program, minimization. Rows reference declared variables only.
struct LpProblem {
    std::vector<LpVar> variables;
    std::vector<double> objective;       // one coefficient per variable
    double objective_constant = 0.0;     // added to every reported objective
    std::vector<LpRow> constraints;

    int add_var(std::string name, double lb, double ub, double cost = 0.0) {
        variables.push_back({std::move(name), lb, ub});
        objective.push_back(cost);
        return static_cast<int>(variables.size()) - 1;
    }

    int add_row(Relation rel, double rhs, std::vector<std::pair<int, double>> coeffs,
                std::string name = "") {
        constraints.push_back({std::move(coeffs), rel, rhs, std::move(name)});
        return static_cast<int>(constraints.size()) - 1;
    }

    void validate() const {
        for (const auto& v : variables) {
            if (!(v.lb <= v.ub)) throw std::invalid_argument("variable " + v.name + " has lb > ub");
        }
        for (const auto& row : constraints) {
            for (const auto& [j, c] : row.coeffs) {
                (void)c;
                if (j < 0 || j >= static_cast<int>(variables.size())) {
                    throw std::invalid_argument("row " + row.name + " references undeclared variable");
                }
            }
        }
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus s);

// Dual sign convention: the dual of a row is the marginal objective change per
// unit increase of its rhs.
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> primal;
    std::vector<double> duals;
    double objective = 0.0;
};

struct SimplexOptions {
    double feas_tol = 1e-9;
    double opt_tol = 1e-9;
    long max_iterations = 5000000;
    int refactor_interval = 50;
    int bland_threshold = 1000;  // degenerate pivots before Bland's rule kicks in
    int refactor_retries = 3;
};

struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

LpSolution solve_lp(const LpProblem& problem, const SimplexOptions& opts = {});

}  // namespace topocand
