#include "topocand/milp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <queue>
#include <sstream>

#include "topocand/simplex.hpp"

namespace topocand {

const char* to_string(MilpStatus s) {
    switch (s) {
        case MilpStatus::Optimal: return "optimal";
        case MilpStatus::Infeasible: return "infeasible";
        case MilpStatus::GapReached: return "gap_reached";
        case MilpStatus::NodeLimit: return "node_limit";
    }
    return "?";
}

void MilpProblem::validate() const {
    base.validate();
    for (int j : integer_vars) {
        if (j < 0 || j >= static_cast<int>(base.variables.size())) {
            throw std::invalid_argument("integer variable index out of range");
        }
        const auto& v = base.variables[static_cast<size_t>(j)];
        if (v.lb < -1e-12 || v.ub > 1.0 + 1e-12) {
            throw std::invalid_argument("integer variable " + v.name + " bounds outside [0,1]");
        }
    }
}

namespace {

constexpr double kIntTol = 1e-6;

double relative_gap(double objective, double best_bound) {
    return (objective - best_bound) / std::max(std::abs(objective), 1e-10);
}

struct Node {
    double bound = -kInf;
    long id = 0;
    std::vector<std::pair<double, double>> binary_bounds;  // one per integer var
    Simplex::Basis basis;                                  // empty = cold start
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
        return a.id > b.id;                                 // FIFO on ties
    }
};

}  // namespace

MilpSolution solve_milp(const MilpProblem& problem, const MilpOptions& opts) {
    problem.validate();
    std::vector<int> ints = problem.integer_vars;
    std::sort(ints.begin(), ints.end());
    Simplex engine(problem.base, opts.lp);

    MilpSolution out;
    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;

    auto current_bounds = [&]() {
        std::vector<std::pair<double, double>> b;
        b.reserve(ints.size());
        for (int j : ints) b.push_back(engine.var_bounds(j));
        return b;
    };

    {
        if (!opts.root_basis.basic.empty()) engine.set_basis(opts.root_basis);
        LpSolution root = engine.solve();
        if (root.status == LpStatus::Unbounded) {
            throw std::invalid_argument("MILP relaxation is unbounded");
        }
        if (root.status == LpStatus::Infeasible) {
            out.status = MilpStatus::Infeasible;
            out.best_bound = kInf;
            return out;
        }
        Node n;
        n.bound = root.objective;
        n.binary_bounds = current_bounds();
        n.basis = engine.basis();
        open.push(std::move(n));
    }

    double incumbent_obj = kInf;
    std::vector<double> incumbent;
    if (opts.has_warm_incumbent) {
        incumbent_obj = opts.warm_objective;
        incumbent = opts.warm_solution;
    }
    long next_id = 1;
    bool hit_node_limit = false;

    while (!open.empty()) {
        out.best_bound = std::min(open.top().bound, incumbent_obj);
        out.bound_log.push_back(out.best_bound);
        if (!incumbent.empty() && relative_gap(incumbent_obj, out.best_bound) <= opts.gap) {
            break;
        }
        if (out.node_count >= opts.node_limit) {
            hit_node_limit = true;
            break;
        }
        Node node = open.top();
        open.pop();
        const double prune_tol = 1e-9 * std::max(1.0, std::abs(incumbent_obj));
        if (node.bound >= incumbent_obj - prune_tol) continue;

        if (!node.basis.basic.empty()) engine.set_basis(node.basis);
        for (size_t k = 0; k < ints.size(); ++k) {
            engine.set_var_bounds(ints[k], node.binary_bounds[k].first,
                                  node.binary_bounds[k].second);
        }
        LpSolution lp = engine.solve();
        ++out.node_count;
        if (lp.status != LpStatus::Optimal) continue;
        if (lp.objective >= incumbent_obj - prune_tol) continue;

        // most fractional binary; ascending scan keeps the lowest index on ties
        int branch_var = -1;
        size_t branch_pos = 0;
        double best_score = kIntTol;
        for (size_t k = 0; k < ints.size(); ++k) {
            const double v = lp.primal[static_cast<size_t>(ints[k])];
            const double frac = v - std::floor(v);
            const double score = std::min(frac, 1.0 - frac);
            if (score > best_score) {
                best_score = score;
                branch_var = ints[k];
                branch_pos = k;
            }
        }

        if (branch_var < 0) {
            if (lp.objective < incumbent_obj) {
                incumbent_obj = lp.objective;
                incumbent = lp.primal;
            }
            continue;
        }

        ++out.branched_nodes;
        const bool keep_basis = open.size() < 5000;  // bound queue memory
        const Simplex::Basis basis = keep_basis ? engine.basis() : Simplex::Basis{};
        const auto bounds_now = current_bounds();
        for (int branch_dir = 0; branch_dir < 2; ++branch_dir) {
            Node child;
            child.bound = lp.objective;
            child.id = next_id++;
            child.binary_bounds = bounds_now;
            child.binary_bounds[branch_pos] =
                branch_dir == 0 ? std::make_pair(0.0, 0.0) : std::make_pair(1.0, 1.0);
            child.basis = basis;
            open.push(std::move(child));
        }
    }

    if (incumbent.empty()) {
        out.status = hit_node_limit ? MilpStatus::NodeLimit : MilpStatus::Infeasible;
        if (!hit_node_limit) out.best_bound = kInf;
        return out;
    }
    out.incumbent = std::move(incumbent);
    out.objective = incumbent_obj;
    if (open.empty()) out.best_bound = incumbent_obj;
    out.gap = std::max(0.0, relative_gap(out.objective, out.best_bound));
    if (hit_node_limit && out.gap > opts.gap) {
        out.status = MilpStatus::NodeLimit;
    } else if (open.empty()) {
        out.status = MilpStatus::Optimal;
    } else {
        out.status = MilpStatus::GapReached;
    }
    return out;
}

MilpSolution enumerate_exhaustive(const MilpProblem& problem, const SimplexOptions& lp_opts) {
    problem.validate();
    const auto& ints = problem.integer_vars;
    if (ints.size() > 24) {
        throw std::invalid_argument("enumerate_exhaustive guard: more than 24 binaries");
    }

    Simplex engine(problem.base, lp_opts);
    MilpSolution out;

    // binaries fixed by their own bounds keep that value
    std::vector<int> free_bins;
    for (int j : ints) {
        const auto& v = problem.base.variables[static_cast<size_t>(j)];
        if (v.ub - v.lb > 0.0) free_bins.push_back(j);
    }
    std::sort(free_bins.begin(), free_bins.end());

    double best_obj = kInf;
    std::vector<double> best_primal;
    const size_t k = free_bins.size();
    const std::uint64_t total = std::uint64_t{1} << k;
    // Gray-code order: consecutive assignments differ in one bound
    for (std::uint64_t i = 0; i < total; ++i) {
        const std::uint64_t mask = i ^ (i >> 1);
        for (size_t b = 0; b < k; ++b) {
            const double v = (mask >> b) & 1u ? 1.0 : 0.0;
            engine.set_var_bounds(free_bins[b], v, v);
        }
        LpSolution lp = engine.solve();
        ++out.lp_solves;
        if (lp.status == LpStatus::Optimal && lp.objective < best_obj) {
            best_obj = lp.objective;
            best_primal = lp.primal;
        }
    }
    out.node_count = static_cast<long>(total);
    if (best_primal.empty()) {
        out.status = MilpStatus::Infeasible;
        return out;
    }
    out.status = MilpStatus::Optimal;
    out.objective = best_obj;
    out.best_bound = best_obj;
    out.gap = 0.0;
    out.incumbent = std::move(best_primal);
    return out;
}

namespace {

std::string lp_name(const std::string& raw, const char* prefix, size_t idx) {
    if (raw.empty()) return prefix + std::to_string(idx);
    std::string s;
    s.reserve(raw.size());
    for (char c : raw) {
        s += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
    }
    if (std::isdigit(static_cast<unsigned char>(s[0]))) s = "_" + s;
    return s;
}

std::string num17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit_term(std::ostringstream& os, bool& first, double coef, const std::string& name) {
    if (coef == 0.0) return;
    if (first) {
        os << " " << num17(coef);
    } else if (coef < 0) {
        os << " - " << num17(-coef);
    } else {
        os << " + " << num17(coef);
    }
    os << " " << name;
    first = false;
}

}  // namespace

std::string to_lp_format(const MilpProblem& problem) {
    const auto& p = problem.base;
    std::ostringstream os;
    std::vector<std::string> names(p.variables.size());
    for (size_t j = 0; j < p.variables.size(); ++j) {
        names[j] = lp_name(p.variables[j].name, "x", j);
    }

    os << "Minimize\n obj:";
    bool first = true;
    for (size_t j = 0; j < p.variables.size(); ++j) {
        emit_term(os, first, p.objective[j], names[j]);
    }
    if (p.objective_constant != 0.0) {
        os << (first ? " " : " + ") << num17(p.objective_constant);
        first = false;
    }
    if (first) os << " 0";
    os << "\nSubject To\n";
    for (size_t r = 0; r < p.constraints.size(); ++r) {
        const auto& row = p.constraints[r];
        os << " " << lp_name(row.name, "c", r) << ":";
        bool rf = true;
        for (const auto& [j, c] : row.coeffs) {
            emit_term(os, rf, c, names[static_cast<size_t>(j)]);
        }
        if (rf) os << " 0";
        switch (row.rel) {
            case Relation::LessEqual: os << " <= "; break;
            case Relation::Equal: os << " = "; break;
            case Relation::GreaterEqual: os << " >= "; break;
        }
        os << num17(row.rhs) << "\n";
    }
    os << "Bounds\n";
    for (size_t j = 0; j < p.variables.size(); ++j) {
        const auto& v = p.variables[j];
        if (v.lb == -kInf && v.ub == kInf) {
            os << " " << names[j] << " free\n";
        } else if (v.ub == kInf) {
            os << " " << names[j] << " >= " << num17(v.lb) << "\n";
        } else if (v.lb == -kInf) {
            os << " " << names[j] << " <= " << num17(v.ub) << "\n";
        } else {
            os << " " << num17(v.lb) << " <= " << names[j] << " <= " << num17(v.ub) << "\n";
        }
    }
    if (!problem.integer_vars.empty()) {
        os << "Binaries\n";
        for (int j : problem.integer_vars) os << " " << names[static_cast<size_t>(j)];
        os << "\n";
    }
    os << "End\n";
    return os.str();
}

}  // namespace topocand
