#include "topocand/simplex.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace topocand {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

constexpr double kPivotTol = 1e-9;
constexpr double kDropTol = 1e-12;
constexpr double kDegenTol = 1e-11;

struct Eta {
    int pivot_pos = -1;
    double pivot_val = 0.0;
    std::vector<std::pair<int, double>> entries;  // (basis position, w value), pivot excluded
};

}  // namespace

struct Simplex::Impl {
    SimplexOptions opts;
    int n = 0;  // structural variables
    int m = 0;  // rows
    int N = 0;  // n + m

    // CSC of [A | I]
    std::vector<int> col_ptr, row_ind;
    std::vector<double> col_val;

    std::vector<double> lb, ub, cost;  // per column
    std::vector<double> rhs;           // per row
    double obj_const = 0.0;

    std::vector<int> basic;            // column per basis position
    std::vector<VarStatus> status;     // per column
    std::vector<int> basis_pos;        // per column, -1 if nonbasic
    Vec xB;

    Eigen::SparseLU<SpMat> lu;
    std::vector<Eta> etas;
    int pivots_since_refactor = 0;
    bool factor_valid = false;
    bool values_valid = false;

    long total_iterations = 0;
    int degen_streak = 0;
    bool bland = false;

    // scratch
    Vec work_v, work_y;

    double obj_scale = 1.0;

    explicit Impl(const LpProblem& p, SimplexOptions o) : opts(o) {
        p.validate();
        n = static_cast<int>(p.variables.size());
        m = static_cast<int>(p.constraints.size());
        N = n + m;
        lb.resize(N);
        ub.resize(N);
        cost.assign(N, 0.0);
        rhs.resize(m);
        obj_const = p.objective_constant;
        for (int j = 0; j < n; ++j) {
            lb[j] = p.variables[j].lb;
            ub[j] = p.variables[j].ub;
            cost[j] = j < static_cast<int>(p.objective.size()) ? p.objective[j] : 0.0;
            obj_scale = std::max(obj_scale, std::abs(cost[j]));
        }
        for (int r = 0; r < m; ++r) {
            rhs[r] = p.constraints[r].rhs;
            const int lj = n + r;
            switch (p.constraints[r].rel) {
                case Relation::LessEqual: lb[lj] = 0.0; ub[lj] = kInf; break;
                case Relation::Equal: lb[lj] = 0.0; ub[lj] = 0.0; break;
                case Relation::GreaterEqual: lb[lj] = -kInf; ub[lj] = 0.0; break;
            }
        }
        build_csc(p);
        status.assign(N, VarStatus::AtLower);
        basis_pos.assign(N, -1);
    }

    void build_csc(const LpProblem& p) {
        std::vector<std::vector<std::pair<int, double>>> cols(static_cast<size_t>(N));
        for (int r = 0; r < m; ++r) {
            for (const auto& [j, c] : p.constraints[r].coeffs) {
                if (c != 0.0) cols[static_cast<size_t>(j)].emplace_back(r, c);
            }
            cols[static_cast<size_t>(n + r)].emplace_back(r, 1.0);
        }
        col_ptr.assign(static_cast<size_t>(N) + 1, 0);
        for (int j = 0; j < N; ++j) {
            auto& cj = cols[static_cast<size_t>(j)];
            std::sort(cj.begin(), cj.end());
            // merge duplicates
            std::vector<std::pair<int, double>> merged;
            for (const auto& e : cj) {
                if (!merged.empty() && merged.back().first == e.first) {
                    merged.back().second += e.second;
                } else {
                    merged.push_back(e);
                }
            }
            cj = std::move(merged);
            col_ptr[static_cast<size_t>(j) + 1] = col_ptr[static_cast<size_t>(j)] + static_cast<int>(cj.size());
        }
        row_ind.resize(static_cast<size_t>(col_ptr.back()));
        col_val.resize(static_cast<size_t>(col_ptr.back()));
        for (int j = 0; j < N; ++j) {
            int k = col_ptr[static_cast<size_t>(j)];
            for (const auto& [r, c] : cols[static_cast<size_t>(j)]) {
                row_ind[static_cast<size_t>(k)] = r;
                col_val[static_cast<size_t>(k)] = c;
                ++k;
            }
        }
    }

    double nonbasic_value(int j) const {
        switch (status[static_cast<size_t>(j)]) {
            case VarStatus::AtLower: return lb[static_cast<size_t>(j)];
            case VarStatus::AtUpper: return ub[static_cast<size_t>(j)];
            case VarStatus::Free: return 0.0;
            case VarStatus::Basic: break;
        }
        return 0.0;
    }

    void reset_to_logical_basis() {
        basic.resize(static_cast<size_t>(m));
        basis_pos.assign(static_cast<size_t>(N), -1);
        for (int j = 0; j < n; ++j) {
            if (std::isfinite(lb[static_cast<size_t>(j)])) {
                status[static_cast<size_t>(j)] = VarStatus::AtLower;
            } else if (std::isfinite(ub[static_cast<size_t>(j)])) {
                status[static_cast<size_t>(j)] = VarStatus::AtUpper;
            } else {
                status[static_cast<size_t>(j)] = VarStatus::Free;
            }
        }
        for (int r = 0; r < m; ++r) {
            basic[static_cast<size_t>(r)] = n + r;
            status[static_cast<size_t>(n + r)] = VarStatus::Basic;
            basis_pos[static_cast<size_t>(n + r)] = r;
        }
        factor_valid = false;
    }

    void factorize() {
        SpMat B(m, m);
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(static_cast<size_t>(col_ptr.back()));
        for (int k = 0; k < m; ++k) {
            const int j = basic[static_cast<size_t>(k)];
            for (int p = col_ptr[static_cast<size_t>(j)]; p < col_ptr[static_cast<size_t>(j) + 1]; ++p) {
                trips.emplace_back(row_ind[static_cast<size_t>(p)], k, col_val[static_cast<size_t>(p)]);
            }
        }
        B.setFromTriplets(trips.begin(), trips.end());
        lu.compute(B);
        if (lu.info() != Eigen::Success) {
            throw NumericalFailure("singular basis factorization");
        }
        etas.clear();
        pivots_since_refactor = 0;
        factor_valid = true;
    }

    void refactorize_with_repair() {
        try {
            factorize();
        } catch (const NumericalFailure&) {
            reset_to_logical_basis();
            factorize();
        }
        recompute_basic_values();
        d_valid = false;
    }

    void recompute_basic_values() {
        Vec v = Vec::Zero(m);
        for (int r = 0; r < m; ++r) v[r] = rhs[static_cast<size_t>(r)];
        for (int j = 0; j < N; ++j) {
            if (status[static_cast<size_t>(j)] == VarStatus::Basic) continue;
            const double xj = nonbasic_value(j);
            if (xj == 0.0) continue;
            for (int p = col_ptr[static_cast<size_t>(j)]; p < col_ptr[static_cast<size_t>(j) + 1]; ++p) {
                v[row_ind[static_cast<size_t>(p)]] -= col_val[static_cast<size_t>(p)] * xj;
            }
        }
        xB = ftran(v);
        values_valid = true;
    }

    Vec ftran(const Vec& v) {
        Vec w = lu.solve(v);
        for (const auto& e : etas) {
            const double zr = w[e.pivot_pos] / e.pivot_val;
            if (zr != 0.0) {
                for (const auto& [i, wi] : e.entries) w[i] -= wi * zr;
            }
            w[e.pivot_pos] = zr;
        }
        return w;
    }

    Vec btran(const Vec& c) {
        Vec z = c;
        for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
            double dot = 0.0;
            for (const auto& [i, wi] : it->entries) dot += wi * z[i];
            z[it->pivot_pos] = (z[it->pivot_pos] - dot) / it->pivot_val;
        }
        return lu.transpose().solve(z);
    }

    double column_dot(int j, const Vec& y) const {
        double acc = 0.0;
        for (int p = col_ptr[static_cast<size_t>(j)]; p < col_ptr[static_cast<size_t>(j) + 1]; ++p) {
            acc += col_val[static_cast<size_t>(p)] * y[row_ind[static_cast<size_t>(p)]];
        }
        return acc;
    }

    struct Pricing {
        int col = -1;
        int direction = 0;  // +1 entering rises, -1 falls
        double score = 0.0;
    };

    // phase-1 Dantzig pricing from scratch; the ascending scan keeps the
    // lowest index on ties, Bland mode takes the first improving column
    Pricing price_phase1(const Vec& y) const {
        Pricing best;
        const double dtol = opts.opt_tol;
        for (int j = 0; j < N; ++j) {
            const VarStatus st = status[static_cast<size_t>(j)];
            if (st == VarStatus::Basic) continue;
            if (ub[static_cast<size_t>(j)] - lb[static_cast<size_t>(j)] <= 0.0) continue;  // fixed
            const double dj = -column_dot(j, y);
            double score = 0.0;
            int dir = 0;
            if ((st == VarStatus::AtLower || st == VarStatus::Free) && dj < -dtol) {
                score = -dj;
                dir = +1;
            } else if ((st == VarStatus::AtUpper || st == VarStatus::Free) && dj > dtol) {
                score = dj;
                dir = -1;
            }
            if (dir == 0) continue;
            if (bland) return {j, dir, score};
            if (score > best.score) best = {j, dir, score};
        }
        return best;
    }

    // phase-2 reduced costs, maintained across pivots and bound changes
    std::vector<double> dvec;
    std::vector<double> devex_w;
    bool d_valid = false;

    void recompute_reduced_costs() {
        Vec cB(m);
        for (int k = 0; k < m; ++k) cB[k] = cost[static_cast<size_t>(basic[static_cast<size_t>(k)])];
        const Vec y = btran(cB);
        dvec.assign(static_cast<size_t>(N), 0.0);
        for (int j = 0; j < N; ++j) {
            if (status[static_cast<size_t>(j)] == VarStatus::Basic) continue;
            dvec[static_cast<size_t>(j)] = cost[static_cast<size_t>(j)] - column_dot(j, y);
        }
        devex_w.assign(static_cast<size_t>(N), 1.0);
        d_valid = true;
    }

    // Devex pricing on the maintained reduced costs
    Pricing price_phase2() const {
        Pricing best;
        double best_score = 0.0;
        const double dtol = opts.opt_tol * std::max(1.0, obj_scale);
        for (int j = 0; j < N; ++j) {
            const VarStatus st = status[static_cast<size_t>(j)];
            if (st == VarStatus::Basic) continue;
            if (ub[static_cast<size_t>(j)] - lb[static_cast<size_t>(j)] <= 0.0) continue;
            const double dj = dvec[static_cast<size_t>(j)];
            int dir = 0;
            if ((st == VarStatus::AtLower || st == VarStatus::Free) && dj < -dtol) {
                dir = +1;
            } else if ((st == VarStatus::AtUpper || st == VarStatus::Free) && dj > dtol) {
                dir = -1;
            }
            if (dir == 0) continue;
            if (bland) return {j, dir, std::abs(dj)};
            const double score = dj * dj / devex_w[static_cast<size_t>(j)];
            if (score > best_score) {
                best_score = score;
                best = {j, dir, std::abs(dj)};
            }
        }
        return best;
    }

    // pivotal-row update of reduced costs and Devex weights; call before
    // apply_step mutates the basis
    void update_reduced_costs(int enter_col, int leave_pos, double pivot) {
        Vec e = Vec::Zero(m);
        e[leave_pos] = 1.0;
        const Vec rho = btran(e);
        const int leave_col = basic[static_cast<size_t>(leave_pos)];
        const double dq = dvec[static_cast<size_t>(enter_col)];
        const double ratio_d = dq / pivot;
        const double wq = devex_w[static_cast<size_t>(enter_col)];
        double max_w = 1.0;
        for (int j = 0; j < N; ++j) {
            if (status[static_cast<size_t>(j)] == VarStatus::Basic) continue;
            if (j == enter_col) continue;
            const double alpha = column_dot(j, rho);
            if (alpha == 0.0) continue;
            dvec[static_cast<size_t>(j)] -= ratio_d * alpha;
            const double cand = (alpha * alpha) / (pivot * pivot) * wq;
            if (cand > devex_w[static_cast<size_t>(j)]) devex_w[static_cast<size_t>(j)] = cand;
            max_w = std::max(max_w, devex_w[static_cast<size_t>(j)]);
        }
        dvec[static_cast<size_t>(leave_col)] = -ratio_d;
        devex_w[static_cast<size_t>(leave_col)] = std::max(wq / (pivot * pivot), 1.0);
        dvec[static_cast<size_t>(enter_col)] = 0.0;
        if (max_w > 1e10) devex_w.assign(static_cast<size_t>(N), 1.0);
    }

    Vec phase1_gradient() const {
        Vec g = Vec::Zero(m);
        for (int k = 0; k < m; ++k) {
            const int j = basic[static_cast<size_t>(k)];
            const double v = xB[k];
            if (v < lb[static_cast<size_t>(j)] - opts.feas_tol) {
                g[k] = -1.0;
            } else if (v > ub[static_cast<size_t>(j)] + opts.feas_tol) {
                g[k] = 1.0;
            }
        }
        return g;
    }

    double max_infeasibility() const {
        double worst = 0.0;
        for (int k = 0; k < m; ++k) {
            const int j = basic[static_cast<size_t>(k)];
            worst = std::max(worst, lb[static_cast<size_t>(j)] - xB[k]);
            worst = std::max(worst, xB[k] - ub[static_cast<size_t>(j)]);
        }
        return worst;
    }

    struct Ratio {
        double t = kInf;
        int block_pos = -1;        // -1: bound flip (or unbounded if t == inf)
        double target = 0.0;       // bound the leaving variable stops at
        double pivot = 0.0;
    };

    Ratio ratio_test(int q, int dir, const Vec& w, bool phase1) const {
        Ratio best;
        const double range = ub[static_cast<size_t>(q)] - lb[static_cast<size_t>(q)];
        if (std::isfinite(range)) best.t = range;

        for (int k = 0; k < m; ++k) {
            const double wk = w[k];
            if (std::abs(wk) <= kPivotTol) continue;
            const double rate = -dir * wk;  // d xB_k / d t
            const int j = basic[static_cast<size_t>(k)];
            const double l = lb[static_cast<size_t>(j)];
            const double u = ub[static_cast<size_t>(j)];
            const double v = xB[k];
            double t, target;
            if (phase1 && v < l - opts.feas_tol) {
                if (rate <= 0.0) continue;
                t = (l - v) / rate;
                target = l;
            } else if (phase1 && v > u + opts.feas_tol) {
                if (rate >= 0.0) continue;
                t = (u - v) / rate;
                target = u;
            } else if (rate > 0.0) {
                if (!std::isfinite(u)) continue;
                t = (u - v) / rate;
                target = u;
            } else {
                if (!std::isfinite(l)) continue;
                t = (l - v) / rate;
                target = l;
            }
            if (t < 0.0) t = 0.0;
            // ties between pivots favor the larger |pivot| (Bland: lowest
            // variable index); a bound flip is kept unless a pivot is
            // strictly shorter.
            bool take = false;
            if (t < best.t - 1e-12) {
                take = true;
            } else if (t <= best.t + 1e-12 && best.block_pos >= 0) {
                if (bland) {
                    take = basic[static_cast<size_t>(k)] < basic[static_cast<size_t>(best.block_pos)];
                } else {
                    take = std::abs(wk) > std::abs(best.pivot);
                }
            }
            if (take) {
                best.t = std::min(t, best.t);
                best.block_pos = k;
                best.target = target;
                best.pivot = wk;
            }
        }
        return best;
    }

    void apply_step(int q, int dir, const Vec& w, const Ratio& r) {
        const double t = r.t;
        if (t != 0.0) {
            for (int k = 0; k < m; ++k) {
                if (w[k] != 0.0) xB[k] -= dir * t * w[k];
            }
        }
        if (r.block_pos < 0) {
            // bound flip
            status[static_cast<size_t>(q)] =
                dir > 0 ? VarStatus::AtUpper : VarStatus::AtLower;
            return;
        }
        const int leave_pos = r.block_pos;
        const int leave_col = basic[static_cast<size_t>(leave_pos)];
        const double enter_val = nonbasic_value(q) + dir * t;

        status[static_cast<size_t>(leave_col)] =
            (r.target == lb[static_cast<size_t>(leave_col)]) ? VarStatus::AtLower : VarStatus::AtUpper;
        basis_pos[static_cast<size_t>(leave_col)] = -1;

        basic[static_cast<size_t>(leave_pos)] = q;
        status[static_cast<size_t>(q)] = VarStatus::Basic;
        basis_pos[static_cast<size_t>(q)] = leave_pos;
        xB[leave_pos] = enter_val;

        Eta eta;
        eta.pivot_pos = leave_pos;
        eta.pivot_val = w[leave_pos];
        for (int k = 0; k < m; ++k) {
            if (k != leave_pos && std::abs(w[k]) > kDropTol) eta.entries.emplace_back(k, w[k]);
        }
        etas.push_back(std::move(eta));
        ++pivots_since_refactor;
    }

    Vec column_vector(int q) const {
        Vec v = Vec::Zero(m);
        for (int p = col_ptr[static_cast<size_t>(q)]; p < col_ptr[static_cast<size_t>(q) + 1]; ++p) {
            v[row_ind[static_cast<size_t>(p)]] = col_val[static_cast<size_t>(p)];
        }
        return v;
    }

    LpStatus iterate() {
        long iter_guard = 0;
        const bool debug = std::getenv("TC_SIMPLEX_DEBUG") != nullptr;
        while (true) {
            if (++iter_guard > opts.max_iterations) {
                throw NumericalFailure("simplex iteration limit exceeded");
            }
            if (debug && iter_guard % 500 == 0) {
                double obj = 0.0;
                for (int k = 0; k < m; ++k) {
                    obj += cost[static_cast<size_t>(basic[static_cast<size_t>(k)])] * xB[k];
                }
                std::fprintf(stderr, "iter %ld infeas %.3e obj %.6e bland %d etas %zu\n",
                             iter_guard, max_infeasibility(), obj, bland ? 1 : 0,
                             etas.size());
            }
            if (pivots_since_refactor >= opts.refactor_interval) {
                refactorize_with_repair();
                d_valid = false;  // refresh against drift
            }
            const double infeas = max_infeasibility();
            const bool phase1 = infeas > opts.feas_tol;
            Pricing pr;
            if (phase1) {
                const Vec y = btran(phase1_gradient());
                pr = price_phase1(y);
                if (pr.col < 0) return LpStatus::Infeasible;
            } else {
                if (!d_valid) recompute_reduced_costs();
                pr = price_phase2();
                if (pr.col < 0) {
                    if (pivots_since_refactor > 0 || !etas.empty()) {
                        // confirm optimality on exact reduced costs
                        refactorize_with_repair();
                        recompute_reduced_costs();
                        pr = price_phase2();
                    }
                    if (pr.col < 0) return LpStatus::Optimal;
                }
            }
            const Vec w = ftran(column_vector(pr.col));
            const Ratio rt = ratio_test(pr.col, pr.direction, w, phase1);
            if (!std::isfinite(rt.t)) {
                if (phase1) throw NumericalFailure("unbounded phase-1 direction");
                return LpStatus::Unbounded;
            }
            if (rt.block_pos >= 0 && std::abs(rt.pivot) < 1e-7 && pivots_since_refactor > 0) {
                // tiny pivot on an aged factorization: refresh and re-derive
                refactorize_with_repair();
                d_valid = false;
                continue;
            }
            if (rt.block_pos >= 0) {
                if (phase1) {
                    d_valid = false;  // basis changes under phase-1 costs
                } else {
                    update_reduced_costs(pr.col, rt.block_pos, rt.pivot);
                }
            }
            apply_step(pr.col, pr.direction, w, rt);
            ++total_iterations;
            if (rt.t <= kDegenTol) {
                if (++degen_streak >= opts.bland_threshold) bland = true;
            } else {
                degen_streak = 0;
                bland = false;
            }
        }
    }

    // quick exact check of rows whose structural support is entirely fixed
    bool trivially_infeasible() const {
        std::vector<double> act(static_cast<size_t>(m), 0.0);
        std::vector<char> all_fixed(static_cast<size_t>(m), 1);
        for (int j = 0; j < n; ++j) {
            const bool fixed = ub[static_cast<size_t>(j)] - lb[static_cast<size_t>(j)] <= 0.0;
            for (int p = col_ptr[static_cast<size_t>(j)]; p < col_ptr[static_cast<size_t>(j) + 1]; ++p) {
                const int r = row_ind[static_cast<size_t>(p)];
                if (fixed) {
                    act[static_cast<size_t>(r)] += col_val[static_cast<size_t>(p)] * lb[static_cast<size_t>(j)];
                } else {
                    all_fixed[static_cast<size_t>(r)] = 0;
                }
            }
        }
        for (int r = 0; r < m; ++r) {
            if (!all_fixed[static_cast<size_t>(r)]) continue;
            const int lj = n + r;
            const double s = rhs[static_cast<size_t>(r)] - act[static_cast<size_t>(r)];
            if (s < lb[static_cast<size_t>(lj)] - 1e-7 || s > ub[static_cast<size_t>(lj)] + 1e-7) {
                return true;
            }
        }
        return false;
    }

    LpSolution run() {
        if (trivially_infeasible()) {
            LpSolution sol;
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        if (basic.empty()) reset_to_logical_basis();
        bland = false;
        degen_streak = 0;

        LpStatus st = LpStatus::Infeasible;
        int attempts = 0;
        while (true) {
            if (!factor_valid || !values_valid) {
                refactorize_with_repair();
            } else {
                recompute_basic_values();
            }
            st = iterate();
            if (st != LpStatus::Optimal) break;
            // verify on fresh factors; resume if the basis drifted
            refactorize_with_repair();
            if (max_infeasibility() <= 1e-7) break;
            if (++attempts > opts.refactor_retries) {
                throw NumericalFailure("residual infeasibility after refactorization retries");
            }
        }

        LpSolution sol;
        sol.status = st;
        if (st != LpStatus::Optimal) {
            values_valid = false;
            return sol;
        }
        sol.primal.resize(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            sol.primal[static_cast<size_t>(j)] =
                status[static_cast<size_t>(j)] == VarStatus::Basic
                    ? xB[basis_pos[static_cast<size_t>(j)]]
                    : nonbasic_value(j);
        }
        Vec cB(m);
        for (int k = 0; k < m; ++k) cB[k] = cost[static_cast<size_t>(basic[static_cast<size_t>(k)])];
        const Vec y = btran(cB);
        sol.duals.resize(static_cast<size_t>(m));
        for (int r = 0; r < m; ++r) sol.duals[static_cast<size_t>(r)] = y[r];
        double obj = obj_const;
        for (int j = 0; j < n; ++j) obj += cost[static_cast<size_t>(j)] * sol.primal[static_cast<size_t>(j)];
        sol.objective = obj;
        return sol;
    }
};

Simplex::Simplex(const LpProblem& problem, SimplexOptions opts)
    : impl_(std::make_unique<Impl>(problem, opts)) {}

Simplex::~Simplex() = default;

void Simplex::set_var_bounds(int var, double new_lb, double new_ub) {
    if (var < 0 || var >= impl_->n) throw std::out_of_range("variable index");
    if (!(new_lb <= new_ub)) throw std::invalid_argument("lb > ub");
    impl_->lb[static_cast<size_t>(var)] = new_lb;
    impl_->ub[static_cast<size_t>(var)] = new_ub;
    // keep the nonbasic status meaningful under the new bounds
    auto& st = impl_->status[static_cast<size_t>(var)];
    if (st == VarStatus::AtLower && !std::isfinite(new_lb)) {
        st = std::isfinite(new_ub) ? VarStatus::AtUpper : VarStatus::Free;
    } else if (st == VarStatus::AtUpper && !std::isfinite(new_ub)) {
        st = std::isfinite(new_lb) ? VarStatus::AtLower : VarStatus::Free;
    } else if (st == VarStatus::Free && (std::isfinite(new_lb) || std::isfinite(new_ub))) {
        st = std::isfinite(new_lb) ? VarStatus::AtLower : VarStatus::AtUpper;
    }
    impl_->values_valid = false;
}

std::pair<double, double> Simplex::var_bounds(int var) const {
    return {impl_->lb[static_cast<size_t>(var)], impl_->ub[static_cast<size_t>(var)]};
}

LpSolution Simplex::solve() { return impl_->run(); }

bool Simplex::has_basis() const { return !impl_->basic.empty(); }

Simplex::Basis Simplex::basis() const {
    Basis b;
    b.basic = impl_->basic;
    b.status = impl_->status;
    return b;
}

void Simplex::set_basis(const Basis& basis) {
    if (static_cast<int>(basis.basic.size()) != impl_->m ||
        static_cast<int>(basis.status.size()) != impl_->N) {
        throw std::invalid_argument("basis shape mismatch");
    }
    impl_->basic = basis.basic;
    impl_->status = basis.status;
    impl_->basis_pos.assign(static_cast<size_t>(impl_->N), -1);
    for (int k = 0; k < impl_->m; ++k) {
        impl_->basis_pos[static_cast<size_t>(impl_->basic[static_cast<size_t>(k)])] = k;
    }
    impl_->factor_valid = false;
    impl_->values_valid = false;
    impl_->d_valid = false;
}

long Simplex::iterations() const { return impl_->total_iterations; }

}  // namespace topocand
