#include "topocand/lpac.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "topocand/simplex.hpp"

namespace topocand {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBindingSlack = 1e-5;

std::string tag(const char* what, int id) {
    return std::string(what) + "[" + std::to_string(id) + "]";
}

}  // namespace

BranchAffine branch_flow_affine(const Branch& br) {
    const auto [g, b] = br.series_admittance();
    const double tau = br.tap;
    const double sigma = br.shift;
    const double bc2 = br.b_charge / 2.0;
    BranchAffine f;

    // delta = theta_i - theta_j - sigma
    // p_from = g/tau^2 (1 + 2 phi_i) - (1/tau)(g*cs + g*(phi_i+phi_j) + b*delta)
    f.p_from.c0 = g / (tau * tau) + (b / tau) * sigma;
    f.p_from.a_ti = -b / tau;
    f.p_from.a_tj = b / tau;
    f.p_from.a_pi = 2.0 * g / (tau * tau) - g / tau;
    f.p_from.a_pj = -g / tau;
    f.p_from.a_cs = -g / tau;

    // q_from = -(b+bc2)/tau^2 (1 + 2 phi_i) - (1/tau)(g*delta - b*cs - b*(phi_i+phi_j))
    f.q_from.c0 = -(b + bc2) / (tau * tau) + (g / tau) * sigma;
    f.q_from.a_ti = -g / tau;
    f.q_from.a_tj = g / tau;
    f.q_from.a_pi = -2.0 * (b + bc2) / (tau * tau) + b / tau;
    f.q_from.a_pj = b / tau;
    f.q_from.a_cs = b / tau;

    // p_to = g (1 + 2 phi_j) - (1/tau)(g*cs + g*(phi_i+phi_j) - b*delta)
    f.p_to.c0 = g - (b / tau) * sigma;
    f.p_to.a_ti = b / tau;
    f.p_to.a_tj = -b / tau;
    f.p_to.a_pi = -g / tau;
    f.p_to.a_pj = 2.0 * g - g / tau;
    f.p_to.a_cs = -g / tau;

    // q_to = -(b+bc2) (1 + 2 phi_j) - (1/tau)(-g*delta - b*cs - b*(phi_i+phi_j))
    f.q_to.c0 = -(b + bc2) - (g / tau) * sigma;
    f.q_to.a_ti = g / tau;
    f.q_to.a_tj = -g / tau;
    f.q_to.a_pi = b / tau;
    f.q_to.a_pj = -2.0 * (b + bc2) + b / tau;
    f.q_to.a_cs = b / tau;
    return f;
}

BranchFlow lpac_flow(const Branch& br, double theta_i, double theta_j, double phi_i,
                     double phi_j, double cs) {
    const BranchAffine f = branch_flow_affine(br);
    BranchFlow out;
    out.p_from = f.p_from.eval(theta_i, theta_j, phi_i, phi_j, cs);
    out.q_from = f.q_from.eval(theta_i, theta_j, phi_i, phi_j, cs);
    out.p_to = f.p_to.eval(theta_i, theta_j, phi_i, phi_j, cs);
    out.q_to = f.q_to.eval(theta_i, theta_j, phi_i, phi_j, cs);
    return out;
}

double cs_envelope(double delta, const LpacOptions& opts) {
    double v = 1.0;
    const int K = std::max(2, opts.cosine_segments);
    for (int k = 0; k < K; ++k) {
        const double t = -opts.theta_max + 2.0 * opts.theta_max * k / (K - 1);
        v = std::min(v, std::cos(t) - std::sin(t) * (delta - t));
    }
    return std::max(v, std::cos(opts.theta_max));
}

LpacModel build_lpac(const Grid& grid, const LpacOptions& opts,
                     const std::set<int>& switchable_branches) {
    if (!(opts.theta_max > 0.0 && opts.theta_max <= kPi / 2.0)) {
        throw std::invalid_argument("theta_max must lie in (0, pi/2]");
    }
    if (opts.cosine_segments < 2) throw std::invalid_argument("cosine_segments must be >= 2");

    const GridIndex gidx = GridIndex::build(grid);
    const int nb = static_cast<int>(grid.buses.size());
    const int nbr = static_cast<int>(grid.branches.size());
    const int ng = static_cast<int>(grid.generators.size());

    LpacModel model;
    LpProblem& lp = model.problem;
    LpacIndex& ix = model.index;
    ix.theta.assign(static_cast<size_t>(nb), -1);
    ix.phi.assign(static_cast<size_t>(nb), -1);
    ix.cs.assign(static_cast<size_t>(nbr), -1);
    ix.p_from.assign(static_cast<size_t>(nbr), -1);
    ix.q_from.assign(static_cast<size_t>(nbr), -1);
    ix.p_to.assign(static_cast<size_t>(nbr), -1);
    ix.q_to.assign(static_cast<size_t>(nbr), -1);
    ix.branch_active.assign(static_cast<size_t>(nbr), -1);
    ix.p_gen.assign(static_cast<size_t>(ng), -1);
    ix.q_gen.assign(static_cast<size_t>(ng), -1);
    ix.cost_epi.assign(static_cast<size_t>(ng), -1);
    ix.p_balance_row.assign(static_cast<size_t>(nb), -1);
    ix.q_balance_row.assign(static_cast<size_t>(nb), -1);
    ix.thermal_rows_from.assign(static_cast<size_t>(nbr), {});
    ix.thermal_rows_to.assign(static_cast<size_t>(nbr), {});
    ix.angle_upper_row.assign(static_cast<size_t>(nbr), -1);
    ix.angle_lower_row.assign(static_cast<size_t>(nbr), -1);

    // grid-wide cap for unlimited flows and switch gating
    double flow_cap = 0.0;
    for (const auto& g : grid.generators) flow_cap += std::abs(g.pmax);
    for (const auto& l : grid.loads) flow_cap += std::abs(l.pd) + std::abs(l.qd);
    flow_cap = std::max(1.0, 2.0 * flow_cap);

    for (int bp = 0; bp < nb; ++bp) {
        const Bus& bus = grid.buses[static_cast<size_t>(bp)];
        const bool slack = bus.role == BusRole::Slack;
        ix.theta[static_cast<size_t>(bp)] =
            lp.add_var(tag("theta", bus.id), slack ? 0.0 : -kPi, slack ? 0.0 : kPi);
        ix.phi[static_cast<size_t>(bp)] =
            lp.add_var(tag("phi", bus.id), bus.vmin - 1.0, bus.vmax - 1.0);
    }

    for (int bp = 0; bp < nbr; ++bp) {
        const Branch& br = grid.branches[static_cast<size_t>(bp)];
        if (!br.in_service) continue;
        if (br.x == 0.0) {
            throw std::invalid_argument("in-service branch " + std::to_string(br.id) +
                                        " has zero reactance; not representable");
        }
        const double fcap = br.rate_a > 0 ? 1.2 * br.rate_a : flow_cap;
        ix.cs[static_cast<size_t>(bp)] =
            lp.add_var(tag("cs", br.id), std::cos(opts.theta_max), 1.0);
        ix.p_from[static_cast<size_t>(bp)] = lp.add_var(tag("pf", br.id), -fcap, fcap);
        ix.q_from[static_cast<size_t>(bp)] = lp.add_var(tag("qf", br.id), -fcap, fcap);
        ix.p_to[static_cast<size_t>(bp)] = lp.add_var(tag("pt", br.id), -fcap, fcap);
        ix.q_to[static_cast<size_t>(bp)] = lp.add_var(tag("qt", br.id), -fcap, fcap);
        if (switchable_branches.count(bp)) {
            ix.branch_active[static_cast<size_t>(bp)] =
                lp.add_var(tag("active", br.id), 0.0, 1.0);
        }
    }

    for (int gp = 0; gp < ng; ++gp) {
        const Generator& gen = grid.generators[static_cast<size_t>(gp)];
        if (!gen.in_service) continue;
        ix.p_gen[static_cast<size_t>(gp)] = lp.add_var(tag("pg", gen.id), gen.pmin, gen.pmax);
        ix.q_gen[static_cast<size_t>(gp)] = lp.add_var(tag("qg", gen.id), gen.qmin, gen.qmax);
    }

    // generator cost: linear directly, convex PWL epigraph otherwise
    const double base = grid.base_mva;
    for (int gp = 0; gp < ng; ++gp) {
        const Generator& gen = grid.generators[static_cast<size_t>(gp)];
        if (!gen.in_service) continue;
        const int pg = ix.p_gen[static_cast<size_t>(gp)];
        const auto& c = gen.cost;
        if (c.kind == GenCost::Kind::Polynomial) {
            if (c.c2 == 0.0) {
                lp.objective[static_cast<size_t>(pg)] += c.c1 * base;
                lp.objective_constant += c.c0;
                continue;
            }
            const double pmin_mw = gen.pmin * base;
            const double pmax_mw = gen.pmax * base;
            auto poly = [&](double mw) { return c.c2 * mw * mw + c.c1 * mw + c.c0; };
            if (pmax_mw - pmin_mw < 1e-9) {
                lp.objective_constant += poly(pmin_mw);
                continue;
            }
            const int t = lp.add_var(tag("gencost", gen.id), -kInf, kInf, 1.0);
            ix.cost_epi[static_cast<size_t>(gp)] = t;
            const int segments = std::max(1, opts.cost_segments);
            for (int k = 0; k < segments; ++k) {
                const double p0 = pmin_mw + (pmax_mw - pmin_mw) * k / segments;
                const double p1 = pmin_mw + (pmax_mw - pmin_mw) * (k + 1) / segments;
                const double slope = (poly(p1) - poly(p0)) / (p1 - p0);
                const double intercept = poly(p0) - slope * p0;
                lp.add_row(Relation::GreaterEqual, intercept,
                           {{t, 1.0}, {pg, -slope * base}},
                           tag("cost_cut", gen.id) + ":" + std::to_string(k));
            }
        } else {
            const auto& pts = c.points;
            if (pts.size() < 2) throw std::invalid_argument("piecewise cost needs two points");
            const int t = lp.add_var(tag("gencost", gen.id), -kInf, kInf, 1.0);
            ix.cost_epi[static_cast<size_t>(gp)] = t;
            for (size_t k = 0; k + 1 < pts.size(); ++k) {
                const double slope =
                    (pts[k + 1].second - pts[k].second) / (pts[k + 1].first - pts[k].first);
                const double intercept = pts[k].second - slope * pts[k].first;
                lp.add_row(Relation::GreaterEqual, intercept,
                           {{t, 1.0}, {pg, -slope * base}},
                           tag("cost_cut", gen.id) + ":" + std::to_string(k));
            }
        }
    }

    // branch rows
    const int K = std::max(2, opts.cosine_segments);
    for (int bp = 0; bp < nbr; ++bp) {
        const Branch& br = grid.branches[static_cast<size_t>(bp)];
        if (!br.in_service) continue;
        const int fi = gidx.bus_pos.at(br.from_bus);
        const int ti = gidx.bus_pos.at(br.to_bus);
        const int th_i = ix.theta[static_cast<size_t>(fi)];
        const int th_j = ix.theta[static_cast<size_t>(ti)];
        const int ph_i = ix.phi[static_cast<size_t>(fi)];
        const int ph_j = ix.phi[static_cast<size_t>(ti)];
        const int cs = ix.cs[static_cast<size_t>(bp)];
        const int active = ix.branch_active[static_cast<size_t>(bp)];
        const BranchAffine aff = branch_flow_affine(br);

        // cosine surrogate: tangent cuts of cos at evenly spaced points
        for (int k = 0; k < K; ++k) {
            const double t = -opts.theta_max + 2.0 * opts.theta_max * k / (K - 1);
            const double st = std::sin(t);
            lp.add_row(Relation::LessEqual, std::cos(t) + t * st + st * br.shift,
                       {{cs, 1.0}, {th_i, st}, {th_j, -st}},
                       tag("cs_cut", br.id) + ":" + std::to_string(k));
        }

        // flow definitions; switchable branches get big-M slack tied to activity
        struct Def {
            const FlowAffine* a;
            int var;
            const char* nm;
        };
        const Def defs[4] = {{&aff.p_from, ix.p_from[static_cast<size_t>(bp)], "pf_def"},
                             {&aff.q_from, ix.q_from[static_cast<size_t>(bp)], "qf_def"},
                             {&aff.p_to, ix.p_to[static_cast<size_t>(bp)], "pt_def"},
                             {&aff.q_to, ix.q_to[static_cast<size_t>(bp)], "qt_def"}};
        const auto [g_s, b_s] = br.series_admittance();
        const double expr_span = (std::abs(g_s) + std::abs(b_s)) *
                                     (2.0 * kPi + 2.0) / std::min(1.0, br.tap) +
                                 std::abs(br.b_charge) + std::abs(br.rate_a) + 10.0;
        for (const auto& def : defs) {
            std::vector<std::pair<int, double>> row{{def.var, 1.0},
                                                    {th_i, -def.a->a_ti},
                                                    {th_j, -def.a->a_tj},
                                                    {ph_i, -def.a->a_pi},
                                                    {ph_j, -def.a->a_pj},
                                                    {cs, -def.a->a_cs}};
            if (active < 0) {
                lp.add_row(Relation::Equal, def.a->c0, row, tag(def.nm, br.id));
            } else {
                // flow_var - expr within +-M(1-a); flow gated to zero when open
                auto upper = row;
                upper.emplace_back(active, expr_span);
                lp.add_row(Relation::LessEqual, def.a->c0 + expr_span, upper,
                           tag(def.nm, br.id) + ":u");
                auto lower = row;
                lower.emplace_back(active, -expr_span);
                lp.add_row(Relation::GreaterEqual, def.a->c0 - expr_span, lower,
                           tag(def.nm, br.id) + ":l");
                const double cap = br.rate_a > 0 ? 1.2 * br.rate_a : flow_cap;
                lp.add_row(Relation::LessEqual, 0.0, {{def.var, 1.0}, {active, -cap}},
                           tag(def.nm, br.id) + ":gate_u");
                lp.add_row(Relation::GreaterEqual, 0.0, {{def.var, 1.0}, {active, cap}},
                           tag(def.nm, br.id) + ":gate_l");
            }
        }

        // thermal polygon per direction, vertices on the rating circle
        if (br.rate_a > 0) {
            const int TK = std::max(4, opts.thermal_segments);
            const double inner = br.rate_a * std::cos(kPi / TK);
            for (int k = 0; k < TK; ++k) {
                const double a = (k + 0.5) * 2.0 * kPi / TK;
                ix.thermal_rows_from[static_cast<size_t>(bp)].push_back(lp.add_row(
                    Relation::LessEqual, inner,
                    {{ix.p_from[static_cast<size_t>(bp)], std::cos(a)},
                     {ix.q_from[static_cast<size_t>(bp)], std::sin(a)}},
                    tag("thermal_f", br.id) + ":" + std::to_string(k)));
                ix.thermal_rows_to[static_cast<size_t>(bp)].push_back(lp.add_row(
                    Relation::LessEqual, inner,
                    {{ix.p_to[static_cast<size_t>(bp)], std::cos(a)},
                     {ix.q_to[static_cast<size_t>(bp)], std::sin(a)}},
                    tag("thermal_t", br.id) + ":" + std::to_string(k)));
            }
        }

        // angle-difference window: branch limits tightened by the cs trust region
        const double hi = std::min(br.ang_max, opts.theta_max + br.shift);
        const double lo = std::max(br.ang_min, -opts.theta_max + br.shift);
        if (active < 0) {
            ix.angle_upper_row[static_cast<size_t>(bp)] = lp.add_row(
                Relation::LessEqual, hi, {{th_i, 1.0}, {th_j, -1.0}}, tag("ang_u", br.id));
            ix.angle_lower_row[static_cast<size_t>(bp)] = lp.add_row(
                Relation::GreaterEqual, lo, {{th_i, 1.0}, {th_j, -1.0}}, tag("ang_l", br.id));
        } else {
            const double relax = 4.0 * kPi;
            ix.angle_upper_row[static_cast<size_t>(bp)] =
                lp.add_row(Relation::LessEqual, hi + relax,
                           {{th_i, 1.0}, {th_j, -1.0}, {active, relax}}, tag("ang_u", br.id));
            ix.angle_lower_row[static_cast<size_t>(bp)] =
                lp.add_row(Relation::GreaterEqual, lo - relax,
                           {{th_i, 1.0}, {th_j, -1.0}, {active, -relax}}, tag("ang_l", br.id));
        }
    }

    // nodal balances
    for (int bp = 0; bp < nb; ++bp) {
        const Bus& bus = grid.buses[static_cast<size_t>(bp)];
        std::vector<std::pair<int, double>> prow, qrow;
        double p_rhs = 0.0, q_rhs = 0.0;
        for (int gp : gidx.gens_at[static_cast<size_t>(bp)]) {
            if (!grid.generators[static_cast<size_t>(gp)].in_service) continue;
            prow.emplace_back(ix.p_gen[static_cast<size_t>(gp)], 1.0);
            qrow.emplace_back(ix.q_gen[static_cast<size_t>(gp)], 1.0);
        }
        for (int lpos : gidx.loads_at[static_cast<size_t>(bp)]) {
            const Load& ld = grid.loads[static_cast<size_t>(lpos)];
            if (!ld.in_service) continue;
            p_rhs += ld.pd;
            q_rhs += ld.qd;
        }
        for (int sp : gidx.shunts_at[static_cast<size_t>(bp)]) {
            const Shunt& sh = grid.shunts[static_cast<size_t>(sp)];
            if (!sh.in_service) continue;
            // shunt draws gs(1+2phi) active, injects bs(1+2phi) reactive
            prow.emplace_back(ix.phi[static_cast<size_t>(bp)], -2.0 * sh.gs);
            p_rhs += sh.gs;
            qrow.emplace_back(ix.phi[static_cast<size_t>(bp)], 2.0 * sh.bs);
            q_rhs -= sh.bs;
        }
        for (int brp : gidx.branches_at[static_cast<size_t>(bp)]) {
            const Branch& br = grid.branches[static_cast<size_t>(brp)];
            if (!br.in_service) continue;
            if (br.from_bus == bus.id) {
                prow.emplace_back(ix.p_from[static_cast<size_t>(brp)], -1.0);
                qrow.emplace_back(ix.q_from[static_cast<size_t>(brp)], -1.0);
            }
            if (br.to_bus == bus.id) {
                prow.emplace_back(ix.p_to[static_cast<size_t>(brp)], -1.0);
                qrow.emplace_back(ix.q_to[static_cast<size_t>(brp)], -1.0);
            }
        }
        ix.p_balance_row[static_cast<size_t>(bp)] =
            lp.add_row(Relation::Equal, p_rhs, prow, tag("pbal", bus.id));
        ix.q_balance_row[static_cast<size_t>(bp)] =
            lp.add_row(Relation::Equal, q_rhs, qrow, tag("qbal", bus.id));
    }

    return model;
}

int OpfSolution::bus_pos(int bus_id) const {
    for (size_t i = 0; i < bus_ids.size(); ++i) {
        if (bus_ids[i] == bus_id) return static_cast<int>(i);
    }
    throw std::out_of_range("unknown bus id " + std::to_string(bus_id));
}

nlohmann::ordered_json OpfSolution::to_json() const {
    nlohmann::ordered_json j;
    j["format"] = "topocand-opf-v1";
    j["objective"] = objective;
    j["buses"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < bus_ids.size(); ++i) {
        j["buses"].push_back({{"id", bus_ids[i]},
                              {"lmp", lmp[i]},
                              {"qlmp", qlmp[i]},
                              {"angle", angles[i]},
                              {"vmag", vmags[i]},
                              {"binding", bus_binding[i]}});
    }
    j["generators"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < gen_ids.size(); ++i) {
        j["generators"].push_back(
            {{"id", gen_ids[i]}, {"p", p_dispatch[i]}, {"q", q_dispatch[i]}});
    }
    j["branches"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < branch_ids.size(); ++i) {
        j["branches"].push_back({{"id", branch_ids[i]},
                                 {"p_from", flows[i].p_from},
                                 {"q_from", flows[i].q_from},
                                 {"p_to", flows[i].p_to},
                                 {"q_to", flows[i].q_to},
                                 {"binding", branch_binding[i]}});
    }
    return j;
}

LpacInfeasible::LpacInfeasible(std::vector<std::pair<int, double>> shed)
    : std::runtime_error("LPAC OPF infeasible; shed diagnostic attached"),
      shed_buses(std::move(shed)) {}

OpfSolution extract_opf_solution(const Grid& grid, const LpacModel& model,
                                 const LpSolution& lp, const LpacOptions& opts) {
    const LpacIndex& ix = model.index;
    OpfSolution sol;
    sol.objective = lp.objective;
    const double base = grid.base_mva;

    const int nb = static_cast<int>(grid.buses.size());
    sol.bus_ids.resize(static_cast<size_t>(nb));
    sol.lmp.resize(static_cast<size_t>(nb));
    sol.qlmp.resize(static_cast<size_t>(nb));
    sol.angles.resize(static_cast<size_t>(nb));
    sol.vmags.resize(static_cast<size_t>(nb));
    sol.bus_binding.resize(static_cast<size_t>(nb));
    for (int bp = 0; bp < nb; ++bp) {
        const Bus& bus = grid.buses[static_cast<size_t>(bp)];
        sol.bus_ids[static_cast<size_t>(bp)] = bus.id;
        sol.lmp[static_cast<size_t>(bp)] =
            lp.duals[static_cast<size_t>(ix.p_balance_row[static_cast<size_t>(bp)])] / base;
        sol.qlmp[static_cast<size_t>(bp)] =
            lp.duals[static_cast<size_t>(ix.q_balance_row[static_cast<size_t>(bp)])] / base;
        sol.angles[static_cast<size_t>(bp)] =
            lp.primal[static_cast<size_t>(ix.theta[static_cast<size_t>(bp)])];
        const double phi = lp.primal[static_cast<size_t>(ix.phi[static_cast<size_t>(bp)])];
        sol.vmags[static_cast<size_t>(bp)] = 1.0 + phi;
        if (bus.vmax - 1.0 - phi <= kBindingSlack) {
            sol.bus_binding[static_cast<size_t>(bp)].push_back("vmag-upper");
        }
        if (phi - (bus.vmin - 1.0) <= kBindingSlack) {
            sol.bus_binding[static_cast<size_t>(bp)].push_back("vmag-lower");
        }
    }

    for (size_t gp = 0; gp < grid.generators.size(); ++gp) {
        const Generator& gen = grid.generators[gp];
        if (!gen.in_service) continue;
        sol.gen_ids.push_back(gen.id);
        sol.p_dispatch.push_back(lp.primal[static_cast<size_t>(ix.p_gen[gp])]);
        sol.q_dispatch.push_back(lp.primal[static_cast<size_t>(ix.q_gen[gp])]);
    }

    const GridIndex gidx = GridIndex::build(grid);
    for (size_t bp = 0; bp < grid.branches.size(); ++bp) {
        const Branch& br = grid.branches[bp];
        if (!br.in_service) continue;
        sol.branch_ids.push_back(br.id);
        BranchFlow fl;
        fl.p_from = lp.primal[static_cast<size_t>(ix.p_from[bp])];
        fl.q_from = lp.primal[static_cast<size_t>(ix.q_from[bp])];
        fl.p_to = lp.primal[static_cast<size_t>(ix.p_to[bp])];
        fl.q_to = lp.primal[static_cast<size_t>(ix.q_to[bp])];
        sol.flows.push_back(fl);
        std::vector<std::string> tags;
        if (br.rate_a > 0) {
            const double s_from = std::hypot(fl.p_from, fl.q_from);
            const double s_to = std::hypot(fl.p_to, fl.q_to);
            const int TK = std::max(4, opts.thermal_segments);
            const double inner = br.rate_a * std::cos(kPi / TK);
            if (std::max(s_from, s_to) >= inner - kBindingSlack) tags.push_back("thermal");
        }
        const double ti = sol.angles[static_cast<size_t>(gidx.bus_pos.at(br.from_bus))];
        const double tj = sol.angles[static_cast<size_t>(gidx.bus_pos.at(br.to_bus))];
        const double hi = std::min(br.ang_max, opts.theta_max + br.shift);
        const double lo = std::max(br.ang_min, -opts.theta_max + br.shift);
        if (hi - (ti - tj) <= kBindingSlack) tags.push_back("angle-upper");
        if ((ti - tj) - lo <= kBindingSlack) tags.push_back("angle-lower");
        sol.branch_binding.push_back(std::move(tags));
    }
    return sol;
}

namespace {

// re-solve with nonnegative injection slacks to locate unserved demand
std::vector<std::pair<int, double>> shed_diagnostic(const Grid& grid, const LpacModel& model,
                                                    const SimplexOptions& sopts) {
    LpProblem diag = model.problem;
    for (auto& c : diag.objective) c = 0.0;
    diag.objective_constant = 0.0;
    std::vector<int> shed_vars(grid.buses.size(), -1);
    for (size_t bp = 0; bp < grid.buses.size(); ++bp) {
        const int sv =
            diag.add_var("shed_p[" + std::to_string(grid.buses[bp].id) + "]", 0.0, kInf, 1.0);
        shed_vars[bp] = sv;
        diag.constraints[static_cast<size_t>(model.index.p_balance_row[bp])]
            .coeffs.emplace_back(sv, 1.0);
        const int svq_pos =
            diag.add_var("shed_qp[" + std::to_string(grid.buses[bp].id) + "]", 0.0, kInf, 1.0);
        const int svq_neg =
            diag.add_var("shed_qn[" + std::to_string(grid.buses[bp].id) + "]", 0.0, kInf, 1.0);
        auto& qrow = diag.constraints[static_cast<size_t>(model.index.q_balance_row[bp])];
        qrow.coeffs.emplace_back(svq_pos, 1.0);
        qrow.coeffs.emplace_back(svq_neg, -1.0);
    }
    const LpSolution sol = solve_lp(diag, sopts);
    std::vector<std::pair<int, double>> shed;
    if (sol.status != LpStatus::Optimal) return shed;
    for (size_t bp = 0; bp < grid.buses.size(); ++bp) {
        const double v = sol.primal[static_cast<size_t>(shed_vars[bp])];
        if (v > 1e-8) shed.emplace_back(grid.buses[bp].id, v);
    }
    return shed;
}

}  // namespace

OpfSolution solve_lpac_opf(const Grid& grid, const LpacOptions& opts) {
    const LpacModel model = build_lpac(grid, opts);
    SimplexOptions sopts;
    const LpSolution lp = solve_lp(model.problem, sopts);
    if (lp.status == LpStatus::Unbounded) {
        throw std::runtime_error("LPAC OPF unbounded; check generator costs");
    }
    if (lp.status == LpStatus::Infeasible) {
        throw LpacInfeasible(shed_diagnostic(grid, model, sopts));
    }
    return extract_opf_solution(grid, model, lp, opts);
}

}  // namespace topocand
