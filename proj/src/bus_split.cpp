#include "topocand/bus_split.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace topocand {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBigTheta = 2.0 * kPi;  // angle coupling big-M
constexpr double kBigMag = 1.0;          // magnitude coupling big-M

std::string ztag(const char* what, int id) {
    return std::string(what) + "[" + std::to_string(id) + "]";
}

double grid_flow_cap(const Grid& g) {
    double cap = 0.0;
    for (const auto& gen : g.generators) cap += std::abs(gen.pmax);
    for (const auto& l : g.loads) cap += std::abs(l.pd) + std::abs(l.qd);
    return std::max(1.0, 2.0 * cap);
}

}  // namespace

const char* to_string(ElementKind k) {
    switch (k) {
        case ElementKind::BranchFrom: return "branch-from";
        case ElementKind::BranchTo: return "branch-to";
        case ElementKind::Gen: return "generator";
        case ElementKind::LoadElem: return "load";
        case ElementKind::ShuntElem: return "shunt";
    }
    return "?";
}

const char* to_string(TopologyAssignment::Placement p) {
    switch (p) {
        case TopologyAssignment::Placement::OnMain: return "on_main";
        case TopologyAssignment::Placement::OnTwin: return "on_twin";
        case TopologyAssignment::Placement::Disconnected: return "disconnected";
    }
    return "?";
}

SplitGrid expand_busbar(const Grid& grid, int bus_id) {
    const int pos = grid.bus_index(bus_id);
    if (pos < 0) throw std::out_of_range("unknown bus id " + std::to_string(bus_id));

    SplitGrid split;
    split.base = grid;
    split.expanded = grid;
    split.target_bus = bus_id;

    int next_id = 0;
    for (const auto& b : grid.buses) next_id = std::max(next_id, b.id);
    split.twin_bus = ++next_id;

    const Bus& target = grid.buses[static_cast<size_t>(pos)];
    Bus twin = target;  // same voltage band and base kV as the original busbar
    twin.id = split.twin_bus;
    twin.role = BusRole::Pq;
    split.expanded.buses.push_back(twin);

    const double cap = grid_flow_cap(grid);
    const double factor = 1.5;

    auto add_pair = [&](ElementKind kind, int position, int id, double p_rating,
                        double q_rating) {
        Bus aux = target;
        aux.id = ++next_id;
        aux.role = BusRole::Pq;
        split.expanded.buses.push_back(aux);
        SwitchPair pair;
        pair.element = {kind, position, id};
        pair.aux_bus = aux.id;
        pair.p_bound = std::max(0.1, factor * (p_rating > 0 ? p_rating : cap));
        pair.q_bound = std::max(0.1, factor * (q_rating > 0 ? q_rating : cap));
        split.switches.push_back(pair);
        return aux.id;
    };

    for (size_t i = 0; i < grid.branches.size(); ++i) {
        const Branch& br = grid.branches[i];
        if (!br.in_service) continue;
        if (br.from_bus == bus_id && br.to_bus == bus_id) {
            throw std::invalid_argument("self-loop branch at split busbar");
        }
        if (br.from_bus == bus_id) {
            const int aux = add_pair(ElementKind::BranchFrom, static_cast<int>(i), br.id,
                                     br.rate_a, br.rate_a);
            split.expanded.branches[i].from_bus = aux;
        } else if (br.to_bus == bus_id) {
            const int aux = add_pair(ElementKind::BranchTo, static_cast<int>(i), br.id,
                                     br.rate_a, br.rate_a);
            split.expanded.branches[i].to_bus = aux;
        }
    }
    for (size_t i = 0; i < grid.generators.size(); ++i) {
        const Generator& gen = grid.generators[i];
        if (!gen.in_service || gen.bus != bus_id) continue;
        const int aux =
            add_pair(ElementKind::Gen, static_cast<int>(i), gen.id,
                     std::max(std::abs(gen.pmin), std::abs(gen.pmax)),
                     std::max(std::abs(gen.qmin), std::abs(gen.qmax)));
        split.expanded.generators[i].bus = aux;
    }
    for (size_t i = 0; i < grid.loads.size(); ++i) {
        const Load& ld = grid.loads[i];
        if (!ld.in_service || ld.bus != bus_id) continue;
        const int aux = add_pair(ElementKind::LoadElem, static_cast<int>(i), ld.id,
                                 std::abs(ld.pd), std::abs(ld.qd));
        split.expanded.loads[i].bus = aux;
    }
    for (size_t i = 0; i < grid.shunts.size(); ++i) {
        const Shunt& sh = grid.shunts[i];
        if (!sh.in_service || sh.bus != bus_id) continue;
        const int aux = add_pair(ElementKind::ShuntElem, static_cast<int>(i), sh.id,
                                 1.21 * std::abs(sh.gs), 1.21 * std::abs(sh.bs));
        split.expanded.shunts[i].bus = aux;
    }

    if (split.switches.empty()) {
        throw std::invalid_argument("busbar " + std::to_string(bus_id) +
                                    " has no in-service elements to split");
    }
    for (const auto& pair : split.switches) {
        split.coupler_p_bound += pair.p_bound;
        split.coupler_q_bound += pair.q_bound;
    }
    return split;
}

BusSplitModel build_bus_milp(const SplitGrid& split, const SplitOptions& opts) {
    // branch elements are switchable in the LPAC build so an open pair turns
    // the whole branch off rather than leaving it energized at the far end
    std::set<int> switchable;
    for (const auto& pair : split.switches) {
        if (pair.element.kind == ElementKind::BranchFrom ||
            pair.element.kind == ElementKind::BranchTo) {
            switchable.insert(pair.element.position);
        }
    }

    BusSplitModel out;
    LpacModel lpac = build_lpac(split.expanded, opts.lpac, switchable);
    out.lpac_index = lpac.index;
    LpProblem& lp = lpac.problem;

    const GridIndex gidx = GridIndex::build(split.expanded);
    const int main_pos = gidx.bus_pos.at(split.target_bus);
    const int twin_pos = gidx.bus_pos.at(split.twin_bus);
    const bool target_is_slack =
        split.base.bus_by_id(split.target_bus).role == BusRole::Slack;

    std::vector<int> binaries;

    auto add_switch_rows = [&](int z, int p_sw, int q_sw, int bus_pos_side, int aux_pos,
                               double p_bound, double q_bound, int tag_id,
                               const char* side) {
        const int th_m = out.lpac_index.theta[static_cast<size_t>(aux_pos)];
        const int th_s = out.lpac_index.theta[static_cast<size_t>(bus_pos_side)];
        const int ph_m = out.lpac_index.phi[static_cast<size_t>(aux_pos)];
        const int ph_s = out.lpac_index.phi[static_cast<size_t>(bus_pos_side)];
        const std::string sfx = std::string(side) + std::to_string(tag_id);
        // a closed switch pins angle and magnitude together
        lp.add_row(Relation::LessEqual, kBigTheta,
                   {{th_m, 1.0}, {th_s, -1.0}, {z, kBigTheta}}, "sw_ang_u:" + sfx);
        lp.add_row(Relation::LessEqual, kBigTheta,
                   {{th_m, -1.0}, {th_s, 1.0}, {z, kBigTheta}}, "sw_ang_l:" + sfx);
        lp.add_row(Relation::LessEqual, kBigMag,
                   {{ph_m, 1.0}, {ph_s, -1.0}, {z, kBigMag}}, "sw_mag_u:" + sfx);
        lp.add_row(Relation::LessEqual, kBigMag,
                   {{ph_m, -1.0}, {ph_s, 1.0}, {z, kBigMag}}, "sw_mag_l:" + sfx);
        // an open switch carries no flow
        lp.add_row(Relation::LessEqual, 0.0, {{p_sw, 1.0}, {z, -p_bound}}, "sw_p_u:" + sfx);
        lp.add_row(Relation::GreaterEqual, 0.0, {{p_sw, 1.0}, {z, p_bound}}, "sw_p_l:" + sfx);
        lp.add_row(Relation::LessEqual, 0.0, {{q_sw, 1.0}, {z, -q_bound}}, "sw_q_u:" + sfx);
        lp.add_row(Relation::GreaterEqual, 0.0, {{q_sw, 1.0}, {z, q_bound}}, "sw_q_l:" + sfx);
        // lossless flow: aux sends, side receives
        lp.constraints[static_cast<size_t>(
                           out.lpac_index.p_balance_row[static_cast<size_t>(aux_pos)])]
            .coeffs.emplace_back(p_sw, -1.0);
        lp.constraints[static_cast<size_t>(
                           out.lpac_index.q_balance_row[static_cast<size_t>(aux_pos)])]
            .coeffs.emplace_back(q_sw, -1.0);
        lp.constraints[static_cast<size_t>(
                           out.lpac_index.p_balance_row[static_cast<size_t>(bus_pos_side)])]
            .coeffs.emplace_back(p_sw, 1.0);
        lp.constraints[static_cast<size_t>(
                           out.lpac_index.q_balance_row[static_cast<size_t>(bus_pos_side)])]
            .coeffs.emplace_back(q_sw, 1.0);
    };

    for (size_t k = 0; k < split.switches.size(); ++k) {
        const SwitchPair& pair = split.switches[k];
        const int aux_pos = gidx.bus_pos.at(pair.aux_bus);
        const int id = pair.element.id;
        const std::string kind = to_string(pair.element.kind);
        const int z_main = lp.add_var(ztag("z_main", id) + ":" + kind, 0.0, 1.0);
        const int z_twin = lp.add_var(ztag("z_twin", id) + ":" + kind, 0.0, 1.0);
        const int p_main = lp.add_var(ztag("psw_main", id), -pair.p_bound, pair.p_bound);
        const int q_main = lp.add_var(ztag("qsw_main", id), -pair.q_bound, pair.q_bound);
        const int p_twin = lp.add_var(ztag("psw_twin", id), -pair.p_bound, pair.p_bound);
        const int q_twin = lp.add_var(ztag("qsw_twin", id), -pair.q_bound, pair.q_bound);
        out.z_to_main.push_back(z_main);
        out.z_to_twin.push_back(z_twin);
        out.p_sw_main.push_back(p_main);
        out.q_sw_main.push_back(q_main);
        out.p_sw_twin.push_back(p_twin);
        out.q_sw_twin.push_back(q_twin);
        out.pair_kinds.push_back(pair.element.kind);
        binaries.push_back(z_main);
        binaries.push_back(z_twin);

        add_switch_rows(z_main, p_main, q_main, main_pos, aux_pos, pair.p_bound,
                        pair.q_bound, id, "m");
        add_switch_rows(z_twin, p_twin, q_twin, twin_pos, aux_pos, pair.p_bound,
                        pair.q_bound, id, "t");

        // pair exclusivity; equality disables line switching
        lp.add_row(opts.allow_disconnection ? Relation::LessEqual : Relation::Equal, 1.0,
                   {{z_main, 1.0}, {z_twin, 1.0}}, ztag("exclusive", id));

        // loads and nonzero shunts cannot float: their aux balance has no
        // other outlet, so one switch must close in any feasible topology
        bool must_connect = false;
        if (pair.element.kind == ElementKind::LoadElem) {
            const Load& ld = split.base.loads[static_cast<size_t>(pair.element.position)];
            must_connect = ld.pd != 0.0 || ld.qd != 0.0;
        } else if (pair.element.kind == ElementKind::ShuntElem) {
            const Shunt& sh = split.base.shunts[static_cast<size_t>(pair.element.position)];
            must_connect = sh.gs != 0.0 || sh.bs != 0.0;
        }
        if (must_connect && opts.allow_disconnection) {
            lp.add_row(Relation::GreaterEqual, 1.0, {{z_main, 1.0}, {z_twin, 1.0}},
                       ztag("must_connect", id));
        }

        // a branch element drops out entirely when both switches open
        if (pair.element.kind == ElementKind::BranchFrom ||
            pair.element.kind == ElementKind::BranchTo) {
            const int active =
                out.lpac_index.branch_active[static_cast<size_t>(pair.element.position)];
            lp.add_row(Relation::Equal, 0.0,
                       {{active, 1.0}, {z_main, -1.0}, {z_twin, -1.0}},
                       ztag("active_link", id));
        }

        // the slack anchor stays on the original busbar
        if (target_is_slack && pair.element.kind == ElementKind::Gen &&
            split.base.generators[static_cast<size_t>(pair.element.position)].in_service) {
            lp.variables[static_cast<size_t>(z_main)].lb = 1.0;
        }
    }

    // busbar coupler
    out.z_coupler = lp.add_var("z_coupler", 0.0, 1.0);
    out.p_coupler = lp.add_var("p_coupler", -split.coupler_p_bound, split.coupler_p_bound);
    out.q_coupler = lp.add_var("q_coupler", -split.coupler_q_bound, split.coupler_q_bound);
    binaries.push_back(out.z_coupler);
    {
        const int th_t = out.lpac_index.theta[static_cast<size_t>(main_pos)];
        const int th_w = out.lpac_index.theta[static_cast<size_t>(twin_pos)];
        const int ph_t = out.lpac_index.phi[static_cast<size_t>(main_pos)];
        const int ph_w = out.lpac_index.phi[static_cast<size_t>(twin_pos)];
        lp.add_row(Relation::LessEqual, kBigTheta,
                   {{th_t, 1.0}, {th_w, -1.0}, {out.z_coupler, kBigTheta}}, "zil_ang_u");
        lp.add_row(Relation::LessEqual, kBigTheta,
                   {{th_t, -1.0}, {th_w, 1.0}, {out.z_coupler, kBigTheta}}, "zil_ang_l");
        lp.add_row(Relation::LessEqual, kBigMag,
                   {{ph_t, 1.0}, {ph_w, -1.0}, {out.z_coupler, kBigMag}}, "zil_mag_u");
        lp.add_row(Relation::LessEqual, kBigMag,
                   {{ph_t, -1.0}, {ph_w, 1.0}, {out.z_coupler, kBigMag}}, "zil_mag_l");
        lp.add_row(Relation::LessEqual, 0.0,
                   {{out.p_coupler, 1.0}, {out.z_coupler, -split.coupler_p_bound}}, "zil_p_u");
        lp.add_row(Relation::GreaterEqual, 0.0,
                   {{out.p_coupler, 1.0}, {out.z_coupler, split.coupler_p_bound}}, "zil_p_l");
        lp.add_row(Relation::LessEqual, 0.0,
                   {{out.q_coupler, 1.0}, {out.z_coupler, -split.coupler_q_bound}}, "zil_q_u");
        lp.add_row(Relation::GreaterEqual, 0.0,
                   {{out.q_coupler, 1.0}, {out.z_coupler, split.coupler_q_bound}}, "zil_q_l");
        // coupler flow: main sends, twin receives
        lp.constraints[static_cast<size_t>(
                           out.lpac_index.p_balance_row[static_cast<size_t>(main_pos)])]
            .coeffs.emplace_back(out.p_coupler, -1.0);
        lp.constraints[static_cast<size_t>(
                           out.lpac_index.q_balance_row[static_cast<size_t>(main_pos)])]
            .coeffs.emplace_back(out.q_coupler, -1.0);
        lp.constraints[static_cast<size_t>(
                           out.lpac_index.p_balance_row[static_cast<size_t>(twin_pos)])]
            .coeffs.emplace_back(out.p_coupler, 1.0);
        lp.constraints[static_cast<size_t>(
                           out.lpac_index.q_balance_row[static_cast<size_t>(twin_pos)])]
            .coeffs.emplace_back(out.q_coupler, 1.0);
    }

    // a closed coupler forces twin-side switches open
    for (size_t k = 0; k < split.switches.size(); ++k) {
        lp.add_row(Relation::LessEqual, 1.0,
                   {{out.z_to_twin[k], 1.0}, {out.z_coupler, 1.0}},
                   ztag("coupler_excl", split.switches[k].element.id));
        if (opts.strict_coupler) {
            lp.add_row(Relation::LessEqual, 0.0,
                       {{out.z_coupler, 1.0}, {out.z_to_main[k], -1.0}},
                       ztag("coupler_strict", split.switches[k].element.id));
        }
    }

    if (opts.force_null) {
        for (size_t k = 0; k < split.switches.size(); ++k) {
            lp.variables[static_cast<size_t>(out.z_to_main[k])].lb = 1.0;
            lp.variables[static_cast<size_t>(out.z_to_twin[k])].ub = 0.0;
        }
        lp.variables[static_cast<size_t>(out.z_coupler)].lb = 1.0;
    }

    out.milp.base = std::move(lp);
    out.milp.integer_vars = std::move(binaries);
    return out;
}

namespace {

// per-pair seed placement for the warm-start heuristic
enum class Seed { Main, Twin, Off };

}  // namespace

MilpSolution solve_split_milp(const BusSplitModel& model, const MilpOptions& opts) {
    Simplex engine(model.milp.base, opts.lp);
    const LpSolution root = engine.solve();
    MilpOptions bb = opts;
    if (root.status == LpStatus::Optimal) {
        bb.root_basis = engine.basis();

        const size_t n = model.z_to_main.size();
        const auto& vars = model.milp.base.variables;
        auto allows = [&](int var, double v) {
            return vars[static_cast<size_t>(var)].lb <= v && v <= vars[static_cast<size_t>(var)].ub;
        };
        double best_obj = kInf;
        std::vector<double> best_primal;

        // evaluate one fully fixed topology as a warm LP
        auto try_seed = [&](const std::vector<Seed>& placement, bool coupler_closed) {
            const double zc = coupler_closed ? 1.0 : 0.0;
            if (!allows(model.z_coupler, zc)) return;
            for (size_t k = 0; k < n; ++k) {
                const double zm = placement[k] == Seed::Main ? 1.0 : 0.0;
                const double zt = placement[k] == Seed::Twin ? 1.0 : 0.0;
                if (!allows(model.z_to_main[k], zm) || !allows(model.z_to_twin[k], zt)) return;
                if (coupler_closed && zt == 1.0) return;
            }
            for (size_t k = 0; k < n; ++k) {
                const double zm = placement[k] == Seed::Main ? 1.0 : 0.0;
                const double zt = placement[k] == Seed::Twin ? 1.0 : 0.0;
                engine.set_var_bounds(model.z_to_main[k], zm, zm);
                engine.set_var_bounds(model.z_to_twin[k], zt, zt);
            }
            engine.set_var_bounds(model.z_coupler, zc, zc);
            const LpSolution s = engine.solve();
            if (s.status == LpStatus::Optimal && s.objective < best_obj) {
                best_obj = s.objective;
                best_primal = s.primal;
            }
        };

        std::vector<Seed> placement(n, Seed::Main);
        try_seed(placement, true);  // original topology
        // single elements and element pairs moved to the twin section
        for (size_t i = 0; i < n; ++i) {
            placement.assign(n, Seed::Main);
            placement[i] = Seed::Twin;
            try_seed(placement, false);
            for (size_t j = i + 1; j < n; ++j) {
                placement.assign(n, Seed::Main);
                placement[i] = Seed::Twin;
                placement[j] = Seed::Twin;
                try_seed(placement, false);
            }
        }
        // single-line drops (plain transmission switching)
        for (size_t i = 0; i < n; ++i) {
            if (model.pair_kinds[i] != ElementKind::BranchFrom &&
                model.pair_kinds[i] != ElementKind::BranchTo) {
                continue;
            }
            placement.assign(n, Seed::Main);
            placement[i] = Seed::Off;
            try_seed(placement, true);
        }

        if (!best_primal.empty()) {
            bb.has_warm_incumbent = true;
            bb.warm_objective = best_obj;
            bb.warm_solution = std::move(best_primal);
        }
    }
    return solve_milp(model.milp, bb);
}

std::pair<Grid, TopologyAssignment> extract_topology(const SplitGrid& split,
                                                     const BusSplitModel& model,
                                                     const MilpSolution& sol) {
    if (sol.incumbent.empty()) {
        throw std::invalid_argument("extract_topology needs an incumbent");
    }
    auto bit = [&](int var) { return sol.incumbent[static_cast<size_t>(var)] >= 0.5; };

    TopologyAssignment assign;
    assign.coupler_closed = bit(model.z_coupler);
    for (size_t k = 0; k < split.switches.size(); ++k) {
        const bool on_main = bit(model.z_to_main[k]);
        const bool on_twin = bit(model.z_to_twin[k]);
        if (on_main && on_twin) {
            throw std::logic_error("incumbent violates switch-pair exclusivity");
        }
        if (assign.coupler_closed && on_twin) {
            throw std::logic_error("incumbent closes a twin switch against a closed coupler");
        }
        assign.placements.push_back(on_main ? TopologyAssignment::Placement::OnMain
                                   : on_twin ? TopologyAssignment::Placement::OnTwin
                                             : TopologyAssignment::Placement::Disconnected);
    }

    Grid out = split.base;
    bool twin_used = false;
    for (size_t k = 0; k < split.switches.size(); ++k) {
        const SwitchPair& pair = split.switches[k];
        const auto placement = assign.placements[k];
        const bool to_twin =
            placement == TopologyAssignment::Placement::OnTwin && !assign.coupler_closed;
        const int bus = to_twin ? split.twin_bus : split.target_bus;
        twin_used |= to_twin;
        const bool off = placement == TopologyAssignment::Placement::Disconnected;
        const size_t pos = static_cast<size_t>(pair.element.position);
        switch (pair.element.kind) {
            case ElementKind::BranchFrom:
                out.branches[pos].from_bus = bus;
                if (off) out.branches[pos].in_service = false;
                break;
            case ElementKind::BranchTo:
                out.branches[pos].to_bus = bus;
                if (off) out.branches[pos].in_service = false;
                break;
            case ElementKind::Gen:
                out.generators[pos].bus = bus;
                if (off) out.generators[pos].in_service = false;
                break;
            case ElementKind::LoadElem:
                out.loads[pos].bus = bus;
                if (off) out.loads[pos].in_service = false;
                break;
            case ElementKind::ShuntElem:
                out.shunts[pos].bus = bus;
                if (off) out.shunts[pos].in_service = false;
                break;
        }
    }
    if (twin_used) {
        Bus twin = split.base.bus_by_id(split.target_bus);
        twin.id = split.twin_bus;
        twin.role = BusRole::Pq;
        out.buses.push_back(twin);
    }
    assign.islanded_buses = islanded_buses(out);
    return {std::move(out), std::move(assign)};
}

nlohmann::ordered_json TopologyAssignment::to_json(const SplitGrid& split) const {
    nlohmann::ordered_json j;
    j["format"] = "topocand-topology-v1";
    j["target_bus"] = split.target_bus;
    j["twin_bus"] = split.twin_bus;
    j["coupler"] = coupler_closed ? "closed" : "open";
    j["elements"] = nlohmann::ordered_json::array();
    for (size_t k = 0; k < placements.size(); ++k) {
        j["elements"].push_back({{"kind", to_string(split.switches[k].element.kind)},
                                 {"id", split.switches[k].element.id},
                                 {"placement", to_string(placements[k])}});
    }
    j["islanded_buses"] = islanded_buses;
    return j;
}

}  // namespace topocand
