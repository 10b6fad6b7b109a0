#include "topocand/grid_json.hpp"

#include <fstream>

namespace topocand {

using json = nlohmann::ordered_json;

json grid_to_json(const Grid& grid) {
    json j;
    j["format"] = "topocand-grid-v1";
    j["name"] = grid.name;
    j["base_mva"] = grid.base_mva;
    j["buses"] = json::array();
    for (const auto& b : grid.buses) {
        j["buses"].push_back({{"id", b.id},
                              {"role", to_string(b.role)},
                              {"vmin", b.vmin},
                              {"vmax", b.vmax},
                              {"base_kv", b.base_kv}});
    }
    j["branches"] = json::array();
    for (const auto& br : grid.branches) {
        j["branches"].push_back({{"id", br.id},
                                 {"from_bus", br.from_bus},
                                 {"to_bus", br.to_bus},
                                 {"r", br.r},
                                 {"x", br.x},
                                 {"b_charge", br.b_charge},
                                 {"tap", br.tap},
                                 {"shift", br.shift},
                                 {"rate_a", br.rate_a},
                                 {"ang_min", br.ang_min},
                                 {"ang_max", br.ang_max},
                                 {"in_service", br.in_service}});
    }
    j["generators"] = json::array();
    for (const auto& g : grid.generators) {
        json cost;
        if (g.cost.kind == GenCost::Kind::Polynomial) {
            cost = {{"kind", "poly"}, {"c2", g.cost.c2}, {"c1", g.cost.c1}, {"c0", g.cost.c0}};
        } else {
            json pts = json::array();
            for (const auto& [mw, usd] : g.cost.points) pts.push_back({mw, usd});
            cost = {{"kind", "pwl"}, {"points", pts}};
        }
        j["generators"].push_back({{"id", g.id},
                                   {"bus", g.bus},
                                   {"pmin", g.pmin},
                                   {"pmax", g.pmax},
                                   {"qmin", g.qmin},
                                   {"qmax", g.qmax},
                                   {"vg", g.vg},
                                   {"in_service", g.in_service},
                                   {"cost", cost}});
    }
    j["loads"] = json::array();
    for (const auto& l : grid.loads) {
        j["loads"].push_back({{"id", l.id},
                              {"bus", l.bus},
                              {"pd", l.pd},
                              {"qd", l.qd},
                              {"in_service", l.in_service}});
    }
    j["shunts"] = json::array();
    for (const auto& s : grid.shunts) {
        j["shunts"].push_back({{"id", s.id},
                               {"bus", s.bus},
                               {"gs", s.gs},
                               {"bs", s.bs},
                               {"in_service", s.in_service}});
    }
    return j;
}

Grid grid_from_json(const json& j) {
    if (j.value("format", "") != "topocand-grid-v1") {
        throw std::runtime_error("unexpected grid JSON format tag");
    }
    Grid grid;
    grid.name = j.value("name", "");
    grid.base_mva = j.at("base_mva").get<double>();
    for (const auto& jb : j.at("buses")) {
        Bus b;
        b.id = jb.at("id").get<int>();
        b.role = bus_role_from_string(jb.at("role").get<std::string>());
        b.vmin = jb.at("vmin").get<double>();
        b.vmax = jb.at("vmax").get<double>();
        b.base_kv = jb.at("base_kv").get<double>();
        grid.buses.push_back(b);
    }
    for (const auto& jb : j.at("branches")) {
        Branch br;
        br.id = jb.at("id").get<int>();
        br.from_bus = jb.at("from_bus").get<int>();
        br.to_bus = jb.at("to_bus").get<int>();
        br.r = jb.at("r").get<double>();
        br.x = jb.at("x").get<double>();
        br.b_charge = jb.at("b_charge").get<double>();
        br.tap = jb.at("tap").get<double>();
        br.shift = jb.at("shift").get<double>();
        br.rate_a = jb.at("rate_a").get<double>();
        br.ang_min = jb.at("ang_min").get<double>();
        br.ang_max = jb.at("ang_max").get<double>();
        br.in_service = jb.at("in_service").get<bool>();
        grid.branches.push_back(br);
    }
    for (const auto& jg : j.at("generators")) {
        Generator g;
        g.id = jg.at("id").get<int>();
        g.bus = jg.at("bus").get<int>();
        g.pmin = jg.at("pmin").get<double>();
        g.pmax = jg.at("pmax").get<double>();
        g.qmin = jg.at("qmin").get<double>();
        g.qmax = jg.at("qmax").get<double>();
        g.vg = jg.at("vg").get<double>();
        g.in_service = jg.at("in_service").get<bool>();
        const auto& jc = jg.at("cost");
        if (jc.at("kind").get<std::string>() == "poly") {
            g.cost.kind = GenCost::Kind::Polynomial;
            g.cost.c2 = jc.at("c2").get<double>();
            g.cost.c1 = jc.at("c1").get<double>();
            g.cost.c0 = jc.at("c0").get<double>();
        } else {
            g.cost.kind = GenCost::Kind::Piecewise;
            for (const auto& pt : jc.at("points")) {
                g.cost.points.emplace_back(pt.at(0).get<double>(), pt.at(1).get<double>());
            }
        }
        grid.generators.push_back(g);
    }
    for (const auto& jl : j.at("loads")) {
        grid.loads.push_back({jl.at("id").get<int>(), jl.at("bus").get<int>(),
                              jl.at("pd").get<double>(), jl.at("qd").get<double>(),
                              jl.at("in_service").get<bool>()});
    }
    for (const auto& js : j.at("shunts")) {
        grid.shunts.push_back({js.at("id").get<int>(), js.at("bus").get<int>(),
                               js.at("gs").get<double>(), js.at("bs").get<double>(),
                               js.at("in_service").get<bool>()});
    }
    return grid;
}

void save_grid_json(const Grid& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << grid_to_json(grid).dump(2) << "\n";
}

Grid load_grid_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return grid_from_json(j);
}

}  // namespace topocand
