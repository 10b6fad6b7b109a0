#include "topocand/matpower.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace topocand {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;

struct MatrixRow {
    int line = 0;
    std::vector<double> values;
};

struct CaseText {
    std::string name;
    double base_mva = 0.0;
    bool have_base = false;
    std::vector<MatrixRow> bus, gen, branch, gencost;
};

// One source line with its % comment stripped.
std::string strip_comment(const std::string& line) {
    const auto pos = line.find('%');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<double> parse_numbers(const std::string& text, int line_no) {
    std::vector<double> out;
    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
        if (i >= text.size()) break;
        size_t consumed = 0;
        double v = 0.0;
        try {
            v = std::stod(text.substr(i), &consumed);
        } catch (const std::exception&) {
            throw ParseError(line_no, "malformed number near '" + text.substr(i, 12) + "'");
        }
        out.push_back(v);
        i += consumed;
    }
    return out;
}

CaseText scan_case(const std::string& text, std::vector<std::string>* warnings) {
    CaseText ct;
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    std::string pending_matrix;  // matrix name while inside [ ... ];
    std::vector<MatrixRow>* target = nullptr;
    std::set<std::string> ignored;

    auto matrix_target = [&](const std::string& name) -> std::vector<MatrixRow>* {
        if (name == "bus") return &ct.bus;
        if (name == "gen") return &ct.gen;
        if (name == "branch") return &ct.branch;
        if (name == "gencost") return &ct.gencost;
        return nullptr;
    };

    while (std::getline(is, raw)) {
        ++line_no;
        std::string line = strip_comment(raw);

        if (pending_matrix.empty()) {
            // function header / mpc.name
            if (line.find("function") != std::string::npos && line.find('=') != std::string::npos) {
                const auto eq = line.find('=');
                std::string rhs = line.substr(eq + 1);
                std::istringstream ns(rhs);
                ns >> ct.name;
                continue;
            }
            const auto mpc = line.find("mpc.");
            if (mpc == std::string::npos) continue;
            const auto eq = line.find('=', mpc);
            if (eq == std::string::npos) continue;
            std::string field = line.substr(mpc + 4, eq - mpc - 4);
            while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) field.pop_back();
            std::string rhs = line.substr(eq + 1);

            if (field == "baseMVA") {
                const auto nums = parse_numbers(rhs.substr(0, rhs.find(';')), line_no);
                if (nums.size() != 1) throw ParseError(line_no, "baseMVA expects one value");
                ct.base_mva = nums[0];
                ct.have_base = true;
                continue;
            }
            const auto open = rhs.find('[');
            if (open == std::string::npos) {
                if (field != "version" && ignored.insert(field).second && warnings) {
                    warnings->push_back("ignored field mpc." + field);
                }
                continue;
            }
            target = matrix_target(field);
            if (target == nullptr) {
                if (ignored.insert(field).second && warnings) {
                    warnings->push_back("ignored matrix mpc." + field);
                }
            }
            pending_matrix = field;
            line = rhs.substr(open + 1);
            // fall through to matrix-row handling below
        }

        // inside a matrix: rows are terminated by ';', matrix by ']'
        std::string chunk = line;
        const auto close = chunk.find(']');
        const bool closes = close != std::string::npos;
        if (closes) chunk = chunk.substr(0, close);
        std::string piece;
        std::istringstream rows(chunk);
        while (std::getline(rows, piece, ';')) {
            auto nums = parse_numbers(piece, line_no);
            if (nums.empty()) continue;
            if (target != nullptr) target->push_back({line_no, std::move(nums)});
        }
        if (closes) {
            pending_matrix.clear();
            target = nullptr;
        }
    }
    if (!pending_matrix.empty()) {
        throw ParseError(line_no, "unterminated matrix mpc." + pending_matrix);
    }
    return ct;
}

double col(const MatrixRow& row, size_t idx, const char* what) {
    if (idx >= row.values.size()) {
        throw ParseError(row.line, std::string("row too short, missing ") + what);
    }
    return row.values[idx];
}

}  // namespace

Grid parse_matpower(const std::string& text, std::vector<std::string>* warnings) {
    const CaseText ct = scan_case(text, warnings);
    if (!ct.have_base) throw ParseError(0, "missing mpc.baseMVA");
    if (ct.bus.empty()) throw ParseError(0, "missing mpc.bus");
    if (ct.branch.empty()) throw ParseError(0, "missing mpc.branch");

    Grid grid;
    grid.name = ct.name;
    grid.base_mva = ct.base_mva;
    const double base = grid.base_mva;

    int next_load = 1, next_shunt = 1;
    for (const auto& row : ct.bus) {
        if (row.values.size() < 13) throw ParseError(row.line, "bus row needs 13 columns");
        Bus b;
        b.id = static_cast<int>(col(row, 0, "bus id"));
        const int type = static_cast<int>(col(row, 1, "bus type"));
        b.role = type == 3 ? BusRole::Slack : (type == 2 ? BusRole::Pv : BusRole::Pq);
        b.base_kv = col(row, 9, "base_kv");
        b.vmax = col(row, 11, "vmax");
        b.vmin = col(row, 12, "vmin");
        grid.buses.push_back(b);

        const double pd = col(row, 2, "pd");
        const double qd = col(row, 3, "qd");
        if (pd != 0.0 || qd != 0.0) {
            grid.loads.push_back({next_load++, b.id, pd / base, qd / base, true});
        }
        const double gs = col(row, 4, "gs");
        const double bs = col(row, 5, "bs");
        if (gs != 0.0 || bs != 0.0) {
            grid.shunts.push_back({next_shunt++, b.id, gs / base, bs / base, true});
        }
    }

    int next_branch = 1;
    for (const auto& row : ct.branch) {
        if (row.values.size() < 13) throw ParseError(row.line, "branch row needs 13 columns");
        Branch br;
        br.id = next_branch++;
        br.from_bus = static_cast<int>(col(row, 0, "from bus"));
        br.to_bus = static_cast<int>(col(row, 1, "to bus"));
        br.r = col(row, 2, "r");
        br.x = col(row, 3, "x");
        br.b_charge = col(row, 4, "b");
        br.rate_a = col(row, 5, "rate_a") / base;
        const double tap = col(row, 8, "tap");
        br.tap = tap == 0.0 ? 1.0 : tap;
        br.shift = col(row, 9, "shift") * kDegToRad;
        br.in_service = col(row, 10, "status") != 0.0;
        const double ang_min = col(row, 11, "ang_min");
        const double ang_max = col(row, 12, "ang_max");
        if (ang_min == 0.0 && ang_max == 0.0) {
            br.ang_min = -2.0 * kPi;  // Matpower convention: 0,0 = unconstrained
            br.ang_max = 2.0 * kPi;
        } else {
            br.ang_min = ang_min * kDegToRad;
            br.ang_max = ang_max * kDegToRad;
        }
        grid.branches.push_back(br);
    }

    int next_gen = 1;
    for (const auto& row : ct.gen) {
        if (row.values.size() < 10) throw ParseError(row.line, "gen row needs 10 columns");
        Generator g;
        g.id = next_gen++;
        g.bus = static_cast<int>(col(row, 0, "gen bus"));
        g.qmax = col(row, 3, "qmax") / base;
        g.qmin = col(row, 4, "qmin") / base;
        g.vg = col(row, 5, "vg");
        g.in_service = col(row, 7, "status") != 0.0;
        g.pmax = col(row, 8, "pmax") / base;
        g.pmin = col(row, 9, "pmin") / base;
        grid.generators.push_back(g);
    }

    if (!ct.gencost.empty()) {
        if (ct.gencost.size() < grid.generators.size()) {
            throw ParseError(ct.gencost.front().line, "gencost has fewer rows than gen");
        }
        if (ct.gencost.size() > grid.generators.size() && warnings) {
            warnings->push_back("gencost rows beyond one per generator ignored");
        }
        for (size_t i = 0; i < grid.generators.size(); ++i) {
            const auto& row = ct.gencost[i];
            GenCost cost;
            const int model = static_cast<int>(col(row, 0, "cost model"));
            const int ncost = static_cast<int>(col(row, 3, "ncost"));
            if (model == 2) {
                cost.kind = GenCost::Kind::Polynomial;
                if (ncost > 3) throw ParseError(row.line, "polynomial cost degree above 2 unsupported");
                // coefficients highest order first
                std::vector<double> c(static_cast<size_t>(ncost));
                for (int k = 0; k < ncost; ++k) c[static_cast<size_t>(k)] = col(row, 4 + static_cast<size_t>(k), "cost coefficient");
                cost.c2 = ncost >= 3 ? c[ncost - 3] : 0.0;
                cost.c1 = ncost >= 2 ? c[ncost - 2] : 0.0;
                cost.c0 = ncost >= 1 ? c[ncost - 1] : 0.0;
            } else if (model == 1) {
                cost.kind = GenCost::Kind::Piecewise;
                for (int k = 0; k < ncost; ++k) {
                    const double mw = col(row, 4 + static_cast<size_t>(2 * k), "pwl x");
                    const double usd = col(row, 5 + static_cast<size_t>(2 * k), "pwl y");
                    cost.points.emplace_back(mw, usd);
                }
            } else {
                throw ParseError(row.line, "unknown gencost model " + std::to_string(model));
            }
            grid.generators[i].cost = cost;
        }
    }

    auto report = validate_grid(grid);
    for (const auto& issue : report.issues) {
        if (issue.kind == "referential" || issue.kind == "structural") {
            throw std::runtime_error("case validation failed: " + issue.message);
        }
    }
    return grid;
}

Grid load_matpower_file(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open case file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matpower(buf.str(), warnings);
}

}  // namespace topocand
