#include "keq/commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "keq/errors.hpp"
#include "keq/general.hpp"
#include "keq/oracle.hpp"
#include "keq/parallel.hpp"
#include "keq/verify.hpp"

namespace keq {

namespace {

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string cell_to_csv(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    return fmt_num(v.get<double>());
}

void write_text(const std::string& text, const CliOptions& opt) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output path '" + opt.out_path + "'");
    out << text;
}

// Exactly one command block selects the model.
const Json& model_block(const Json& cfg, bool& two_type) {
    const bool has_one = cfg.contains("economy");
    const bool has_two = cfg.contains("two_type");
    if (has_one == has_two) {
        throw ConfigError("config: provide exactly one of 'economy' or 'two_type'");
    }
    two_type = has_two;
    return two_type ? cfg["two_type"] : cfg["economy"];
}

Json alloc_to_json(const Alloc& a) {
    return Json{{"s", a.s}, {"b", a.b}, {"t", a.t}};
}

Json type_alloc_to_json(const TypeAllocation& a) {
    return Json{{"s", a.s},
                {"b", a.b},
                {"t", a.t},
                {"ba_worker", a.ba_worker},
                {"ba_solver", a.ba_solver},
                {"ab_worker", a.ab_worker},
                {"ab_solver", a.ab_solver}};
}

Json point_to_json(Point p) { return Json::array({p.x1, p.x2}); }

int grid_resolution(const Json& cfg) {
    int resolution = 200;
    if (cfg.contains("grid")) {
        const Json& g = cfg["grid"];
        if (!g.is_object()) throw ConfigError("config: 'grid' must be an object");
        if (g.contains("resolution")) {
            if (!g["resolution"].is_number_integer()) {
                throw ConfigError("config: 'grid.resolution' must be an integer");
            }
            resolution = g["resolution"].get<int>();
        }
    }
    if (resolution < 2) throw ConfigError("config: 'grid.resolution' must be >= 2");
    return resolution;
}

struct Ray {
    Point from;
    Point to;
    int steps;
};

Ray parse_ray(const Json& cfg, const char* key, int default_steps) {
    if (!cfg.contains(key)) throw ConfigError(std::string("config: missing '") + key + "'");
    const Json& r = cfg[key];
    if (!r.is_object() || !r.contains("from") || !r.contains("to")) {
        throw ConfigError(std::string("config: '") + key + "' needs 'from' and 'to'");
    }
    Ray ray;
    ray.from = parse_point(r["from"], "from");
    ray.to = parse_point(r["to"], "to");
    ray.steps = default_steps;
    if (r.contains("steps")) {
        if (!r["steps"].is_number_integer()) {
            throw ConfigError(std::string("config: '") + key + ".steps' must be an integer");
        }
        ray.steps = r["steps"].get<int>();
    }
    if (ray.steps < 1) throw ConfigError(std::string("config: '") + key + ".steps' must be >= 1");
    return ray;
}

Json vertex_max_to_json(const VertexMax& v) {
    return Json{{"argmax", point_to_json(v.m)},
                {"value", v.value},
                {"vertices",
                 Json{{"m00", v.vertex_values[0]},
                      {"m01", v.vertex_values[1]},
                      {"m10", v.vertex_values[2]},
                      {"m11", v.vertex_values[3]}}}};
}

}  // namespace

std::string table_to_csv(const Table& t) {
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out += ',';
        out += t.columns[c];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += cell_to_csv(row[c]);
        }
        out += '\n';
    }
    return out;
}

Json table_to_json(const Table& t) {
    Json rows = Json::array();
    for (const auto& row : t.rows) rows.push_back(row);
    return Json{{"columns", t.columns}, {"rows", rows}};
}

Json solve_report(const Json& cfg) {
    bool two_type = false;
    const Json& block = model_block(cfg, two_type);

    if (two_type) {
        const TwoTypeEconomy econ = parse_two_type(block);
        const TwoTypeEquilibrium eq = solve_two_type(econ);
        const TwoTypeMax lp = max_output_two_type(econ);
        return Json{{"solver", "two_type"},
                    {"case", std::string(to_string(eq.label))},
                    {"wA", eq.wA},
                    {"wB", eq.wB},
                    {"r_star", eq.r_star},
                    {"total_w", eq.total_w},
                    {"in_Rh", humans_avoid_machines(eq)},
                    {"allocation",
                     Json{{"A", type_alloc_to_json(eq.allocA)}, {"B", type_alloc_to_json(eq.allocB)}}},
                    {"machines",
                     Json{{"b_A", eq.machines_b_A},
                          {"t_A", eq.machines_t_A},
                          {"b_B", eq.machines_b_B},
                          {"t_B", eq.machines_t_B}}},
                    {"oracle",
                     Json{{"labor_income", lp.labor_income},
                          {"delta", std::abs(eq.total_w - lp.labor_income)}}}};
    }

    const Economy econ = parse_economy(block);
    if (abundance_holds(econ)) {
        const Equilibrium eq = solve_baseline(econ);
        const OneTypeMax lp = max_output_one_type(econ);
        return Json{{"solver", "baseline"},
                    {"region", std::string(to_string(eq.region))},
                    {"w_star", eq.w_star},
                    {"r_star", eq.r_star},
                    {"alpha", alloc_to_json(eq.alpha)},
                    {"mu_alloc", alloc_to_json(eq.mu_alloc)},
                    {"output", eq.output},
                    {"capital_income", econ.mu * eq.r_star},
                    {"oracle",
                     Json{{"output", lp.output}, {"delta", std::abs(eq.output - lp.output)}}}};
    }

    const GeneralEquilibrium eq = solve_general(econ);
    Json report{{"solver", "general"},
                {"region", std::string(to_string(eq.region))},
                {"w_star", eq.w_star},
                {"r_star", nullptr},
                {"alpha", nullptr},
                {"mu_alloc", nullptr},
                {"output", nullptr},
                {"capital_income", nullptr},
                {"oracle", nullptr}};
    if (eq.r_star) {
        report["r_star"] = *eq.r_star;
        report["capital_income"] = econ.mu * *eq.r_star;
    }
    if (eq.alpha) report["alpha"] = alloc_to_json(*eq.alpha);
    if (eq.mu_alloc) report["mu_alloc"] = alloc_to_json(*eq.mu_alloc);
    if (eq.output) {
        const OneTypeMax lp = max_output_one_type(econ);
        report["output"] = *eq.output;
        report["oracle"] = Json{{"output", lp.output}, {"delta", std::abs(*eq.output - lp.output)}};
    }
    return report;
}

Table sweep_table(const Json& cfg, int threads) {
    bool two_type = false;
    const Json& block = model_block(cfg, two_type);
    const int res = grid_resolution(cfg);
    const std::size_t n = static_cast<std::size_t>(res) * res;

    Table t;
    if (two_type) {
        const TwoTypeEconomy base = parse_two_type(block, /*need_m=*/false);
        t.columns = {"m1", "m2", "case", "wA", "wB", "total_w", "r_star", "in_Rh"};
        t.rows.resize(n);
        parallel_for(n, threads, [&](std::size_t idx) {
            const int i = static_cast<int>(idx) / res;
            const int j = static_cast<int>(idx) % res;
            TwoTypeEconomy econ = base;
            econ.m = {static_cast<double>(i) / (res - 1), static_cast<double>(j) / (res - 1)};
            const TwoTypeEquilibrium eq = solve_two_type(econ);
            t.rows[idx] = {econ.m.x1,       econ.m.x2, std::string(to_string(eq.label)),
                           eq.wA,           eq.wB,     eq.total_w,
                           eq.r_star,       humans_avoid_machines(eq)};
        });
        return t;
    }

    const Economy base = parse_economy(block, /*need_m=*/false);
    const bool abundant = abundance_holds(base);
    t.columns = {"m1", "m2", "region", "w_star", "r_star", "output", "capital_income"};
    t.rows.resize(n);
    parallel_for(n, threads, [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / res;
        const int j = static_cast<int>(idx) % res;
        Economy econ = base;
        econ.m = {static_cast<double>(i) / (res - 1), static_cast<double>(j) / (res - 1)};
        if (abundant) {
            const Equilibrium eq = solve_baseline(econ);
            t.rows[idx] = {econ.m.x1, econ.m.x2, std::string(to_string(eq.region)),
                           eq.w_star, eq.r_star, eq.output,
                           econ.mu * eq.r_star};
        } else {
            const GeneralEquilibrium eq = solve_general(econ);
            std::vector<Json> row = {econ.m.x1, econ.m.x2, std::string(to_string(eq.region)),
                                     eq.w_star, nullptr,   nullptr,
                                     nullptr};
            if (eq.r_star) {
                row[4] = *eq.r_star;
                row[6] = econ.mu * *eq.r_star;
            }
            if (eq.output) row[5] = *eq.output;
            t.rows[idx] = std::move(row);
        }
    });
    return t;
}

Json maxlabor_report(const Json& cfg) {
    bool two_type = false;
    const Json& block = model_block(cfg, two_type);

    if (!two_type) {
        const Economy econ = parse_economy(block, /*need_m=*/false, /*need_mu=*/false);
        const VertexMax v = labor_max_vertex(*econ.dist, econ.h, econ.c);
        int samples = 21;
        if (cfg.contains("threshold_samples")) samples = cfg["threshold_samples"].get<int>();
        const ThresholdCurve curve = labor_max_thresholds(*econ.dist, econ.c, samples);
        Json threshold_samples = Json::array();
        for (const auto& s : curve.samples) {
            threshold_samples.push_back(Json{{"h1", s.h1}, {"h2_lo", s.h2_lo}, {"h2_bar", s.h2_bar}});
        }
        Json report = vertex_max_to_json(v);
        report["mode"] = "one_type";
        report["stronger_in_dim2"] = stronger_in_dim2(*econ.dist, econ.h);
        report["corner_gap"] = corner_gap(*econ.dist, econ.h, econ.c);
        report["h1_bar"] = curve.h1_bar;
        report["h2_thresholds"] = threshold_samples;
        return report;
    }

    const TwoTypeEconomy econ = parse_two_type(block, /*need_m=*/false);
    LaborMaxSearch search;
    if (cfg.contains("search")) {
        const Json& s = cfg["search"];
        search.grid_n = s.value("grid_n", search.grid_n);
        search.top_k = s.value("top_k", search.top_k);
        search.tol = s.value("tol", search.tol);
    }
    if (search.grid_n < 2) throw ConfigError("config: 'search.grid_n' must be >= 2");
    const LaborMax global = find_max_total_labor(econ, search);

    Json corner_totals = Json::object();
    const char* names[4] = {"m00", "m01", "m10", "m11"};
    const Point corners[4] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    Json corner_wages = Json::object();
    for (int i = 0; i < 4; ++i) {
        TwoTypeEconomy probe = econ;
        probe.m = corners[i];
        const TwoTypeEquilibrium eq = solve_two_type(probe);
        corner_totals[names[i]] = eq.total_w;
        corner_wages[names[i]] = Json{{"wA", eq.wA}, {"wB", eq.wB}};
    }

    return Json{{"mode", "two_type"},
                {"per_type",
                 Json{{"A", vertex_max_to_json(per_type_labor_max(econ, 'A'))},
                      {"B", vertex_max_to_json(per_type_labor_max(econ, 'B'))}}},
                {"global",
                 Json{{"argmax", point_to_json(global.m)},
                      {"value", global.value},
                      {"is_vertex", global.is_vertex}}},
                {"corner_totals", corner_totals},
                {"corner_wages", corner_wages}};
}

Table trajectory_table(const Json& cfg) {
    if (!cfg.contains("economy")) throw ConfigError("config: trajectory needs an 'economy' block");
    const Economy econ = parse_economy(cfg["economy"], /*need_m=*/false);

    std::vector<Point> path;
    if (!cfg.contains("path")) throw ConfigError("config: trajectory needs a 'path'");
    const Json& p = cfg["path"];
    if (p.is_object() && p.contains("points")) {
        for (const Json& q : p["points"]) path.push_back(parse_point(q, "path.points[i]"));
        if (path.size() < 2) throw ConfigError("config: 'path.points' needs >= 2 points");
    } else {
        const Ray ray = parse_ray(cfg, "path", 130);
        path = segment_path(ray.from, ray.to, ray.steps + 1);
    }
    for (const Point& q : path) {
        if (!in_unit_square(q)) throw ConfigError("config: path leaves [0,1]^2");
    }

    Table t;
    t.columns = {"m1", "m2", "region", "w_star", "r_star", "output"};
    for (const PathPoint& row : trajectory(econ, path)) {
        t.rows.push_back({row.m.x1, row.m.x2, std::string(to_string(row.region)), row.w_star,
                          row.r_star, row.output});
    }
    return t;
}

Table scan_table(const Json& cfg) {
    if (!cfg.contains("economy")) throw ConfigError("config: scan needs an 'economy' block");
    const Economy econ = parse_economy(cfg["economy"], /*need_m=*/false);
    const Ray ray = parse_ray(cfg, "ray", 500);
    const double factor = cfg.value("jump_factor", 10.0);
    if (!(factor > 1.0)) throw ConfigError("config: 'jump_factor' must exceed 1");

    const ScanResult scan = discontinuity_scan(econ, ray.from, ray.to, ray.steps, factor);
    std::vector<int> w_flag(scan.rows.size(), 0);
    std::vector<int> r_flag(scan.rows.size(), 0);
    for (const Jump& j : scan.w_jumps) w_flag[static_cast<std::size_t>(j.step) + 1] = j.delta < 0 ? -1 : 1;
    for (const Jump& j : scan.r_jumps) r_flag[static_cast<std::size_t>(j.step) + 1] = j.delta < 0 ? -1 : 1;

    Table t;
    t.columns = {"t", "m1", "m2", "region", "w_star", "r_star", "w_jump", "r_jump"};
    for (std::size_t i = 0; i < scan.rows.size(); ++i) {
        const ScanRow& row = scan.rows[i];
        t.rows.push_back({row.t, row.m.x1, row.m.x2, std::string(to_string(row.region)),
                          row.w_star, row.r_star ? Json(*row.r_star) : Json(nullptr),
                          w_flag[i], r_flag[i]});
    }
    return t;
}

int run_solve(const Json& cfg, const CliOptions& opt) {
    write_text(solve_report(cfg).dump(2) + "\n", opt);
    return 0;
}

int run_sweep(const Json& cfg, const CliOptions& opt) {
    const Table t = sweep_table(cfg, opt.threads);
    write_text(opt.format == "json" ? table_to_json(t).dump(2) + "\n" : table_to_csv(t), opt);
    return 0;
}

int run_maxlabor(const Json& cfg, const CliOptions& opt) {
    write_text(maxlabor_report(cfg).dump(2) + "\n", opt);
    return 0;
}

int run_trajectory(const Json& cfg, const CliOptions& opt) {
    const Table t = trajectory_table(cfg);
    write_text(opt.format == "json" ? table_to_json(t).dump(2) + "\n" : table_to_csv(t), opt);
    return 0;
}

int run_scan(const Json& cfg, const CliOptions& opt) {
    const Table t = scan_table(cfg);
    write_text(opt.format == "json" ? table_to_json(t).dump(2) + "\n" : table_to_csv(t), opt);
    return 0;
}

int run_verify(const Json& cfg, const CliOptions& opt) {
    const int instances = cfg.value("instances", 200);
    if (instances < 0) throw ConfigError("config: 'instances' must be >= 0");
    const std::uint64_t seed =
        cfg.contains("seed") ? cfg["seed"].get<std::uint64_t>() : opt.seed;
    const bool fault = cfg.value("fault_injection", false);

    if (instances == 0) {
        std::cout << "[PASS] verify: vacuous (0 instances requested)\n";
        return 0;
    }

    const std::vector<SuiteResult> suites = run_all_suites(seed, instances, fault);
    bool all_pass = true;
    Json report = Json::array();
    for (const SuiteResult& s : suites) {
        all_pass = all_pass && s.pass;
        std::printf("[%s] %s: max residual %.3e over %d checks%s%s\n", s.pass ? "PASS" : "FAIL",
                    s.name.c_str(), s.max_residual, s.checks, s.note.empty() ? "" : ": ",
                    s.note.c_str());
        report.push_back(Json{{"suite", s.name},
                              {"pass", s.pass},
                              {"max_residual", s.max_residual},
                              {"checks", s.checks},
                              {"note", s.note}});
    }
    if (!opt.out_path.empty()) {
        CliOptions file_only = opt;
        write_text(Json{{"seed", seed}, {"instances", instances}, {"suites", report}}.dump(2) + "\n",
                   file_only);
    }
    return all_pass ? 0 : 1;
}

}  // namespace keq
