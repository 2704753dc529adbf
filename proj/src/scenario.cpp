#include "runup/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>

#include "runup/csvio.hpp"
#include "runup/numerics.hpp"

namespace runup {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ScenarioError("scenario: " + msg); }

double get_num(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) bad(std::string("'") + key + "' must be a number");
    return j[key].get<double>();
}

int get_int(const json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) bad(std::string("'") + key + "' must be an integer");
    return j[key].get<int>();
}

std::string get_str(const json& j, const char* key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) bad(std::string("'") + key + "' must be a string");
    return j[key].get<std::string>();
}

IcSpec parse_ic(const json& j, const std::string& base_dir, const char* which) {
    IcSpec spec;
    if (j.is_null()) return spec;
    if (!j.is_object()) bad(std::string("initial.") + which + " must be an object");
    spec.type = get_str(j, "type", "zero");
    if (spec.type == "zero") return spec;
    if (spec.type == "gaussian" || spec.type == "nwave") {
        spec.amplitude = get_num(j, "amplitude", 0.0);
        spec.center = get_num(j, "center", 0.0);
        spec.width = get_num(j, "width", 1.0);
        if (!(spec.width > 0.0)) bad(std::string("initial.") + which + ".width must be positive");
        return spec;
    }
    if (spec.type == "table") {
        spec.path = get_str(j, "path", "");
        if (spec.path.empty()) bad(std::string("initial.") + which + ".path is required");
        fs::path p(spec.path);
        if (p.is_relative()) p = fs::path(base_dir) / p;
        std::vector<std::vector<double>> cols;
        try {
            cols = read_csv_columns(p.string());
        } catch (const std::exception& e) {
            bad(std::string("initial.") + which + ": " + e.what());
        }
        if (cols.size() < 2) bad(std::string("initial.") + which + ": table needs two columns");
        spec.tab_x = cols[0];
        spec.tab_v = cols[1];
        for (size_t i = 1; i < spec.tab_x.size(); ++i)
            if (!(spec.tab_x[i] > spec.tab_x[i - 1]))
                bad(std::string("initial.") + which + ": table abscissae must increase");
        return spec;
    }
    bad(std::string("initial.") + which + ": unknown type '" + spec.type + "'");
}

}  // namespace

std::function<double(double)> IcSpec::evaluator() const {
    if (type == "zero") return [](double) { return 0.0; };
    if (type == "gaussian") {
        const double a = amplitude, c = center, w = width;
        return [a, c, w](double x) {
            const double s = (x - c) / w;
            return a * std::exp(-s * s);
        };
    }
    if (type == "nwave") {
        const double a = amplitude, c = center, w = width;
        return [a, c, w](double x) {
            const double s = (x - c) / w;
            return a * s * std::exp(-s * s);
        };
    }
    if (type == "table") {
        auto p = std::make_shared<Pchip>(tab_x, tab_v);
        const double lo = tab_x.front(), hi = tab_x.back();
        return [p, lo, hi](double x) {
            if (x <= lo || x >= hi) return 0.0;  // decaying data: flat zero outside
            return (*p)(x);
        };
    }
    throw ScenarioError("scenario: unknown initial-data type '" + type + "'");
}

json IcSpec::resolved() const {
    json j;
    j["type"] = type;
    if (type == "gaussian" || type == "nwave") {
        j["amplitude"] = amplitude;
        j["center"] = center;
        j["width"] = width;
    } else if (type == "table") {
        j["path"] = path;
        j["rows"] = tab_x.size();
    }
    return j;
}

Scenario Scenario::from_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ScenarioError("scenario: cannot open '" + path + "'");
    json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw ScenarioError("scenario: '" + path + "' is not valid JSON: " + e.what());
    }
    return from_json(j, fs::path(path).parent_path().string());
}

Scenario Scenario::from_json(const json& j, const std::string& base_dir) {
    if (!j.is_object()) bad("top level must be an object");
    Scenario sc;
    sc.name = get_str(j, "name", sc.name);

    if (j.contains("bay")) {
        const auto& b = j["bay"];
        sc.bay = b.is_object() ? get_str(b, "type", sc.bay)
                               : (b.is_string() ? b.get<std::string>() : sc.bay);
        if (sc.bay != "plane-beach") bad("unsupported bay '" + sc.bay + "'");
    }
    if (j.contains("initial")) {
        const auto& ini = j["initial"];
        if (!ini.is_object()) bad("'initial' must be an object");
        if (ini.contains("eta0")) sc.eta0 = parse_ic(ini["eta0"], base_dir, "eta0");
        if (ini.contains("u0")) sc.u0 = parse_ic(ini["u0"], base_dir, "u0");
    }
    if (j.contains("domain")) {
        const auto& d = j["domain"];
        sc.x_max = get_num(d, "x_max", sc.x_max);
        sc.nodes = get_int(d, "nodes", sc.nodes);
        if (!(sc.x_max > 0.0)) bad("domain.x_max must be positive");
        if (sc.nodes < 9) bad("domain.nodes must be at least 9");
    }
    if (j.contains("projection")) {
        const auto& p = j["projection"];
        sc.projection_mode = get_str(p, "mode", sc.projection_mode);
        if (sc.projection_mode != "auto" && sc.projection_mode != "fixed")
            bad("projection.mode must be 'auto' or 'fixed'");
        sc.projection_eps = get_num(p, "eps", sc.projection_eps);
        sc.projection_j_max = get_int(p, "j_max", sc.projection_j_max);
        sc.projection_order = get_int(p, "order", sc.projection_order);
        sc.stencil_order = get_int(p, "stencil_order", sc.stencil_order);
        if (!(sc.projection_eps > 0.0)) bad("projection.eps must be positive");
        if (sc.projection_j_max < 0 || sc.projection_order < 0) bad("projection orders must be >= 0");
    }
    if (j.contains("solver")) {
        const auto& s = j["solver"];
        sc.method = get_str(s, "method", sc.method);
        if (sc.method != "spectral" && sc.method != "fd" && sc.method != "both")
            bad("solver.method must be 'spectral', 'fd', or 'both'");
        sc.cfl = get_num(s, "cfl", sc.cfl);
        sc.k_points = get_int(s, "k_points", sc.k_points);
        sc.k_max = get_num(s, "k_max", sc.k_max);
        sc.slice_dtau = get_num(s, "slice_dtau", sc.slice_dtau);
        if (!(sc.cfl > 0.0 && sc.cfl <= 1.0)) bad("solver.cfl must lie in (0, 1]");
        if (!(sc.slice_dtau > 0.0)) bad("solver.slice_dtau must be positive");
        if (sc.k_points < 8) bad("solver.k_points must be at least 8");
    }
    if (j.contains("output")) {
        const auto& o = j["output"];
        if (o.contains("times")) {
            if (!o["times"].is_array()) bad("output.times must be an array");
            sc.times.clear();
            for (const auto& t : o["times"]) {
                if (!t.is_number()) bad("output.times entries must be numbers");
                sc.times.push_back(t.get<double>());
            }
        }
        sc.t_max = get_num(o, "t_max", sc.t_max);
        sc.shoreline_samples = get_int(o, "shoreline_samples", sc.shoreline_samples);
        sc.snapshot_points = get_int(o, "snapshot_points", sc.snapshot_points);
        if (!(sc.t_max >= 0.0)) bad("output.t_max must be non-negative");
        if (sc.shoreline_samples < 2) bad("output.shoreline_samples must be at least 2");
    }
    return sc;
}

json Scenario::resolved() const {
    json j;
    j["name"] = name;
    j["bay"] = {{"type", bay}};
    j["initial"] = {{"eta0", eta0.resolved()}, {"u0", u0.resolved()}};
    j["domain"] = {{"x_max", x_max}, {"nodes", nodes}};
    j["projection"] = {{"mode", projection_mode}, {"eps", projection_eps},
                       {"j_max", projection_j_max}, {"order", projection_order},
                       {"stencil_order", stencil_order}};
    j["solver"] = {{"method", method}, {"cfl", cfl}, {"k_points", k_points},
                   {"k_max", k_max}, {"slice_dtau", slice_dtau}};
    j["output"] = {{"times", times}, {"t_max", t_max},
                   {"shoreline_samples", shoreline_samples},
                   {"snapshot_points", snapshot_points}};
    return j;
}

PhysicalIC Scenario::build_ic() const {
    Grid g(0.0, x_max, nodes);
    try {
        return PhysicalIC(g, eta0.evaluator(), u0.evaluator(), BayProfile::plane_beach());
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(std::string("scenario: ") + e.what());
    }
}

}
