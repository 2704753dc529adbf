#pragma once
#include <string>
#include <vector>

#include <json.hpp>

#include "runup/cg.hpp"

namespace runup {

// Configuration problems (bad files, malformed or inconsistent settings).
// The CLI maps these to a different exit code than numerical failures.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One initial-data component: an analytic preset or a tabulated profile.
struct IcSpec {
    std::string type = "zero";  // zero | gaussian | nwave | table
    double amplitude = 0.0;
    double center = 0.0;
    double width = 1.0;
    std::string path;                  // table only
    std::vector<double> tab_x, tab_v;  // loaded table

    std::function<double(double)> evaluator() const;
    nlohmann::json resolved() const;
};

// A full run description, loadable from JSON. Unset fields keep their
// defaults; resolved() reports the effective configuration, and every output
// file embeds it.
struct Scenario {
    std::string name = "unnamed";
    std::string bay = "plane-beach";
    IcSpec eta0, u0;

    double x_max = 60.0;
    int nodes = 1201;

    std::string projection_mode = "auto";  // auto | fixed
    double projection_eps = 1e-10;
    int projection_j_max = 8;
    int projection_order = 2;  // fixed mode only
    int stencil_order = 4;

    std::string method = "spectral";  // spectral | fd | both
    double cfl = 0.4;
    int k_points = 256;
    double k_max = 0.0;  // auto
    double slice_dtau = 0.05;

    std::vector<double> times = {2.0, 5.0};
    double t_max = 10.0;
    int shoreline_samples = 201;
    int snapshot_points = 0;  // 0: one station per grid node

    static Scenario from_json_file(const std::string& path);
    static Scenario from_json(const nlohmann::json& j, const std::string& base_dir);

    nlohmann::json resolved() const;
    PhysicalIC build_ic() const;
    Grid sigma_grid() const { return Grid(0.0, x_max, nodes); }
};

}
