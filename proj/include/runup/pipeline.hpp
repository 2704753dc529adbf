#pragma once
#include <string>
#include <vector>

#include <json.hpp>

#include "runup/scenario.hpp"

namespace runup {

struct PipelineResult {
    nlohmann::json summary;
    std::vector<std::string> files;  // paths written, relative to out_dir
    double runup = 0.0;
};

// Full run: physical IC -> hodograph Cauchy data -> projection to tau = 0 ->
// evolution -> shoreline history and physical snapshots, all written under
// out_dir (CSV + summary.json). Throws ScenarioError for configuration
// problems and std::runtime_error for numerical failures.
PipelineResult run_pipeline(const Scenario& sc, const std::string& out_dir, bool quiet);

// Runs one validation suite, prints a PASS/FAIL table, optionally writes
// report.json under out_dir (pass "" to skip). Returns the failure count.
int run_validation(const std::string& suite, const std::string& out_dir, bool quiet);

// Self-convergence study along one axis: "grid" (sigma resolution), "j"
// (projection order), or "dt" (FD time step via CFL). Writes a CSV table.
void run_convergence(const Scenario& sc, const std::string& axis,
                     const std::string& out_dir, bool quiet);

}
