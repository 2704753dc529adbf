// Command-line front end: scenario runs, validation suites, convergence studies.
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "runup/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 2;
constexpr int kExitScenarioError = 3;
constexpr int kExitNumericalError = 4;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shallow-water run-up via hodograph data projection"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = "out", suite = "all", axis = "grid";
    bool quiet = false;

    auto* run = app.add_subcommand("run", "run a scenario end to end");
    run->add_option("-s,--scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("-o,--out", out_dir, "output directory (default: out)");
    run->add_flag("-q,--quiet", quiet, "suppress progress output");

    auto* validate = app.add_subcommand("validate", "run an oracle validation suite");
    validate->add_option("--suite", suite,
                         "projection | evolver | cg | pipeline | all (default: all)");
    validate->add_option("-o,--out", out_dir, "directory for report.json (default: out)");
    validate->add_flag("-q,--quiet", quiet, "suppress progress output");

    auto* converge = app.add_subcommand("converge", "self-convergence study");
    converge->add_option("-s,--scenario", scenario_path, "scenario JSON file")->required();
    converge->add_option("--axis", axis, "grid | j | dt (default: grid)");
    converge->add_option("-o,--out", out_dir, "output directory (default: out)");
    converge->add_flag("-q,--quiet", quiet, "suppress progress output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitScenarioError;
    }

    try {
        if (run->parsed()) {
            runup::Scenario sc = runup::Scenario::from_json_file(scenario_path);
            runup::run_pipeline(sc, out_dir, quiet);
            return kExitOk;
        }
        if (validate->parsed()) {
            const int failed = runup::run_validation(suite, out_dir, quiet);
            return failed == 0 ? kExitOk : kExitValidationFailed;
        }
        if (converge->parsed()) {
            runup::Scenario sc = runup::Scenario::from_json_file(scenario_path);
            runup::run_convergence(sc, axis, out_dir, quiet);
            return kExitOk;
        }
    } catch (const runup::ScenarioError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitScenarioError;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitScenarioError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumericalError;
    }
    return kExitOk;
}
