#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "runup/csvio.hpp"
#include "runup/pipeline.hpp"
#include "runup/scenario.hpp"
#include "runup/validation.hpp"

using namespace runup;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    auto d = fs::temp_directory_path() / ("runup-tests-" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
    auto p = dir / name;
    std::ofstream out(p);
    out << text;
    return p;
}

// file contents with "generated" stamps stripped, for determinism comparisons
std::string normalized(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find("generated") != std::string::npos) continue;
        out << line << '\n';
    }
    return out.str();
}

}  // namespace

TEST_CASE("CSV round trip") {
    auto dir = temp_dir("csv");
    auto p = dir / "t.csv";
    write_csv(p.string(), {"a comment"}, {"x", "y"},
              {{0.0, 0.1, 0.2}, {1.0, -2.0, 0.5e-17}});
    auto cols = read_csv_columns(p.string());
    REQUIRE(cols.size() == 2);
    REQUIRE(cols[0].size() == 3);
    CHECK(cols[0][1] == 0.1);
    CHECK(cols[1][2] == 0.5e-17);

    write_file(dir, "ragged.csv", "x,y\n1,2\n3\n");
    CHECK_THROWS_AS(read_csv_columns((dir / "ragged.csv").string()), std::runtime_error);
}

TEST_CASE("scenario parsing: defaults, overrides, and validation") {
    auto dir = temp_dir("scn");
    auto p = write_file(dir, "s.json", R"({
        "name": "demo",
        "initial": {
            "eta0": {"type": "gaussian", "amplitude": 0.03, "center": 12.0, "width": 2.0}
        },
        "domain": {"x_max": 40.0, "nodes": 801},
        "output": {"times": [1.0, 2.0], "t_max": 4.0}
    })");
    auto sc = Scenario::from_json_file(p.string());
    CHECK(sc.name == "demo");
    CHECK(sc.x_max == 40.0);
    CHECK(sc.nodes == 801);
    CHECK(sc.method == "spectral");       // default
    CHECK(sc.u0.type == "zero");          // default
    CHECK(sc.eta0.evaluator()(12.0) == doctest::Approx(0.03).epsilon(1e-14));

    // resolved() -> from_json round trip preserves the effective config
    auto rt = Scenario::from_json(sc.resolved(), dir.string());
    CHECK(rt.nodes == sc.nodes);
    CHECK(rt.times == sc.times);
    CHECK(rt.eta0.amplitude == sc.eta0.amplitude);

    CHECK_THROWS_AS(Scenario::from_json_file((dir / "missing.json").string()), ScenarioError);
    write_file(dir, "bad.json", "{ not json");
    CHECK_THROWS_AS(Scenario::from_json_file((dir / "bad.json").string()), ScenarioError);
    write_file(dir, "badval.json", R"({"domain": {"nodes": -5}})");
    CHECK_THROWS_AS(Scenario::from_json_file((dir / "badval.json").string()), ScenarioError);
    write_file(dir, "badmethod.json", R"({"solver": {"method": "magic"}})");
    CHECK_THROWS_AS(Scenario::from_json_file((dir / "badmethod.json").string()), ScenarioError);
}

TEST_CASE("initial-data presets evaluate to their formulas") {
    IcSpec gs;
    gs.type = "gaussian";
    gs.amplitude = 0.5;
    gs.center = 3.0;
    gs.width = 1.5;
    auto g = gs.evaluator();
    CHECK(g(3.0) == 0.5);
    CHECK(g(4.5) == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-14));

    IcSpec nw;
    nw.type = "nwave";
    nw.amplitude = 0.2;
    nw.center = 5.0;
    nw.width = 2.0;
    auto n = nw.evaluator();
    CHECK(n(5.0) == 0.0);                       // odd about the center
    CHECK(n(6.0) == doctest::Approx(-n(4.0)).epsilon(1e-14));

    IcSpec z;
    CHECK(z.evaluator()(17.0) == 0.0);
}

TEST_CASE("tabulated initial data is loaded and interpolated") {
    auto dir = temp_dir("tab");
    std::ostringstream txt;
    txt << "x,eta\n";
    // step chosen so x = 15 is a table node and the peak value is reproduced
    for (int i = 0; i <= 80; ++i) {
        const double x = 0.5 * i;
        const double s = (x - 15.0) / 3.0;
        txt << x << "," << 0.02 * std::exp(-s * s) << "\n";
    }
    write_file(dir, "table.csv", txt.str());

    auto p = write_file(dir, "s.json", R"({
        "name": "tabulated",
        "initial": {"eta0": {"type": "table", "path": "table.csv"}},
        "domain": {"x_max": 40.0, "nodes": 401}
    })");
    auto sc = Scenario::from_json_file(p.string());
    auto f = sc.eta0.evaluator();
    CHECK(f(15.0) == doctest::Approx(0.02).epsilon(1e-6));
    CHECK(f(200.0) == 0.0);  // clamped to zero far outside the table
}

TEST_CASE("full pipeline writes its outputs and is deterministic") {
    Scenario sc;
    sc.name = "unit-pipeline";
    sc.eta0.type = "gaussian";
    sc.eta0.amplitude = 0.02;
    sc.eta0.center = 10.0;
    sc.eta0.width = 2.0;
    sc.x_max = 30.0;
    sc.nodes = 301;
    sc.k_points = 128;
    sc.times = {1.0};
    sc.t_max = 2.0;
    sc.slice_dtau = 0.05;
    sc.shoreline_samples = 81;

    auto d1 = temp_dir("pipe1");
    auto d2 = temp_dir("pipe2");
    auto r1 = run_pipeline(sc, d1.string(), true);
    auto r2 = run_pipeline(sc, d2.string(), true);

    for (const char* f : {"projection.csv", "shoreline.csv", "snapshot_00.csv", "summary.json"}) {
        CAPTURE(f);
        CHECK(fs::exists(d1 / f));
        CHECK(normalized(d1 / f) == normalized(d2 / f));
    }
    CHECK(r1.summary.contains("shoreline"));
    CHECK(r1.summary["shoreline"]["runup"].get<double>() == r1.runup);
    CHECK(r1.runup == r2.runup);
    CHECK(r1.runup > 0.0);
    CHECK(r1.runup < 0.1);

    // shoreline file has four columns of shoreline_samples rows
    auto sh = read_csv_columns((d1 / "shoreline.csv").string());
    REQUIRE(sh.size() == 4);
    CHECK(sh[0].size() == 81);
}

TEST_CASE("pipeline refuses breaking data with a numerical error naming the check") {
    Scenario sc;
    sc.name = "breaking";
    sc.eta0.type = "gaussian";
    sc.eta0.amplitude = 1.2;
    sc.eta0.center = 15.0;
    sc.eta0.width = 1.0;
    sc.x_max = 40.0;
    sc.nodes = 801;
    auto dir = temp_dir("brk");
    CHECK_THROWS_WITH_AS(run_pipeline(sc, dir.string(), true),
                         doctest::Contains("check_nonbreaking"), std::runtime_error);
}

TEST_CASE("pipeline rejects non-decaying initial data at the offshore boundary") {
    Scenario sc;
    sc.name = "nondecaying";
    sc.eta0.type = "gaussian";
    sc.eta0.amplitude = 0.05;
    sc.eta0.center = 28.0;  // bump sits on the outer boundary
    sc.eta0.width = 4.0;
    sc.x_max = 30.0;
    sc.nodes = 301;
    auto dir = temp_dir("tail");
    CHECK_THROWS_WITH_AS(run_pipeline(sc, dir.string(), true), doctest::Contains("decay"),
                         std::runtime_error);
}

TEST_CASE("unknown validation suites are refused with the list of names") {
    CHECK_THROWS_AS(run_validation_suite("no-such-suite"), std::invalid_argument);
    auto names = validation_suites();
    CHECK(names.size() >= 4);
}
