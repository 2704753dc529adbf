#include "runup/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "runup/common.hpp"
#include "runup/csvio.hpp"
#include "runup/hankel.hpp"
#include "runup/projection.hpp"
#include "runup/validation.hpp"

namespace runup {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm;
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<std::string> csv_header(const Scenario& sc) {
    return {"generated: " + timestamp_utc(),
            "scenario: " + sc.resolved().dump()};
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// tau levels covering [lo, hi]: exact integer multiples of dtau so that tau = 0
// is always a stored level (the t = 0 inverse transform then reads stored data
// instead of interpolating).
std::vector<double> tau_levels(double lo, double hi, double dtau) {
    const long i_lo = -static_cast<long>(std::ceil(-lo / dtau));
    const long i_hi = static_cast<long>(std::ceil(hi / dtau));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(i_hi - i_lo + 1));
    for (long i = i_lo; i <= i_hi; ++i) out.push_back(static_cast<double>(i) * dtau);
    while (out.size() < 4) out.push_back(out.back() + dtau);
    return out;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

PipelineResult run_pipeline(const Scenario& sc, const std::string& out_dir, bool quiet) {
    fs::create_directories(out_dir);
    PipelineResult result;
    json& summary = result.summary;
    summary["name"] = sc.name;
    summary["scenario"] = sc.resolved();
    std::vector<std::string> warnings;

    // ---- physical initial data ------------------------------------------
    PhysicalIC ic = sc.build_ic();
    const double tail = ic.tail_level();
    if (tail > 1e-4)
        numerical_error("initial data does not decay at the offshore boundary (tail level " +
                        fmt(tail) + "); enlarge domain.x_max");
    if (tail > 1e-8)
        warnings.push_back("initial-data tail level " + fmt(tail) +
                           " at the offshore boundary; consider a larger domain");

    const Grid sg = sc.sigma_grid();
    NonbreakingReport nb = check_nonbreaking(ic, sg, sc.stencil_order);
    summary["margins"] = {{"monotonicity", nb.monotonicity_margin},
                          {"characteristic", nb.characteristic_margin},
                          {"tolerance", nb.tol}};
    if (!nb.ok()) {
        std::ostringstream os;
        os << "check_nonbreaking: initial data is breaking or too close to it "
           << "(monotonicity margin " << nb.monotonicity_margin
           << ", characteristic margin " << nb.characteristic_margin
           << ", tolerance " << nb.tol << ")";
        numerical_error(os.str());
    }

    // ---- hodograph Cauchy data and projection to tau = 0 -----------------
    ManifoldIC mic = forward_cg(ic, sg, sc.stencil_order);
    ProjectionOptions popt;
    popt.stencil_order = sc.stencil_order;
    ProjectionResult pres;
    int order = sc.projection_order;
    if (sc.projection_mode == "auto") {
        auto [j, res] = choose_order(mic, sc.projection_eps, sc.projection_j_max, popt);
        order = j;
        pres = std::move(res);
    } else {
        pres = project(mic, order, popt);
    }
    for (const auto& w : pres.warnings) warnings.push_back(w);
    summary["projection"] = {{"order", order},
                             {"term_sup_norms", pres.term_sup_norms},
                             {"next_term_estimate", pres.next_term_estimate},
                             {"converged", pres.converged},
                             {"diverging", pres.diverging}};
    {
        std::vector<double> ks(pres.term_sup_norms.size() + 1), ns(pres.term_sup_norms.size() + 1);
        for (size_t k = 0; k < pres.term_sup_norms.size(); ++k) {
            ks[k] = static_cast<double>(k);
            ns[k] = pres.term_sup_norms[k];
        }
        ks.back() = static_cast<double>(pres.term_sup_norms.size());
        ns.back() = pres.next_term_estimate;
        write_csv((fs::path(out_dir) / "projection.csv").string(), csv_header(sc),
                  {"k", "term_sup_norm"}, {ks, ns});
        result.files.push_back("projection.csv");
    }

    // ---- evolution window -------------------------------------------------
    double t_hi = sc.t_max;
    for (double t : sc.times) t_hi = std::max(t_hi, t);
    const double phimax = std::max(max_abs(mic.data.component(0)),
                                   max_abs(pres.g_proj.component(0)));
    const double pad = std::max(0.5, 2.0 * phimax + 0.1);
    const auto taus = tau_levels(-pad, t_hi + pad, sc.slice_dtau);

    HodographSolution fd_sol, sp_sol;
    const bool want_fd = sc.method == "fd" || sc.method == "both";
    const bool want_sp = sc.method == "spectral" || sc.method == "both";
    if (want_fd) {
        FdOptions fopt;
        fopt.stencil_order = sc.stencil_order;
        fopt.cfl = sc.cfl;
        fd_sol = evolve_fd(mic.system, pres.g_proj, taus, fopt);
    }
    if (want_sp) {
        if (!ic.bay.is_plane_beach())
            throw ScenarioError("scenario: the spectral solver needs the plane beach");
        HankelOptions hopt;
        hopt.k_points = sc.k_points;
        hopt.k_max = sc.k_max;
        sp_sol = evolve_spectral(pres.g_proj, taus, hopt);
    }
    const HodographSolution& sol = want_sp ? sp_sol : fd_sol;
    summary["solver"] = {{"method", sc.method},
                         {"tau_min", taus.front()},
                         {"tau_max", taus.back()},
                         {"levels", taus.size()}};
    if (want_fd && want_sp) {
        double sup = 0.0;
        for (int l = 0; l < fd_sol.levels(); ++l)
            sup = std::max(sup, max_abs_diff(fd_sol.slices[l], sp_sol.slices[l]));
        summary["solver"]["cross_check_sup"] = sup;
        const double scale = std::max(pres.g_proj.max_abs(), 1e-30);
        if (sup > 1e-2 * scale)
            warnings.push_back("FD and spectral solutions disagree by " + fmt(sup));
    }

    // ---- shoreline history -------------------------------------------------
    {
        std::vector<double> ts(sc.shoreline_samples);
        for (int i = 0; i < sc.shoreline_samples; ++i)
            ts[i] = sc.t_max * i / (sc.shoreline_samples - 1);
        ShorelineSeries sh = shoreline_series(sol, ts);
        write_csv((fs::path(out_dir) / "shoreline.csv").string(), csv_header(sc),
                  {"t", "x_s", "eta_s", "u_s"}, {sh.t, sh.x_s, sh.eta_s, sh.u_s});
        result.files.push_back("shoreline.csv");
        result.runup = sh.runup;
        summary["shoreline"] = {{"runup", sh.runup},
                                {"drawdown", sh.drawdown},
                                {"t_max", sc.t_max},
                                {"samples", sc.shoreline_samples}};
    }

    // ---- physical snapshots -------------------------------------------------
    json snaps = json::array();
    for (size_t idx = 0; idx < sc.times.size(); ++idx) {
        const double t = sc.times[idx];
        InverseOptions iopt;
        iopt.resample = sc.snapshot_points > 1 ? sc.snapshot_points : sc.nodes;
        PhysicalSnapshot snap = inverse_cg_snapshot(sol, t, iopt);
        char name[64];
        std::snprintf(name, sizeof name, "snapshot_%02zu.csv", idx);
        write_csv((fs::path(out_dir) / name).string(), csv_header(sc),
                  {"x", "eta", "u"}, {snap.x, snap.eta, snap.u});
        result.files.push_back(name);
        snaps.push_back({{"t", t},
                         {"file", name},
                         {"shoreline_x", snap.shoreline_x},
                         {"shoreline_eta", snap.shoreline_eta},
                         {"shoreline_u", snap.shoreline_u}});
    }
    summary["snapshots"] = snaps;
    summary["warnings"] = warnings;
    summary["generated"] = timestamp_utc();

    {
        std::ofstream f(fs::path(out_dir) / "summary.json");
        f << summary.dump(2) << "\n";
        result.files.push_back("summary.json");
    }

    if (!quiet) {
        std::cout << "scenario '" << sc.name << "': projection order " << order
                  << ", margins (mono " << nb.monotonicity_margin << ", char "
                  << nb.characteristic_margin << "), runup " << result.runup << "\n";
        for (const auto& w : warnings) std::cout << "  warning: " << w << "\n";
        std::cout << "  wrote " << result.files.size() << " files to " << out_dir << "\n";
    }
    return result;
}

int run_validation(const std::string& suite, const std::string& out_dir, bool quiet) {
    std::vector<OracleReport> reports;
    try {
        reports = run_validation_suite(suite);
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(e.what());
    }
    int failed = 0;
    json jr = json::array();
    for (const auto& r : reports) {
        if (!r.passed) ++failed;
        if (!quiet) {
            std::printf("%-4s %-38s sup %.3e", r.passed ? "PASS" : "FAIL",
                        r.name.c_str(), r.sup_error);
            if (std::isfinite(r.observed_order)) std::printf(" order %.2f", r.observed_order);
            std::printf("\n");
            if (!r.passed) std::printf("     %s\n", r.details.c_str());
        }
        json e = {{"name", r.name}, {"passed", r.passed}, {"sup_error", r.sup_error},
                  {"l2_error", r.l2_error}, {"tolerance", r.tolerance},
                  {"details", r.details}};
        if (std::isfinite(r.observed_order)) e["observed_order"] = r.observed_order;
        jr.push_back(e);
    }
    if (!quiet)
        std::printf("%zu checks, %d failed\n", reports.size(), failed);
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        json doc = {{"suite", suite}, {"failed", failed}, {"checks", jr},
                    {"generated", timestamp_utc()}};
        std::ofstream f(fs::path(out_dir) / "report.json");
        f << doc.dump(2) << "\n";
    }
    return failed;
}

void run_convergence(const Scenario& sc, const std::string& axis,
                     const std::string& out_dir, bool quiet) {
    fs::create_directories(out_dir);
    if (axis == "j") {
        PhysicalIC ic = sc.build_ic();
        ManifoldIC mic = forward_cg(ic, sc.sigma_grid(), sc.stencil_order);
        ProjectionOptions popt;
        popt.stencil_order = sc.stencil_order;
        ProjectionResult ref = project(mic, sc.projection_j_max, popt);
        std::vector<double> ks, norms, deltas;
        for (int j = 0; j <= sc.projection_j_max; ++j) {
            GridFunction partial(mic.data.grid(), mic.data.m());
            for (int k = 0; k <= j; ++k) axpy(1.0, ref.terms[k], partial);
            ks.push_back(j);
            norms.push_back(ref.term_sup_norms[j]);
            deltas.push_back(max_abs_diff(partial, ref.g_proj));
        }
        write_csv((fs::path(out_dir) / "convergence_j.csv").string(), csv_header(sc),
                  {"j", "term_sup_norm", "distance_to_full"}, {ks, norms, deltas});
        if (!quiet) {
            std::printf("%4s %14s %14s\n", "j", "term_norm", "to_full");
            for (size_t i = 0; i < ks.size(); ++i)
                std::printf("%4.0f %14.5e %14.5e\n", ks[i], norms[i], deltas[i]);
        }
        return;
    }
    if (axis == "grid") {
        std::vector<double> nodes, runups, diffs;
        double prev_runup = std::nan("");
        for (int div = 4; div >= 1; div /= 2) {
            Scenario s = sc;
            s.nodes = (sc.nodes - 1) / div + 1;
            s.times.clear();  // shoreline only; snapshots are not needed here
            PipelineResult r = run_pipeline(s, (fs::path(out_dir) / ("grid_" + std::to_string(s.nodes))).string(), true);
            nodes.push_back(s.nodes);
            runups.push_back(r.runup);
            diffs.push_back(std::isnan(prev_runup) ? std::nan("") : std::abs(r.runup - prev_runup));
            prev_runup = r.runup;
        }
        write_csv((fs::path(out_dir) / "convergence_grid.csv").string(), csv_header(sc),
                  {"nodes", "runup", "runup_change"}, {nodes, runups, diffs});
        if (!quiet) {
            std::printf("%8s %18s %14s\n", "nodes", "runup", "change");
            for (size_t i = 0; i < nodes.size(); ++i)
                std::printf("%8.0f %18.12f %14.5e\n", nodes[i], runups[i], diffs[i]);
        }
        return;
    }
    if (axis == "dt") {
        PhysicalIC ic = sc.build_ic();
        ManifoldIC mic = forward_cg(ic, sc.sigma_grid(), sc.stencil_order);
        ProjectionOptions popt;
        popt.stencil_order = sc.stencil_order;
        auto [order, pres] = choose_order(mic, sc.projection_eps, sc.projection_j_max, popt);
        const double T = std::max(1.0, sc.t_max / 2.0);
        std::vector<double> taus = {T};
        HankelOptions hopt;
        hopt.k_points = sc.k_points;
        GridFunction ref = evolve_spectral(pres.g_proj, taus, hopt).slices[0];
        std::vector<double> cfls, errs;
        for (double f : {1.0, 0.5, 0.25}) {
            FdOptions fopt;
            fopt.stencil_order = sc.stencil_order;
            fopt.cfl = sc.cfl * f;
            HodographSolution sol = evolve_fd(mic.system, pres.g_proj, taus, fopt);
            cfls.push_back(fopt.cfl);
            errs.push_back(max_abs_diff(sol.slices[0], ref));
        }
        write_csv((fs::path(out_dir) / "convergence_dt.csv").string(), csv_header(sc),
                  {"cfl", "sup_error_vs_spectral"}, {cfls, errs});
        if (!quiet) {
            std::printf("%10s %18s\n", "cfl", "sup_vs_spectral");
            for (size_t i = 0; i < cfls.size(); ++i)
                std::printf("%10.4f %18.6e\n", cfls[i], errs[i]);
        }
        return;
    }
    throw ScenarioError("convergence axis must be 'grid', 'j', or 'dt' (got '" + axis + "')");
}

}
