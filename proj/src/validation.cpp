#include "runup/validation.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "runup/common.hpp"
#include "runup/hankel.hpp"
#include "runup/numerics.hpp"
#include "runup/projection.hpp"

namespace runup {

namespace {

using Check = std::function<OracleReport()>;

OracleReport guarded(const std::string& name, const Check& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        OracleReport rep;
        rep.name = name;
        rep.passed = false;
        rep.details = std::string("unexpected failure: ") + e.what();
        return rep;
    }
}

double gauss(double x, double a, double x0, double w) {
    const double s = (x - x0) / w;
    return a * std::exp(-s * s);
}

// ------------------------------------------------------------- projection

OracleReport advection_projection() {
    OracleReport rep;
    rep.name = "projection/advection-gaussian";
    // The Taylor tail and the repeated-differentiation roundoff floor both
    // limit the reachable depth: the tail shrinks with beta and the profile
    // width, while the noise floor grows like (tau_max/h)^j, i.e. with the
    // node count. beta = 0.1 on a coarse grid converges cleanly to twelve
    // orders; the residual sup error is then the stencil's truncation bias.
    rep.tolerance = 2e-4;
    oracle::AdvectionSetup adv{0.1, [](double x) { return gauss(x, 1.0, 1.2, 1.4); }};
    Grid g(0.0, 4.0, 41);
    ManifoldIC ic = adv.manifold_ic(g);
    ProjectionOptions opt;
    opt.stencil_order = 6;
    auto [order, res] = choose_order(ic, 1e-8, 12, opt);
    double sup = 0.0;
    for (int i = 0; i < g.n; ++i)
        sup = std::max(sup, std::abs(res.g_proj.at(0, i) - adv.target(g.node(i))));
    rep.sup_error = sup;
    rep.passed = res.converged && sup <= rep.tolerance;
    std::ostringstream os;
    os << "order " << order << ", next term " << res.next_term_estimate;
    rep.details = os.str();
    return rep;
}

OracleReport projection_identity() {
    OracleReport rep;
    rep.name = "projection/identity-on-t0-manifold";
    rep.tolerance = 0.0;
    Grid g(0.0, 10.0, 201);
    oracle::AdvectionSetup adv{0.0, [](double x) { return std::sin(0.7 * x) + 0.2 * x; }};
    ManifoldIC ic = adv.manifold_ic(g);
    ProjectionResult res = project(ic, 4);
    rep.sup_error = bitwise_equal(res.g_proj, ic.data) ? 0.0 : max_abs_diff(res.g_proj, ic.data);
    rep.passed = bitwise_equal(res.g_proj, ic.data);
    rep.details = "tau = 0 manifold must return the data unchanged, bit for bit";
    return rep;
}

OracleReport projection_characteristic_rejection() {
    OracleReport rep;
    rep.name = "projection/characteristic-rejection";
    rep.details = "tau' = 1 on unit-speed advection must be refused";
    Grid g(0.0, 10.0, 101);
    HyperbolicSystem1D sys(MatrixField::constant(1, {1.0}), MatrixField::zero(1));
    GridFunction data = GridFunction::sample_scalar(g, [](double x) { return gauss(x, 1.0, 5.0, 1.5); });
    try {
        ManifoldIC ic(sys, Manifold::linear(1.0), std::move(data));
        projection_step(ic, ic.data);
        rep.passed = false;
        rep.details += " (no error raised)";
    } catch (const std::exception& e) {
        const std::string what = e.what();
        rep.passed = what.find("characteristic") != std::string::npos;
        rep.details = what;
    }
    return rep;
}

OracleReport projection_linearity() {
    OracleReport rep;
    rep.name = "projection/linearity";
    rep.tolerance = 1e-10;
    // gentle slope and a coarse grid: roundoff through the order-k term grows
    // like (4 * slope * n)^k / k!, so steep manifolds on fine grids drown the
    // 1e-10 budget in differentiation noise long before linearity breaks
    Grid g(0.0, 10.0, 101);
    HyperbolicSystem1D sys(MatrixField::constant(1, {1.0}), MatrixField::zero(1));
    auto f1 = GridFunction::sample_scalar(g, [](double x) { return gauss(x, 0.7, 4.0, 1.3); });
    auto f2 = GridFunction::sample_scalar(g, [](double x) { return std::sin(0.9 * x); });
    GridFunction combo(g, 1);
    const double c1 = 1.7, c2 = -0.4;
    for (int i = 0; i < g.n; ++i) combo.at(0, i) = c1 * f1.at(0, i) + c2 * f2.at(0, i);
    Manifold mf = Manifold::linear(0.05);
    ProjectionResult r1 = project(ManifoldIC(sys, mf, f1), 4);
    ProjectionResult r2 = project(ManifoldIC(sys, mf, f2), 4);
    ProjectionResult rc = project(ManifoldIC(sys, mf, combo), 4);
    double sup = 0.0;
    for (int i = 0; i < g.n; ++i)
        sup = std::max(sup, std::abs(rc.g_proj.at(0, i) -
                                     (c1 * r1.g_proj.at(0, i) + c2 * r2.g_proj.at(0, i))));
    rep.sup_error = sup;
    rep.passed = sup <= rep.tolerance;
    rep.details = "project(c1 f + c2 g) vs c1 project(f) + c2 project(g)";
    return rep;
}

// ---------------------------------------------------------------- evolver

OracleReport evolver_mode_convergence() {
    OracleReport rep;
    rep.name = "evolver/bessel-mode-order";
    rep.tolerance = 2.0;  // minimum observed order
    const double k = 1.0, T = 1.0;
    BayProfile bay = BayProfile::plane_beach();
    HyperbolicSystem1D sys = hodograph_system(bay);
    std::vector<double> taus = {T};
    double err[2];
    int ns[2] = {501, 1001};
    for (int r = 0; r < 2; ++r) {
        Grid g(0.0, 25.0, ns[r]);
        GridFunction ic = oracle::bessel_mode_slice(k, g, 0.0);
        HodographSolution sol = evolve_fd(sys, ic, taus);
        GridFunction ex = oracle::bessel_mode_slice(k, g, T);
        // The sponge damping of this whole-domain mode is an O(1), grid-
        // independent model error whose imprint moves inward at up to ~1.37x
        // the characteristic speed; at tau = 1 the front sits near
        // sigma = (sqrt(22.5) - 0.685)^2 ~ 16.5. Measure inside it.
        double sup = 0.0;
        for (int i = 0; i < g.n; ++i) {
            if (g.node(i) > 15.0) break;
            sup = std::max({sup, std::abs(sol.slices[0].at(0, i) - ex.at(0, i)),
                            std::abs(sol.slices[0].at(1, i) - ex.at(1, i))});
        }
        err[r] = sup;
    }
    rep.observed_order = std::log2(err[0] / err[1]);
    rep.sup_error = err[1];
    rep.passed = rep.observed_order >= rep.tolerance;
    std::ostringstream os;
    os << "sup errors " << err[0] << " -> " << err[1] << " on 501 -> 1001 nodes";
    rep.details = os.str();
    return rep;
}

OracleReport evolver_spectral_exact() {
    OracleReport rep;
    rep.name = "evolver/spectral-mode-exact";
    rep.tolerance = 1e-10;
    const double k = 1.0;
    Grid g(0.0, 25.0, 801);
    SpectralCoefficients sc;
    sc.k_nodes = {k};
    sc.k_weights = {1.0};
    sc.a = {1.0};
    sc.b = {0.0};
    sc.k_max = k;
    double sup = 0.0;
    for (double tau : {0.0, 1.7, 5.3, 10.0}) {
        GridFunction slice = hankel_evaluate_grid(sc, g, tau);
        GridFunction ex = oracle::bessel_mode_slice(k, g, tau);
        sup = std::max(sup, max_abs_diff(slice, ex));
    }
    rep.sup_error = sup;
    rep.passed = sup <= rep.tolerance;
    rep.details = "single-mode coefficients vs the closed-form mode";
    return rep;
}

OracleReport evolver_energy() {
    OracleReport rep;
    rep.name = "evolver/energy-drift";
    rep.tolerance = 1e-4;
    // compact packet: a whole-domain mode would overlap the sponge from the
    // start and lose energy by design, so keep all the amplitude interior
    // (right-going edge reaches sigma ~ 36 by tau = 5, sponge starts at 54,
    // and the shoreline reflection happens after the horizon)
    Grid g(0.0, 60.0, 1201);
    GridFunction ic(g, 2);
    for (int i = 0; i < g.n; ++i) ic.at(1, i) = gauss(g.node(i), 0.1, 12.0, 2.0);
    BayProfile bay = BayProfile::plane_beach();
    auto c = hodograph_wave_speed(hodograph_system(bay), g);
    std::vector<double> taus;
    for (int i = 1; i <= 10; ++i) taus.push_back(0.5 * i);
    HodographSolution sol = evolve_fd(hodograph_system(bay), ic, taus);
    const double e0 = hodograph_energy(ic, c);
    double drift = 0.0;
    for (const auto& s : sol.slices)
        drift = std::max(drift, std::abs(hodograph_energy(s, c) - e0) / e0);
    rep.sup_error = drift;
    rep.passed = drift <= rep.tolerance;
    std::ostringstream os;
    os << "relative drift over tau in (0,5], E0 = " << e0;
    rep.details = os.str();
    return rep;
}

OracleReport evolver_cross_check() {
    OracleReport rep;
    rep.name = "evolver/fd-vs-spectral";
    rep.tolerance = 1e-3;
    Grid g(0.0, 60.0, 1201);
    GridFunction ic(g, 2);
    for (int i = 0; i < g.n; ++i)
        ic.at(1, i) = gauss(g.node(i), 0.02, 12.0, 2.0);
    CrossCheckReport cc = cross_check(hodograph_system(BayProfile::plane_beach()), ic, 5.0, 11);
    rep.sup_error = cc.max_sup();
    rep.passed = rep.sup_error <= rep.tolerance;
    rep.details = "Gaussian bump to tau = 5 on both solvers";
    return rep;
}

// --------------------------------------------------------------------- cg

OracleReport cg_roundtrip_check() {
    OracleReport rep = guarded("cg/roundtrip", [] {
        Grid xg(0.0, 50.0, 1001);
        PhysicalIC ic(xg, [](double x) { return gauss(x, 0.02, 15.0, 3.0); },
                      [](double) { return 0.0; });
        Grid sg(0.0, 50.0, 1001);
        OracleReport r = oracle::cg_roundtrip(ic, sg, 1e-10);
        r.name = "cg/roundtrip";
        return r;
    });
    return rep;
}

OracleReport cg_roundtrip_moving() {
    return guarded("cg/roundtrip-moving", [] {
        Grid xg(0.0, 50.0, 1001);
        PhysicalIC ic(xg, [](double x) { return gauss(x, 0.015, 15.0, 3.0); },
                      [](double x) { return gauss(x, -0.01, 18.0, 4.0); });
        Grid sg(0.0, 50.0, 1001);
        OracleReport r = oracle::cg_roundtrip(ic, sg, 1e-10);
        r.name = "cg/roundtrip-moving";
        return r;
    });
}

OracleReport cg_breaking_rejection() {
    OracleReport rep;
    rep.name = "cg/breaking-rejection";
    Grid xg(0.0, 40.0, 2001);
    // eta0' reaches about -1.48 on the front face: a folded hodograph map
    PhysicalIC ic(xg, [](double x) { return gauss(x, 1.2, 15.0, 1.0); },
                  [](double) { return 0.0; });
    NonbreakingReport nb = check_nonbreaking(ic, Grid(0.0, 40.0, 801));
    if (nb.ok()) {
        rep.passed = false;
        rep.details = "check_nonbreaking accepted folding data";
        return rep;
    }
    try {
        forward_cg(ic, Grid(0.0, 40.0, 801));
        rep.passed = false;
        rep.details = "forward_cg accepted folding data";
    } catch (const std::exception& e) {
        const std::string what = e.what();
        rep.passed = what.find("hodograph fold") != std::string::npos;
        rep.details = what;
        std::ostringstream os;
        os << what << " (monotonicity margin " << nb.monotonicity_margin << ")";
        rep.details = os.str();
    }
    return rep;
}

OracleReport cg_near_breaking() {
    return guarded("cg/near-breaking-margins", [] {
        OracleReport rep;
        rep.name = "cg/near-breaking-margins";
        rep.tolerance = 1e-8;
        Grid xg(0.0, 40.0, 2001);
        // max |eta0'| = amp * sqrt(2) e^{-1/2} / width, so min(1 + eta0') ~ 0.02:
        // legal but close to folding
        const double amp = 1.142;
        PhysicalIC ic(xg, [=](double x) { return gauss(x, amp, 15.0, 1.0); },
                      [](double) { return 0.0; });
        NonbreakingReport nb = check_nonbreaking(ic, Grid(0.0, 40.0, 2001));
        OracleReport rt = oracle::cg_roundtrip(ic, Grid(0.0, 40.0, 2001), rep.tolerance);
        rep.sup_error = rt.sup_error;
        rep.passed = nb.ok() && rt.passed && nb.monotonicity_margin < 0.1;
        std::ostringstream os;
        os << "margins: monotonicity " << nb.monotonicity_margin << ", characteristic "
           << nb.characteristic_margin << ", roundtrip sup " << rt.sup_error;
        rep.details = os.str();
        return rep;
    });
}

// --------------------------------------------------------------- pipeline

OracleReport pipeline_short_time() {
    return guarded("pipeline/short-time-taylor", [] {
        OracleReport rep;
        rep.name = "pipeline/short-time-taylor";
        const double amp = 0.01, x0 = 15.0, w = 3.0;
        auto eta0 = [=](double x) { return gauss(x, amp, x0, w); };
        auto eta0p = [=](double x) { return -2.0 * (x - x0) / (w * w) * gauss(x, amp, x0, w); };
        auto eta0pp = [=](double x) {
            const double s = (x - x0) / w;
            return (4.0 * s * s - 2.0) / (w * w) * gauss(x, amp, x0, w);
        };
        auto zero = [](double) { return 0.0; };
        oracle::NonlinearTaylor taylor(oracle::NonlinearTaylor::Analytic{
            eta0, eta0p, eta0pp, zero, zero, zero});

        Grid sg(0.0, 60.0, 1201);
        PhysicalIC ic(Grid(0.0, 60.0, 1201), eta0, zero);
        ManifoldIC mic = forward_cg(ic, sg);
        auto [order, pres] = choose_order(mic, 1e-12, 8);
        std::vector<double> taus;
        for (int i = -30; i <= 30; ++i) taus.push_back(0.005 * i);
        HodographSolution sol = evolve_spectral(pres.g_proj, taus);

        // residual against the order-2 expansion should shrink like t^3
        std::vector<double> ts = {0.025, 0.05, 0.1}, res;
        for (double t : ts) {
            PhysicalSnapshot snap = inverse_cg_snapshot(sol, t);
            double sup = 0.0;
            for (size_t i = 0; i < snap.x.size(); ++i) {
                double eta, u;
                taylor.eval(snap.x[i], t, 2, eta, u);
                sup = std::max({sup, std::abs(eta - snap.eta[i]), std::abs(u - snap.u[i])});
            }
            res.push_back(sup);
        }
        // least-squares slope of log res vs log t
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int n = static_cast<int>(ts.size());
        for (int i = 0; i < n; ++i) {
            const double lx = std::log(ts[i]), ly = std::log(res[i]);
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        }
        rep.observed_order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        rep.sup_error = res.back();
        rep.tolerance = 0.5;  // allowed deviation of the exponent from 3
        rep.passed = std::abs(rep.observed_order - 3.0) <= rep.tolerance;
        std::ostringstream os;
        os << "residuals";
        for (int i = 0; i < n; ++i) os << " t=" << ts[i] << ":" << res[i];
        os << ", fitted exponent " << rep.observed_order << " (projection order " << order << ")";
        rep.details = os.str();
        return rep;
    });
}

OracleReport pipeline_still_water() {
    return guarded("pipeline/still-water-degeneracy", [] {
        OracleReport rep;
        rep.name = "pipeline/still-water-degeneracy";
        Grid sg(0.0, 40.0, 801);
        PhysicalIC ic(Grid(0.0, 40.0, 801),
                      [](double x) { return gauss(x, 0.02, 12.0, 2.5); },
                      [](double) { return 0.0; });
        ManifoldIC mic = forward_cg(ic, sg);
        auto [order, pres] = choose_order(mic, 1e-14, 8);
        rep.passed = (order == 0) && bitwise_equal(pres.g_proj, mic.data);
        rep.sup_error = bitwise_equal(pres.g_proj, mic.data)
                            ? 0.0 : max_abs_diff(pres.g_proj, mic.data);
        std::ostringstream os;
        os << "zero velocity puts the data at tau = 0; chose order " << order
           << ", projection must be the identity";
        rep.details = os.str();
        return rep;
    });
}

}  // namespace

const std::vector<std::string>& validation_suites() {
    static const std::vector<std::string> names = {"projection", "evolver", "cg", "pipeline"};
    return names;
}

std::vector<OracleReport> run_validation_suite(const std::string& suite) {
    std::vector<OracleReport> out;
    auto add = [&](const std::string& name, const Check& body) {
        out.push_back(guarded(name, body));
    };
    if (suite == "projection" || suite == "all") {
        add("projection/advection-exact", advection_projection);
        add("projection/identity-on-t0-manifold", projection_identity);
        add("projection/characteristic-rejection", projection_characteristic_rejection);
        add("projection/linearity", projection_linearity);
    }
    if (suite == "evolver" || suite == "all") {
        add("evolver/bessel-mode-order", evolver_mode_convergence);
        add("evolver/spectral-mode-exact", evolver_spectral_exact);
        add("evolver/energy-drift", evolver_energy);
        add("evolver/fd-vs-spectral", evolver_cross_check);
    }
    if (suite == "cg" || suite == "all") {
        add("cg/roundtrip", cg_roundtrip_check);
        add("cg/roundtrip-moving", cg_roundtrip_moving);
        add("cg/breaking-rejection", cg_breaking_rejection);
        add("cg/near-breaking-margins", cg_near_breaking);
    }
    if (suite == "pipeline" || suite == "all") {
        add("pipeline/short-time-taylor", pipeline_short_time);
        add("pipeline/still-water-degeneracy", pipeline_still_water);
    }
    if (out.empty()) {
        std::ostringstream os;
        os << "unknown validation suite '" << suite << "'; available:";
        for (const auto& s : validation_suites()) os << " " << s;
        os << " all";
        throw std::invalid_argument(os.str());
    }
    return out;
}

}
