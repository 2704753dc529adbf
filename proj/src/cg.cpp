#include "runup/cg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "runup/common.hpp"
#include "runup/numerics.hpp"
#include "runup/stencil.hpp"

namespace runup {

BayProfile BayProfile::plane_beach() {
    return {"plane-beach", [](double sigma) { return sigma; }};
}

BayProfile BayProfile::from_function(std::string name, std::function<double(double)> c) {
    require(static_cast<bool>(c), "BayProfile: empty wave-speed function");
    return {std::move(name), std::move(c)};
}

HyperbolicSystem1D hodograph_system(const BayProfile& bay) {
    MatrixField A(2, [c = bay.c](double sigma, std::span<double> out) {
        out[0] = 0.0; out[1] = 1.0;
        out[2] = c(sigma); out[3] = 0.0;
    });
    MatrixField B = MatrixField::constant(2, {0.0, 0.0, 1.0, 0.0});
    return {std::move(A), std::move(B)};
}

PhysicalIC::PhysicalIC(const Grid& g, std::function<double(double)> eta0_,
                       std::function<double(double)> u0_, BayProfile bay_)
    : x_grid(g), eta0(std::move(eta0_)), u0(std::move(u0_)), bay(std::move(bay_)) {
    require(static_cast<bool>(eta0) && static_cast<bool>(u0), "PhysicalIC: empty evaluators");
    eta0_samples.resize(g.n);
    u0_samples.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        eta0_samples[i] = eta0(g.node(i));
        u0_samples[i] = u0(g.node(i));
        require(std::isfinite(eta0_samples[i]) && std::isfinite(u0_samples[i]),
                "PhysicalIC: non-finite initial data");
    }
}

PhysicalIC PhysicalIC::from_tables(const Grid& g, std::vector<double> eta0v,
                                   std::vector<double> u0v, BayProfile bay) {
    require(static_cast<int>(eta0v.size()) == g.n && static_cast<int>(u0v.size()) == g.n,
            "PhysicalIC: table length differs from grid size");
    auto ei = std::make_shared<Pchip>(g.nodes(), std::move(eta0v));
    auto ui = std::make_shared<Pchip>(g.nodes(), std::move(u0v));
    return PhysicalIC(g, [ei](double x) { return (*ei)(x); },
                      [ui](double x) { return (*ui)(x); }, std::move(bay));
}

double PhysicalIC::max_abs_eta() const {
    double m = 0.0;
    for (double v : eta0_samples) m = std::max(m, std::abs(v));
    return m;
}

double PhysicalIC::max_abs_u() const {
    double m = 0.0;
    for (double v : u0_samples) m = std::max(m, std::abs(v));
    return m;
}

double PhysicalIC::tail_level() const {
    const double peak = std::max({max_abs_eta(), max_abs_u(), 1e-300});
    double tail = 0.0;
    const int t0 = x_grid.n - std::max(1, x_grid.n / 10);
    for (int i = t0; i < x_grid.n; ++i)
        tail = std::max({tail, std::abs(eta0_samples[i]), std::abs(u0_samples[i])});
    return tail / peak;
}

namespace {

double monotonicity_margin(const PhysicalIC& ic, int p) {
    DerivativeOp ddx(ic.x_grid, p);
    std::vector<double> de(ic.x_grid.n);
    ddx.apply(ic.eta0_samples, de);
    double margin = std::numeric_limits<double>::infinity();
    for (double v : de) margin = std::min(margin, 1.0 + v);
    return margin;
}

// gamma(sigma): the unique x with x + eta0(x) = sigma.
std::vector<double> invert_sigma_map(const PhysicalIC& ic, const Grid& sg, kernels::Exec e) {
    std::vector<double> gamma(sg.n);
    const double pad = ic.max_abs_eta() * 1.5 + 1e-6;
    kernels::for_each_index(sg.n, e, [&](int i) {
        const double sigma = sg.node(i);
        auto F = [&](double x) { return x + ic.eta0(x) - sigma; };
        double lo = sigma - pad, hi = sigma + pad;
        for (int widen = 0; widen < 40 && F(lo) > 0.0; ++widen) lo -= pad;
        for (int widen = 0; widen < 40 && F(hi) < 0.0; ++widen) hi += pad;
        gamma[i] = find_root(F, lo, hi, 1e-13 * std::max(1.0, std::abs(sigma)));
    });
    return gamma;
}

struct HodographData {
    GridFunction phi0;          // m = 2 on the sigma grid
    std::vector<double> tau;    // -phi0 component 0
    Manifold manifold;
};

HodographData forward_cg_data(const PhysicalIC& ic, const Grid& sg, int p, kernels::Exec e) {
    const auto gamma = invert_sigma_map(ic, sg, e);
    HodographData hd{GridFunction(sg, 2), std::vector<double>(sg.n), Manifold::zero()};
    for (int i = 0; i < sg.n; ++i) {
        const double u = ic.u0(gamma[i]);
        const double eta = ic.eta0(gamma[i]);
        hd.phi0.at(0, i) = u;
        hd.phi0.at(1, i) = eta + 0.5 * u * u;
        hd.tau[i] = -u;
    }
    hd.manifold = Manifold::from_samples(sg, hd.tau, p);
    return hd;
}

}  // namespace

ManifoldIC forward_cg(const PhysicalIC& ic, const Grid& sigma_grid, int stencil_order,
                      kernels::Exec e) {
    const double margin = monotonicity_margin(ic, stencil_order);
    if (!(margin > 1e-6)) {
        std::ostringstream os;
        os << "hodograph fold (wave breaking in data): min(1 + eta0') = " << margin;
        numerical_error(os.str());
    }
    HodographData hd = forward_cg_data(ic, sigma_grid, stencil_order, e);
    return ManifoldIC(hodograph_system(ic.bay), std::move(hd.manifold), std::move(hd.phi0));
}

NonbreakingReport check_nonbreaking(const PhysicalIC& ic, const Grid& sigma_grid,
                                    int stencil_order, double tol) {
    NonbreakingReport rep;
    rep.tol = tol;
    rep.monotonicity_margin = monotonicity_margin(ic, stencil_order);
    if (!(rep.monotonicity_margin > 0.0)) {
        rep.characteristic_margin = 0.0;  // transform undefined past a fold
        return rep;
    }
    HodographData hd = forward_cg_data(ic, sigma_grid, stencil_order, kernels::default_exec());
    rep.characteristic_margin =
        noncharacteristic_margin(hodograph_system(ic.bay), hd.manifold, sigma_grid);
    return rep;
}

namespace {

// Solve tau + phi(sigma_i, tau) = t on the stored slices. Returns false when t
// lies outside the covered window; throws on fold (multiple or downward roots).
// Exact zeros at stored levels (the t = 0 snapshot of still water hits one at
// every node) resolve to that level directly, keeping the path bit-exact.
bool solve_tau(const HodographSolution& sol, int node, double t, double root_tol,
               double& tau_out) {
    const int L = sol.levels();
    auto level_f = [&](int l) { return sol.tau_values[l] + sol.slices[l].at(0, node) - t; };
    int roots = 0, bracket = -1;
    bool exact = false, downward = false, in_zero_run = false;
    double exact_tau = 0.0;
    int last_sign = 0;
    for (int l = 0; l < L; ++l) {
        const double f = level_f(l);
        const int s = (f > 0.0) - (f < 0.0);
        if (s == 0) {
            if (!in_zero_run) {
                ++roots;
                exact = true;
                exact_tau = sol.tau_values[l];
            }
            in_zero_run = true;
            continue;
        }
        if (in_zero_run || last_sign == 0) {
            // leaving a zero plateau (that root is counted) or first signed value
            in_zero_run = false;
            last_sign = s;
            continue;
        }
        if (s != last_sign) {
            ++roots;
            bracket = l - 1;
            if (last_sign > 0) downward = true;
            last_sign = s;
        }
    }
    if (roots == 0) return false;
    if (roots > 1 || downward) {
        std::ostringstream os;
        os << "post-breaking state, inverse CG invalid: tau + phi = t is not monotone at "
              "sigma = " << sol.sigma_grid.node(node) << ", t = " << t;
        numerical_error(os.str());
    }
    if (exact) {
        tau_out = exact_tau;
        return true;
    }
    auto F = [&](double tau) {
        double phi, psi;
        sol.interp_node(node, tau, phi, psi);
        return tau + phi - t;
    };
    tau_out = find_root(F, sol.tau_values[bracket], sol.tau_values[bracket + 1], root_tol);
    return true;
}

}  // namespace

PhysicalSnapshot inverse_cg_snapshot(const HodographSolution& sol, double t,
                                     const InverseOptions& opt) {
    const int n = sol.sigma_grid.n;
    require(sol.levels() >= 2, "inverse_cg_snapshot: need at least two stored levels");
    PhysicalSnapshot snap;
    snap.t = t;
    snap.x.resize(n);
    snap.eta.resize(n);
    snap.u.resize(n);
    kernels::for_each_index(n, opt.exec, [&](int i) {
        double tau;
        if (!solve_tau(sol, i, t, opt.root_tol, tau)) {
            std::ostringstream os;
            os << "time t = " << t << " is outside the evolved hodograph window at sigma = "
               << sol.sigma_grid.node(i);
            numerical_error(os.str());
        }
        double phi, psi;
        sol.interp_node(i, tau, phi, psi);
        snap.u[i] = phi;
        snap.eta[i] = psi - 0.5 * phi * phi;
        snap.x[i] = sol.sigma_grid.node(i) - snap.eta[i];
    });
    for (int i = 1; i < n; ++i)
        if (!(snap.x[i] > snap.x[i - 1])) {
            std::ostringstream os;
            os << "post-breaking state, inverse CG invalid: x stations fold at t = " << t;
            numerical_error(os.str());
        }
    if (sol.sigma_grid.x_min == 0.0) {
        snap.shoreline_x = snap.x[0];
        snap.shoreline_eta = snap.eta[0];
        snap.shoreline_u = snap.u[0];
    } else {
        snap.shoreline_x = snap.shoreline_eta = snap.shoreline_u =
            std::numeric_limits<double>::quiet_NaN();
    }
    if (opt.resample > 1) {
        std::vector<double> xs(opt.resample), es(opt.resample), us(opt.resample);
        const double x0 = snap.x.front(), x1 = snap.x.back();
        for (int i = 0; i < opt.resample; ++i) {
            const double q = x0 + (x1 - x0) * i / (opt.resample - 1);
            xs[i] = q;
            es[i] = linear_interp(snap.x, snap.eta, q);
            us[i] = linear_interp(snap.x, snap.u, q);
        }
        snap.x = std::move(xs);
        snap.eta = std::move(es);
        snap.u = std::move(us);
        snap.resampled = true;
    }
    return snap;
}

ShorelineSeries shoreline_series(const HodographSolution& sol, std::span<const double> t_values,
                                 double root_tol) {
    require(sol.sigma_grid.x_min == 0.0,
            "shoreline_series: the sigma grid must include the shoreline node sigma = 0");
    ShorelineSeries out;
    out.runup = -std::numeric_limits<double>::infinity();
    out.drawdown = std::numeric_limits<double>::infinity();
    for (double t : t_values) {
        double tau;
        if (!solve_tau(sol, 0, t, root_tol, tau)) {
            std::ostringstream os;
            os << "time t = " << t << " is outside the evolved hodograph window at the shoreline";
            numerical_error(os.str());
        }
        double phi, psi;
        sol.interp_node(0, tau, phi, psi);
        const double eta = psi - 0.5 * phi * phi;
        out.t.push_back(t);
        out.u_s.push_back(phi);
        out.eta_s.push_back(eta);
        out.x_s.push_back(-eta);  // sigma = 0 means x = -eta: the moving waterline
        out.runup = std::max(out.runup, eta);
        out.drawdown = std::min(out.drawdown, eta);
    }
    return out;
}

}
