#include "runup/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "runup/common.hpp"
#include "runup/numerics.hpp"
#include "runup/stencil.hpp"

namespace runup {

int HodographSolution::level_before(double tau) const {
    auto it = std::upper_bound(tau_values.begin(), tau_values.end(), tau);
    int l = static_cast<int>(it - tau_values.begin()) - 1;
    return std::clamp(l, 0, levels() - 1);
}

void HodographSolution::interp_node(int node, double tau, double& phi, double& psi) const {
    const int L = levels();
    require(L >= 2, "HodographSolution: need at least two levels to interpolate");
    int l = level_before(tau);
    // a stored level is returned verbatim, so queries at stored times are exact
    if (tau == tau_values[l]) {
        phi = slices[l].at(0, node);
        psi = slices[l].at(1, node);
        return;
    }
    if (l >= L - 1) l = L - 2;
    // four-point window centered on [l, l+1]
    int w0 = std::clamp(l - 1, 0, L - 4);
    if (L < 4) {  // degenerate: fall back to linear
        const double t = (tau - tau_values[l]) / (tau_values[l + 1] - tau_values[l]);
        phi = (1.0 - t) * slices[l].at(0, node) + t * slices[l + 1].at(0, node);
        psi = (1.0 - t) * slices[l].at(1, node) + t * slices[l + 1].at(1, node);
        return;
    }
    const int li = l - w0;  // 1 or adjusted near the ends
    const double dt = tau_values[w0 + 1] - tau_values[w0];
    // levels are uniformly spaced by construction; guard anyway
    const double s = (tau - tau_values[w0 + li]) / dt + (li - 1);
    phi = cubic4(slices[w0].at(0, node), slices[w0 + 1].at(0, node),
                 slices[w0 + 2].at(0, node), slices[w0 + 3].at(0, node), s);
    psi = cubic4(slices[w0].at(1, node), slices[w0 + 1].at(1, node),
                 slices[w0 + 2].at(1, node), slices[w0 + 3].at(1, node), s);
}

std::vector<double> hodograph_wave_speed(const HyperbolicSystem1D& sys, const Grid& g) {
    require(sys.m == 2, "hodograph system must have two components");
    std::vector<double> c(g.n);
    std::vector<double> M(4);
    for (int i = 0; i < g.n; ++i) {
        const double x = g.node(i);
        sys.a1.eval(x, M);
        require(std::abs(M[0]) < 1e-12 && std::abs(M[3]) < 1e-12 && std::abs(M[1] - 1.0) < 1e-12,
                "hodograph system: advection part must be [[0,1],[c,0]]");
        require(M[2] > -1e-12, "hodograph system: wave speed c(sigma) must be non-negative");
        c[i] = std::max(M[2], 0.0);
        sys.a0.eval(x, M);
        require(std::abs(M[0]) < 1e-12 && std::abs(M[1]) < 1e-12 &&
                std::abs(M[2] - 1.0) < 1e-12 && std::abs(M[3]) < 1e-12,
                "hodograph system: zero-order part must be [[0,0],[1,0]]");
    }
    return c;
}

double hodograph_energy(const GridFunction& state, std::span<const double> c_nodes) {
    require(state.m() == 2, "hodograph_energy: need a 2-component state");
    require(static_cast<int>(c_nodes.size()) == state.n(), "hodograph_energy: c sample mismatch");
    const auto w = simpson_weights(state.n(), state.grid().h());
    double e = 0.0;
    for (int i = 0; i < state.n(); ++i) {
        const double phi = state.at(0, i), psi = state.at(1, i);
        e += w[i] * (c_nodes[i] * phi * phi + psi * psi);
    }
    return e;
}

namespace {

struct Stepper {
    const Grid& g;
    FdOptions opt;
    DerivativeOp ddx;
    std::vector<double> c, damp;
    bool reflect_left = false;
    int n;
    // work buffers: component-major 2n states
    std::vector<double> k1, k2, k3, k4, tmp, dphi, dpsi;

    Stepper(const HyperbolicSystem1D& sys, const Grid& grid, const FdOptions& o)
        : g(grid), opt(o), ddx(grid, o.stencil_order), n(grid.n) {
        c = hodograph_wave_speed(sys, g);
        reflect_left = c.front() > 0.0;
        const double cmax = *std::max_element(c.begin(), c.end());
        const double smax = std::max(std::sqrt(std::max(cmax, 0.0)), opt.speed_floor);
        // cubic sponge ramp over the trailing fraction of the domain
        damp.assign(n, 0.0);
        const double width = opt.sponge_fraction * (g.x_max - g.x_min);
        if (width > 0.0) {
            const double s0 = g.x_max - width;
            double strength = opt.sponge_strength;
            if (strength < 0.0) strength = 12.0 * smax / width;
            for (int i = 0; i < n; ++i) {
                const double x = g.node(i);
                if (x > s0) {
                    const double r = (x - s0) / width;
                    damp[i] = strength * r * r * r;
                }
            }
        }
        const size_t len = 2 * static_cast<size_t>(n);
        k1.assign(len, 0.0); k2.assign(len, 0.0); k3.assign(len, 0.0); k4.assign(len, 0.0);
        tmp.assign(len, 0.0);
        dphi.assign(n, 0.0); dpsi.assign(n, 0.0);
    }

    double stable_dt() const {
        const double cmax = *std::max_element(c.begin(), c.end());
        const double smax = std::max(std::sqrt(std::max(cmax, 0.0)), opt.speed_floor);
        return opt.cfl * g.h() / smax;
    }

    void rhs(const double* state, double* out) {
        const auto st = ddx.table();
        kernels::stencil_apply(st, state, dphi.data(), opt.exec);
        kernels::stencil_apply(st, state + n, dpsi.data(), opt.exec);
        kernels::swe_rhs_combine(n, dphi.data(), dpsi.data(), state, state + n,
                                 c.data(), damp.data(), out, out + n, opt.exec);
    }

    void apply_bc(double* state) {
        // zeroth-order extrapolation at the outer edge; the sponge has already
        // flattened whatever reaches it
        state[n - 1] = state[n - 2];
        state[2 * n - 1] = state[2 * n - 2];
        if (reflect_left) state[0] = 0.0;
    }

    void rk4_step(double* state, double dt) {
        const size_t len = 2 * static_cast<size_t>(n);
        rhs(state, k1.data());
        kernels::axpby(static_cast<int>(len), 1.0, state, 0.5 * dt, k1.data(), tmp.data(), opt.exec);
        rhs(tmp.data(), k2.data());
        kernels::axpby(static_cast<int>(len), 1.0, state, 0.5 * dt, k2.data(), tmp.data(), opt.exec);
        rhs(tmp.data(), k3.data());
        kernels::axpby(static_cast<int>(len), 1.0, state, dt, k3.data(), tmp.data(), opt.exec);
        rhs(tmp.data(), k4.data());
        for (size_t i = 0; i < len; ++i)
            state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        apply_bc(state);
    }

    // March from tau_from to tau_to, leaving the state in `state`.
    void march(std::vector<double>& state, double tau_from, double tau_to) {
        const double span = tau_to - tau_from;
        if (span == 0.0) return;
        const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(span) / stable_dt())));
        const double dt = span / steps;
        for (int s = 0; s < steps; ++s) rk4_step(state.data(), dt);
    }
};

void check_finite(const std::vector<double>& state, double tau) {
    for (double v : state)
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "instability: non-finite state at tau = " << tau;
            numerical_error(os.str());
        }
}

}  // namespace

HodographSolution evolve_fd(const HyperbolicSystem1D& sys, const GridFunction& ic,
                            std::span<const double> tau_out, const FdOptions& opt) {
    require(ic.m() == 2, "evolve_fd: initial state must have two components");
    require(!tau_out.empty(), "evolve_fd: no output levels requested");
    for (size_t i = 1; i < tau_out.size(); ++i)
        require(tau_out[i] > tau_out[i - 1], "evolve_fd: output levels must be increasing");
    require(ic.all_finite(), "evolve_fd: initial state has non-finite entries");

    const Grid& g = ic.grid();
    Stepper st(sys, g, opt);

    HodographSolution sol;
    sol.sigma_grid = g;
    sol.method = EvolveMethod::FiniteDifference;
    sol.tau_values.assign(tau_out.begin(), tau_out.end());
    sol.slices.resize(tau_out.size(), GridFunction(g, 2));

    auto store = [&](int level, const std::vector<double>& state) {
        check_finite(state, sol.tau_values[level]);
        GridFunction& s = sol.slices[level];
        std::copy(state.begin(), state.end(), s.values().begin());
    };

    // split the levels into the backward (tau < 0) and forward parts; each
    // direction marches from the tau = 0 state
    std::vector<double> state(ic.values());
    int first_fwd = 0;
    while (first_fwd < static_cast<int>(tau_out.size()) && tau_out[first_fwd] < 0.0) ++first_fwd;

    double tau = 0.0;
    for (int l = first_fwd; l < static_cast<int>(tau_out.size()); ++l) {
        st.march(state, tau, tau_out[l]);
        tau = tau_out[l];
        store(l, state);
    }
    state = ic.values();
    tau = 0.0;
    for (int l = first_fwd - 1; l >= 0; --l) {
        st.march(state, tau, tau_out[l]);
        tau = tau_out[l];
        store(l, state);
    }
    return sol;
}

}
