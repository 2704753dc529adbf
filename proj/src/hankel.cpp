#include "runup/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "runup/bessel.hpp"
#include "runup/common.hpp"
#include "runup/numerics.hpp"

namespace runup {

namespace {

void project_onto_modes(const GridFunction& ic, const std::vector<double>& sigma,
                        const std::vector<double>& wq, SpectralCoefficients& sc,
                        kernels::Exec e) {
    const int nk = static_cast<int>(sc.k_nodes.size());
    const int ns = static_cast<int>(sigma.size());
    sc.a.assign(nk, 0.0);
    sc.b.assign(nk, 0.0);
    kernels::hankel_project_j0(nk, sc.k_nodes.data(), ns, sigma.data(), wq.data(),
                               ic.component(1).data(), 2.0, sc.a.data(), e);
    kernels::hankel_project_j1(nk, sc.k_nodes.data(), ns, sigma.data(), wq.data(),
                               ic.component(0).data(), 2.0, sc.b.data(), e);
}

double tail_level(const std::vector<double>& a, const std::vector<double>& b) {
    const int nk = static_cast<int>(a.size());
    double all = 0.0, tail = 0.0;
    const int t0 = nk - std::max(1, nk / 10);
    for (int i = 0; i < nk; ++i) {
        const double v = std::max(std::abs(a[i]), std::abs(b[i]));
        all = std::max(all, v);
        if (i >= t0) tail = std::max(tail, v);
    }
    return all > 0.0 ? tail / all : 0.0;
}

double reconstruction_residual(const SpectralCoefficients& sc, const GridFunction& ic,
                               kernels::Exec e) {
    GridFunction rec = hankel_evaluate_grid(sc, ic.grid(), 0.0, e);
    const double scale = std::max(ic.max_abs(), 1e-30);
    return max_abs_diff(rec, ic) / scale;
}

// Weighted, Tikhonov-regularized least-squares fit of one component in the
// mode basis; columns are w_i K(2 k_i sqrt(sigma_j)).
void ls_refine_component(std::span<const double> f, const std::vector<double>& sigma,
                         const std::vector<double>& wq, const std::vector<double>& k,
                         const std::vector<double>& w, bool order1,
                         std::vector<double>& coeff, double lambda_rel) {
    const int nk = static_cast<int>(k.size());
    const int ns = static_cast<int>(sigma.size());
    std::vector<double> B(static_cast<size_t>(ns) * nk);
    for (int j = 0; j < ns; ++j) {
        const double rs = std::sqrt(sigma[j]);
        for (int i = 0; i < nk; ++i) {
            const double arg = 2.0 * k[i] * rs;
            const double v = order1 ? 2.0 * k[i] * special::j1_over_x(arg) : special::j0(arg);
            B[static_cast<size_t>(j) * nk + i] = w[i] * v;
        }
    }
    std::vector<double> G(static_cast<size_t>(nk) * nk, 0.0), rhs(nk, 0.0);
    for (int j = 0; j < ns; ++j) {
        const double* Bj = B.data() + static_cast<size_t>(j) * nk;
        const double wj = wq[j];
        for (int i = 0; i < nk; ++i) {
            rhs[i] += wj * Bj[i] * f[j];
            for (int l = i; l < nk; ++l) G[static_cast<size_t>(i) * nk + l] += wj * Bj[i] * Bj[l];
        }
    }
    for (int i = 0; i < nk; ++i)
        for (int l = 0; l < i; ++l)
            G[static_cast<size_t>(i) * nk + l] = G[static_cast<size_t>(l) * nk + i];
    double dmax = 0.0;
    for (int i = 0; i < nk; ++i) dmax = std::max(dmax, G[static_cast<size_t>(i) * nk + i]);
    double lambda = lambda_rel * std::max(dmax, 1e-300);
    for (int attempt = 0; attempt < 4; ++attempt) {
        std::vector<double> Gl = G;
        std::vector<double> x = rhs;
        for (int i = 0; i < nk; ++i) Gl[static_cast<size_t>(i) * nk + i] += lambda;
        if (cholesky_solve(Gl, x, nk)) {
            coeff = std::move(x);
            return;
        }
        lambda *= 100.0;
    }
    numerical_error("spectral resolution insufficient: least-squares system is degenerate");
}

}  // namespace

SpectralCoefficients hankel_analyze(const GridFunction& ic, const HankelOptions& opt) {
    require(ic.m() == 2, "hankel_analyze: initial state must have two components");
    require(ic.grid().x_min == 0.0,
            "hankel_analyze: the spectral transform needs the domain to start at sigma = 0");
    require(opt.k_points >= 8, "hankel_analyze: too few mode nodes");
    require(ic.all_finite(), "hankel_analyze: initial state has non-finite entries");

    const Grid& g = ic.grid();
    const auto sigma = g.nodes();
    const auto wq = simpson_weights(g.n, g.h());

    SpectralCoefficients sc;
    double k_max = opt.k_max > 0.0 ? opt.k_max : 8.0;
    const bool auto_k = opt.k_max <= 0.0;
    for (int attempt = 0;; ++attempt) {
        sc.k_max = k_max;
        std::vector<double> v;
        gauss_legendre(opt.k_points, 0.0, k_max, sc.k_nodes, v);
        sc.k_weights.resize(opt.k_points);
        for (int i = 0; i < opt.k_points; ++i) sc.k_weights[i] = v[i] * sc.k_nodes[i];
        project_onto_modes(ic, sigma, wq, sc, opt.exec);
        if (!auto_k || attempt >= 4 || k_max >= 128.0) break;
        if (tail_level(sc.a, sc.b) <= 1e-6) break;
        k_max *= 2.0;
    }

    sc.reconstruction_residual = reconstruction_residual(sc, ic, opt.exec);
    if (sc.reconstruction_residual > opt.residual_tol && opt.least_squares_refine) {
        ls_refine_component(ic.component(1), sigma, wq, sc.k_nodes, sc.k_weights,
                            false, sc.a, opt.ls_lambda);
        ls_refine_component(ic.component(0), sigma, wq, sc.k_nodes, sc.k_weights,
                            true, sc.b, opt.ls_lambda);
        sc.reconstruction_residual = reconstruction_residual(sc, ic, opt.exec);
    }
    if (sc.reconstruction_residual > opt.residual_tol) {
        std::ostringstream os;
        os << "spectral resolution insufficient: tau = 0 reconstruction residual "
           << sc.reconstruction_residual << " exceeds " << opt.residual_tol
           << " (k_max = " << sc.k_max << ", k_points = " << opt.k_points << ")";
        numerical_error(os.str());
    }
    return sc;
}

std::pair<double, double> hankel_evaluate(const SpectralCoefficients& sc,
                                          double sigma, double tau) {
    require(sigma >= 0.0, "hankel_evaluate: sigma must be non-negative");
    const double rs = std::sqrt(sigma);
    double phi = 0.0, psi = 0.0;
    for (size_t i = 0; i < sc.k_nodes.size(); ++i) {
        const double k = sc.k_nodes[i], w = sc.k_weights[i];
        const double ct = std::cos(k * tau), st = std::sin(k * tau);
        const double arg = 2.0 * k * rs;
        psi += w * (sc.a[i] * ct - sc.b[i] * st) * special::j0(arg);
        phi += w * (sc.a[i] * st + sc.b[i] * ct) * 2.0 * k * special::j1_over_x(arg);
    }
    return {phi, psi};
}

GridFunction hankel_evaluate_grid(const SpectralCoefficients& sc, const Grid& g, double tau,
                                  kernels::Exec e) {
    GridFunction out(g, 2);
    const auto sigma = g.nodes();
    kernels::hankel_synth(g.n, sigma.data(), static_cast<int>(sc.k_nodes.size()),
                          sc.k_nodes.data(), sc.k_weights.data(), sc.a.data(), sc.b.data(),
                          tau, out.component(0).data(), out.component(1).data(), e);
    return out;
}

HodographSolution evolve_spectral(const GridFunction& ic, std::span<const double> tau_out,
                                  const HankelOptions& opt) {
    require(!tau_out.empty(), "evolve_spectral: no output levels requested");
    for (size_t i = 1; i < tau_out.size(); ++i)
        require(tau_out[i] > tau_out[i - 1], "evolve_spectral: output levels must be increasing");
    SpectralCoefficients sc = hankel_analyze(ic, opt);
    HodographSolution sol;
    sol.sigma_grid = ic.grid();
    sol.method = EvolveMethod::Spectral;
    sol.tau_values.assign(tau_out.begin(), tau_out.end());
    sol.slices.reserve(tau_out.size());
    for (double tau : tau_out)
        sol.slices.push_back(hankel_evaluate_grid(sc, ic.grid(), tau, opt.exec));
    return sol;
}

double spectral_energy(const SpectralCoefficients& sc) {
    double e = 0.0;
    for (size_t i = 0; i < sc.k_nodes.size(); ++i)
        e += sc.k_weights[i] * (sc.a[i] * sc.a[i] + sc.b[i] * sc.b[i]);
    return 0.5 * e;
}

double CrossCheckReport::max_sup() const {
    double m = 0.0;
    for (double v : sup_diff) m = std::max(m, v);
    return m;
}

CrossCheckReport cross_check(const HyperbolicSystem1D& sys, const GridFunction& ic,
                             double T, int levels, const FdOptions& fd,
                             const HankelOptions& hk) {
    require(T > 0.0 && levels >= 2, "cross_check: need a positive horizon and two levels");
    std::vector<double> tau(levels);
    for (int i = 0; i < levels; ++i) tau[i] = T * i / (levels - 1);
    HodographSolution a = evolve_fd(sys, ic, tau, fd);
    HodographSolution b = evolve_spectral(ic, tau, hk);
    CrossCheckReport rep;
    rep.tau = tau;
    const auto w = simpson_weights(ic.n(), ic.grid().h());
    for (int l = 0; l < levels; ++l) {
        rep.sup_diff.push_back(max_abs_diff(a.slices[l], b.slices[l]));
        double l2 = 0.0;
        for (int i = 0; i < ic.n(); ++i) {
            const double dphi = a.slices[l].at(0, i) - b.slices[l].at(0, i);
            const double dpsi = a.slices[l].at(1, i) - b.slices[l].at(1, i);
            l2 += w[i] * (dphi * dphi + dpsi * dpsi);
        }
        rep.l2_diff.push_back(std::sqrt(l2));
    }
    return rep;
}

}
