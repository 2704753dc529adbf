#include "runup/oracles.hpp"

#include <cmath>
#include <memory>
#include <sstream>
#include <vector>

#include "runup/bessel.hpp"
#include "runup/common.hpp"
#include "runup/numerics.hpp"
#include "runup/stencil.hpp"

namespace runup::oracle {

ManifoldIC AdvectionSetup::manifold_ic(const Grid& g) const {
    require(static_cast<bool>(profile), "AdvectionSetup: empty profile");
    HyperbolicSystem1D sys(MatrixField::constant(1, {1.0}), MatrixField::zero(1));
    GridFunction data = GridFunction::sample_scalar(
        g, [this](double x) { return profile((1.0 - beta) * x); });
    return ManifoldIC(std::move(sys), Manifold::linear(beta), std::move(data));
}

std::pair<double, double> bessel_mode(double k, double sigma, double tau) {
    const double arg = 2.0 * k * std::sqrt(sigma);
    const double phi = 2.0 * k * special::j1_over_x(arg) * std::sin(k * tau);
    const double psi = special::j0(arg) * std::cos(k * tau);
    return {phi, psi};
}

GridFunction bessel_mode_slice(double k, const Grid& g, double tau) {
    GridFunction out(g, 2);
    for (int i = 0; i < g.n; ++i) {
        auto [phi, psi] = bessel_mode(k, g.node(i), tau);
        out.at(0, i) = phi;
        out.at(1, i) = psi;
    }
    return out;
}

namespace {

// eta1 = -(u0 (x + eta0))' ; u1 = -u0 u0' - eta0'
// eta2 = -(u1 (x + eta0) + u0 eta1)' ; u2 = -u1 u0' - u0 u1' - eta1'
struct TaylorPointwise {
    NonlinearTaylor::Analytic f;
    void operator()(double x, double* out) const {
        const double e0 = f.eta0(x), e0p = f.eta0p(x), e0pp = f.eta0pp(x);
        const double v0 = f.u0(x), v0p = f.u0p(x), v0pp = f.u0pp(x);
        const double depth = x + e0, depthp = 1.0 + e0p;
        const double e1 = -v0p * depth - v0 * depthp;
        const double u1 = -v0 * v0p - e0p;
        const double e1p = -v0pp * depth - 2.0 * v0p * depthp - v0 * e0pp;
        const double u1p = -(v0p * v0p + v0 * v0pp) - e0pp;
        const double e2 = -(u1p * depth + u1 * depthp + v0p * e1 + v0 * e1p);
        const double u2 = -(u1 * v0p + v0 * u1p) - e1p;
        out[0] = e0; out[1] = e1; out[2] = e2;
        out[3] = v0; out[4] = u1; out[5] = u2;
    }
};

}  // namespace

NonlinearTaylor::NonlinearTaylor(Analytic f) {
    require(f.eta0 && f.eta0p && f.eta0pp && f.u0 && f.u0p && f.u0pp,
            "NonlinearTaylor: all derivative callables are required");
    coeffs_ = TaylorPointwise{std::move(f)};
}

NonlinearTaylor::NonlinearTaylor(const PhysicalIC& ic, int stencil_order) {
    const Grid& g = ic.x_grid;
    DerivativeOp ddx(g, stencil_order);
    auto diff = [&](const std::vector<double>& v) {
        std::vector<double> d(g.n);
        ddx.apply(v, d);
        return d;
    };
    auto e0 = ic.eta0_samples;
    auto v0 = ic.u0_samples;
    auto e0p = diff(e0), v0p = diff(v0);
    auto e0pp = diff(e0p), v0pp = diff(v0p);
    auto interp = [&](std::vector<double> v) {
        return std::make_shared<Pchip>(g.nodes(), std::move(v));
    };
    Analytic f{
        [p = interp(e0)](double x) { return (*p)(x); },
        [p = interp(e0p)](double x) { return (*p)(x); },
        [p = interp(e0pp)](double x) { return (*p)(x); },
        [p = interp(v0)](double x) { return (*p)(x); },
        [p = interp(v0p)](double x) { return (*p)(x); },
        [p = interp(v0pp)](double x) { return (*p)(x); },
    };
    coeffs_ = TaylorPointwise{std::move(f)};
}

void NonlinearTaylor::eval(double x, double t, int order, double& eta, double& u) const {
    require(order == 1 || order == 2, "NonlinearTaylor: order must be 1 or 2");
    double c[6];
    coeffs_(x, c);
    eta = c[0] + t * c[1];
    u = c[3] + t * c[4];
    if (order == 2) {
        eta += 0.5 * t * t * c[2];
        u += 0.5 * t * t * c[5];
    }
}

OracleReport cg_roundtrip(const PhysicalIC& ic, const Grid& sigma_grid, double tol) {
    ManifoldIC mic = forward_cg(ic, sigma_grid);
    OracleReport rep;
    rep.name = "cg-roundtrip";
    rep.tolerance = tol;
    double sup = 0.0, l2 = 0.0;
    const auto w = simpson_weights(sigma_grid.n, sigma_grid.h());
    for (int i = 0; i < sigma_grid.n; ++i) {
        const double phi = mic.data.at(0, i), psi = mic.data.at(1, i);
        const double u = phi;
        const double eta = psi - 0.5 * phi * phi;
        const double x = sigma_grid.node(i) - eta;
        const double de = eta - ic.eta0(x);
        const double du = u - ic.u0(x);
        sup = std::max({sup, std::abs(de), std::abs(du)});
        l2 += w[i] * (de * de + du * du);
    }
    rep.sup_error = sup;
    rep.l2_error = std::sqrt(l2);
    rep.passed = sup <= tol;
    std::ostringstream os;
    os << "forward transform + closed-form t=0 inverse on " << sigma_grid.n << " nodes";
    rep.details = os.str();
    return rep;
}

}
