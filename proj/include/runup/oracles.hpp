#pragma once
#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "runup/cg.hpp"
#include "runup/system.hpp"

namespace runup {

// Outcome of one oracle comparison, consumed by the validation suites.
struct OracleReport {
    std::string name;
    std::string details;
    double sup_error = 0.0;
    double l2_error = 0.0;
    double observed_order = std::nan("");
    double tolerance = 0.0;
    bool passed = false;
};

namespace oracle {

// Unit-speed advection u_t + u_x = 0 with data prescribed on t = beta x.
// The exact solution is u(x, t) = profile(x - t), so the manifold data is
// profile((1 - beta) x) and the projected t = 0 target is profile(x).
// Everything here is written against the exact solution only.
struct AdvectionSetup {
    double beta = 0.3;
    std::function<double(double)> profile;

    ManifoldIC manifold_ic(const Grid& g) const;
    double target(double x) const { return profile(x); }
    double exact(double x, double t) const { return profile(x - t); }
};

// Separated exact solution of the plane-beach hodograph system,
//   phi = J1(2k sqrt(sigma))/sqrt(sigma) sin(k tau),
//   psi = J0(2k sqrt(sigma)) cos(k tau),
// smooth through sigma = 0 (phi -> k sin(k tau), psi -> cos(k tau)).
std::pair<double, double> bessel_mode(double k, double sigma, double tau);
GridFunction bessel_mode_slice(double k, const Grid& g, double tau);

// Short-time Taylor expansion of the physical shallow-water evolution
//   eta_t + ((x + eta) u)_x = 0,  u_t + u u_x + eta_x = 0
// about t = 0, to first or second order. Built either from analytic
// derivatives of the initial data or from high-order stencils on samples;
// no solver code is involved.
class NonlinearTaylor {
public:
    struct Analytic {
        std::function<double(double)> eta0, eta0p, eta0pp;
        std::function<double(double)> u0, u0p, u0pp;
    };

    explicit NonlinearTaylor(Analytic f);
    NonlinearTaylor(const PhysicalIC& ic, int stencil_order);

    // order 1 or 2
    void eval(double x, double t, int order, double& eta, double& u) const;

private:
    std::function<void(double, double*)> coeffs_;  // fills eta0,eta1,eta2,u0,u1,u2
};

// forward_cg followed by the closed-form t = 0 inversion
//   u = phi0, eta = psi0 - phi0^2/2, x = sigma - eta
// applied inline (independent of the snapshot machinery); reports the sup
// mismatch against the original eta0/u0 at the recovered x stations.
OracleReport cg_roundtrip(const PhysicalIC& ic, const Grid& sigma_grid, double tol = 1e-10);

}

}
