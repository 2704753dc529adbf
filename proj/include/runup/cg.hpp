#pragma once
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "runup/evolve.hpp"
#include "runup/system.hpp"

namespace runup {

// Wave-speed profile c(sigma) >= 0 of the hodograph system; the sloping-beach
// geometry gives c(sigma) = sigma.
struct BayProfile {
    std::string name = "plane-beach";
    std::function<double(double)> c;

    static BayProfile plane_beach();
    static BayProfile from_function(std::string name, std::function<double(double)> c);
    bool is_plane_beach() const { return name == "plane-beach"; }
};

// u_t + A(sigma) u_sigma + B u = 0 with A = [[0,1],[c,0]], B = [[0,0],[1,0]].
HyperbolicSystem1D hodograph_system(const BayProfile& bay);

// Shoreline-frame shallow-water initial data eta(x,0) = eta0, u(x,0) = u0 on
// x >= 0 (x = 0 is the undisturbed shoreline). The callables must be valid a
// little beyond the grid ends; samples are kept alongside for diagnostics.
struct PhysicalIC {
    Grid x_grid;
    std::function<double(double)> eta0, u0;
    BayProfile bay;
    std::vector<double> eta0_samples, u0_samples;

    PhysicalIC(const Grid& g, std::function<double(double)> eta0_,
               std::function<double(double)> u0_, BayProfile bay_ = BayProfile::plane_beach());

    // Builds pchip evaluators from tabulated samples.
    static PhysicalIC from_tables(const Grid& g, std::vector<double> eta0,
                                  std::vector<double> u0,
                                  BayProfile bay = BayProfile::plane_beach());

    double max_abs_eta() const;
    double max_abs_u() const;
    // sup of |eta0|,|u0| over the last tenth of the grid, relative to the peak
    double tail_level() const;
};

struct NonbreakingReport {
    double monotonicity_margin = 0.0;    // min over x of 1 + eta0'
    double characteristic_margin = 0.0;  // min over sigma of |det(I - tau' A)|
    double tol = 1e-6;
    bool ok() const {
        return monotonicity_margin > tol && characteristic_margin > tol;
    }
};

// Hodograph data on the manifold tau = -u0(gamma(sigma)):
//   phi0 = u0(gamma), psi0 = eta0(gamma) + u0(gamma)^2/2,
// with gamma(sigma) the inverse of x + eta0(x). Throws
// "hodograph fold (wave breaking in data)" when 1 + eta0' loses positivity.
ManifoldIC forward_cg(const PhysicalIC& ic, const Grid& sigma_grid, int stencil_order = 4,
                      kernels::Exec e = kernels::default_exec());

// Margins only; never throws on breaking data.
NonbreakingReport check_nonbreaking(const PhysicalIC& ic, const Grid& sigma_grid,
                                    int stencil_order = 4, double tol = 1e-6);

// Physical state at fixed t recovered from hodograph slices: per sigma node
// solve tau + phi(sigma, tau) = t, then u = phi, eta = psi - phi^2/2,
// x = sigma - eta. Scattered native points by default; resample > 0 replaces
// them by that many uniformly spaced x stations (linear interpolation).
struct InverseOptions {
    int resample = 0;        // 0 keeps native points
    double root_tol = 1e-10;
    kernels::Exec exec = kernels::default_exec();
};

struct PhysicalSnapshot {
    double t = 0.0;
    std::vector<double> x, eta, u;
    double shoreline_x = 0.0, shoreline_eta = 0.0, shoreline_u = 0.0;
    bool resampled = false;
};

PhysicalSnapshot inverse_cg_snapshot(const HodographSolution& sol, double t,
                                     const InverseOptions& opt = {});

// Shoreline history: the sigma = 0 node tracked over the requested t values.
struct ShorelineSeries {
    std::vector<double> t, x_s, eta_s, u_s;
    double runup = 0.0;     // max eta_s
    double drawdown = 0.0;  // min eta_s
};

ShorelineSeries shoreline_series(const HodographSolution& sol, std::span<const double> t_values,
                                 double root_tol = 1e-10);

}
