#pragma once
#include <span>
#include <string>
#include <vector>

#include "runup/system.hpp"

namespace runup {

enum class EvolveMethod { FiniteDifference, Spectral };

// Time-ordered slices of the 2-component hodograph state on a fixed sigma grid.
// Component 0 is phi (fluid velocity in hodograph variables), component 1 is
// psi. tau_values is strictly increasing and may start below zero: converting
// physical t <= max(u) snapshots back through tau = t - u needs negative tau.
struct HodographSolution {
    Grid sigma_grid;
    std::vector<double> tau_values;
    std::vector<GridFunction> slices;
    EvolveMethod method = EvolveMethod::FiniteDifference;

    int levels() const { return static_cast<int>(tau_values.size()); }
    const GridFunction& slice(int l) const { return slices[l]; }

    // Cubic interpolation in tau of (phi, psi) at grid node `node`.
    void interp_node(int node, double tau, double& phi, double& psi) const;

    // Index of the last stored level with tau_values[l] <= tau.
    int level_before(double tau) const;
};

struct FdOptions {
    int stencil_order = 4;
    double cfl = 0.4;
    double sponge_fraction = 0.10;
    double sponge_strength = -1.0;  // < 0 selects an automatic strength
    double speed_floor = 1e-3;      // keeps the CFL step finite when c ~ 0
    kernels::Exec exec = kernels::default_exec();
};

// Method-of-lines RK4 integration of
//   phi_tau + psi_sigma = 0,  psi_tau + c(sigma) phi_sigma + phi = 0
// from the tau = 0 state `ic` (m = 2) to every level in tau_out (strictly
// increasing; levels below zero are integrated backwards from tau = 0).
// The outer boundary combines zeroth-order extrapolation with a cubic-ramp
// sponge on the last sponge_fraction of the domain. At sigma = 0 no boundary
// condition is imposed when c(0) = 0 (the boundary is characteristic and the
// fields stay regular there); for c(0) > 0 a reflecting wall phi(0) = 0 is
// applied.
HodographSolution evolve_fd(const HyperbolicSystem1D& sys, const GridFunction& ic,
                            std::span<const double> tau_out, const FdOptions& opt = {});

// Extract c(sigma) node samples from the hodograph system, validating its shape
// ([[0,1],[c,0]] advection part, [[0,0],[1,0]] zero-order part).
std::vector<double> hodograph_wave_speed(const HyperbolicSystem1D& sys, const Grid& g);

// Energy integral (1/2-free convention): E = int (c phi^2 + psi^2) dsigma over
// the grid, by composite Simpson weights. Conserved by the plane-beach system.
double hodograph_energy(const GridFunction& state, std::span<const double> c_nodes);

}
