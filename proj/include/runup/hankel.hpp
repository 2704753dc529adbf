#pragma once
#include <span>
#include <utility>
#include <vector>

#include "runup/evolve.hpp"

namespace runup {

// Continuous-spectrum mode amplitudes for the plane-beach hodograph system.
// With s = 2 k sqrt(sigma), the synthesis underlying all evaluations is
//   psi(sigma, tau) = sum_i w_i (a_i cos(k_i tau) - b_i sin(k_i tau)) J0(s_i)
//   phi(sigma, tau) = sum_i w_i (a_i sin(k_i tau) + b_i cos(k_i tau)) J1(s_i)/sqrt(sigma)
// where w_i = v_i k_i rolls the Gauss-Legendre weight v_i and the k dk measure
// into one factor. At tau = 0 this reduces to psi0 = sum w a J0 and
// phi0 = sum w b J1/sqrt(sigma). The amplitude densities follow from the
// Hankel orthogonality int_0^inf J_n(2k rs) J_n(2k' rs) dsigma = delta(k-k')/(2k)
// (rs = sqrt(sigma)), giving a(k) = 2 int psi0 J0 dsigma and
// b(k) = 2 int phi0 sqrt(sigma) J1 dsigma, and the exact energy identity
//   int (sigma phi^2 + psi^2) dsigma = 1/2 sum_i w_i (a_i^2 + b_i^2)
// independent of tau.
struct SpectralCoefficients {
    std::vector<double> k_nodes;    // Gauss-Legendre nodes on (0, k_max)
    std::vector<double> k_weights;  // v_i * k_i
    std::vector<double> a, b;
    double k_max = 0.0;
    double reconstruction_residual = 0.0;  // relative sup error at tau = 0
};

struct HankelOptions {
    int k_points = 256;
    double k_max = 0.0;          // <= 0: grow automatically from 8 until the tail is quiet
    double residual_tol = 1e-6;  // acceptance gate on the tau = 0 reconstruction
    bool least_squares_refine = true;
    double ls_lambda = 1e-12;    // Tikhonov factor, relative to the Gram diagonal
    kernels::Exec exec = kernels::default_exec();
};

// Amplitude densities of the tau = 0 state (component 0 = phi, 1 = psi).
// The grid must start at sigma = 0. Quadrature inversion first; if the
// reconstruction misses residual_tol, a regularized least-squares fit in the
// same mode basis is attempted before giving up.
SpectralCoefficients hankel_analyze(const GridFunction& ic, const HankelOptions& opt = {});

// (phi, psi) at one point.
std::pair<double, double> hankel_evaluate(const SpectralCoefficients& sc,
                                          double sigma, double tau);

// Full slice on a grid.
GridFunction hankel_evaluate_grid(const SpectralCoefficients& sc, const Grid& g, double tau,
                                  kernels::Exec e = kernels::default_exec());

// Spectral solution sampled at the requested tau levels (plane beach only).
HodographSolution evolve_spectral(const GridFunction& ic, std::span<const double> tau_out,
                                  const HankelOptions& opt = {});

// (1/2) sum w (a^2 + b^2): the energy integral the modes carry.
double spectral_energy(const SpectralCoefficients& sc);

// Runs the finite-difference and spectral solvers from the same tau = 0 state
// and reports their discrepancy per tau level.
struct CrossCheckReport {
    std::vector<double> tau;
    std::vector<double> sup_diff, l2_diff;
    double max_sup() const;
};

CrossCheckReport cross_check(const HyperbolicSystem1D& sys, const GridFunction& ic,
                             double T, int levels = 21,
                             const FdOptions& fd = {}, const HankelOptions& hk = {});

}
