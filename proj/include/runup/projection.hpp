#pragma once
#include <string>
#include <utility>
#include <vector>

#include "runup/system.hpp"

namespace runup {

// Result of projecting manifold data down to t = 0.
//
// The projected data is the truncated Taylor sum
//   u(x, 0) ~ sum_{k=0}^{order} (tau(x)^k / k!) (K^k g)(x),
// where K = (I - tau'(x) A1(x))^{-1} D and D u = A1 u_x + A0 u. The stored
// terms are the individual summands; g_proj is their node-wise sum in
// ascending k, so re-summing the terms reproduces g_proj bit for bit.
struct ProjectionResult {
    GridFunction g_proj;
    int order = 0;
    std::vector<GridFunction> terms;      // k = 0..order
    std::vector<double> term_sup_norms;   // sup norm of each stored term
    double next_term_estimate = 0.0;      // sup norm of the (order+1)-th term
    bool converged = true;                // only meaningful for choose_order
    bool diverging = false;               // term norms grew over 3 consecutive orders
    std::vector<std::string> warnings;
};

struct ProjectionOptions {
    int stencil_order = 4;
    // |det(I - tau' A1)| at or below this (times a norm scale) is treated as a
    // characteristic point and refused.
    double singular_tol = 1e-10;
    kernels::Exec exec = kernels::default_exec();
};

// One application of K = (I - tau' A1)^{-1} (A1 d/dx + A0) to h on the data grid.
GridFunction projection_step(const ManifoldIC& ic, const GridFunction& h,
                             const ProjectionOptions& opt = {});

// Fixed-order projection: terms k = 0..order plus the order+1 tail estimate.
ProjectionResult project(const ManifoldIC& ic, int order,
                         const ProjectionOptions& opt = {});

// Smallest order whose next-term estimate falls below eps (up to j_max).
// Returns the chosen order and its full result; result.converged reports
// whether the threshold was reached.
std::pair<int, ProjectionResult> choose_order(const ManifoldIC& ic, double eps,
                                              int j_max = 8,
                                              const ProjectionOptions& opt = {});

}
