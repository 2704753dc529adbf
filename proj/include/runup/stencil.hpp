#pragma once
#include <span>
#include <vector>

#include "runup/grid.hpp"
#include "runup/kernels.hpp"

namespace runup {

// Finite-difference weights for the der-th derivative at x0 from the nodes xs
// (Fornberg's recurrence). Exact on polynomials of degree <= xs.size()-1.
std::vector<double> fd_weights(double x0, std::span<const double> xs, int der);

// First-derivative operator on a uniform grid: central differences of order p
// in the interior, one-sided stencils of the same order (p+1 points) at the
// p/2 rows nearest each boundary.
class DerivativeOp {
public:
    DerivativeOp(const Grid& grid, int order);

    int order() const { return p_; }
    const Grid& grid() const { return grid_; }

    void apply(std::span<const double> f, std::span<double> df,
               kernels::Exec e = kernels::default_exec()) const;
    GridFunction apply(const GridFunction& f,
                       kernels::Exec e = kernels::default_exec()) const;

    kernels::StencilTable table() const;

private:
    Grid grid_;
    int p_ = 0;
    std::vector<double> interior_, left_, right_;
};

// One-shot derivative of every component of f with stencil order p.
GridFunction derivative(const GridFunction& f, int p,
                        kernels::Exec e = kernels::default_exec());

}
