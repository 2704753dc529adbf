#pragma once
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "runup/grid.hpp"
#include "runup/kernels.hpp"

namespace runup {

// m x m matrix-valued coefficient A(x), evaluated analytically via a callback.
class MatrixField {
public:
    using Fn = std::function<void(double, std::span<double>)>;  // fills row-major m*m

    MatrixField() = default;
    MatrixField(int m, Fn f);

    static MatrixField constant(int m, std::vector<double> entries);
    static MatrixField zero(int m);
    static MatrixField scalar(std::function<double(double)> f);  // m = 1

    int m() const { return m_; }
    void eval(double x, std::span<double> out) const;

    // row-major m*m blocks per node, node-major
    std::vector<double> sample(const Grid& g) const;

private:
    int m_ = 0;
    Fn fn_;
};

// u_t + A1(x) u_x + A0(x) u = 0
struct HyperbolicSystem1D {
    int m = 0;
    MatrixField a1, a0;

    HyperbolicSystem1D() = default;
    HyperbolicSystem1D(MatrixField a1_, MatrixField a0_);
};

// Data manifold t = tau(x); stores tau and its derivative as callables.
struct Manifold {
    std::function<double(double)> tau;
    std::function<double(double)> tau_prime;

    static Manifold zero();
    static Manifold linear(double beta);         // tau = beta * x
    static Manifold from_samples(const Grid& g, std::span<const double> tau_values,
                                 int stencil_order);
};

// Spatial part of the evolution operator: (D u) = A1 u_x + A0 u.
GridFunction apply_D(const HyperbolicSystem1D& sys, const GridFunction& u, int p,
                     kernels::Exec e = kernels::default_exec());

// M(x) = I - tau'(x) A1(x), the matrix whose invertibility makes the manifold
// non-characteristic at x.
void characteristic_matrix(const HyperbolicSystem1D& sys, const Manifold& mf,
                           double x, std::span<double> out);

// min over grid nodes of |det(I - tau' A1)|
double noncharacteristic_margin(const HyperbolicSystem1D& sys, const Manifold& mf,
                                const Grid& g);

// Throws unless A1 has real eigenvalues (and an eigenbasis, away from
// degenerate multiple eigenvalues) at every node of g.
void check_hyperbolic(const HyperbolicSystem1D& sys, const Grid& g, double tol = 1e-8);

// Cauchy data g prescribed on the manifold: u(x, tau(x)) = g(x).
struct ManifoldIC {
    HyperbolicSystem1D system;
    Manifold manifold;
    GridFunction data;
    double margin = 0.0;  // non-characteristic margin on data.grid()

    ManifoldIC(HyperbolicSystem1D sys, Manifold mf, GridFunction g);

    // Same system and manifold, different data (for linearity checks etc.).
    ManifoldIC with_data(GridFunction g) const { return {system, manifold, std::move(g)}; }
};

}
