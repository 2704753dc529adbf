#pragma once
#include <functional>
#include <span>
#include <vector>

namespace runup {

// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights);

// Composite quadrature weights for a uniform grid with n nodes and spacing h.
// Simpson on even interval counts; a 3/8 closure absorbs the odd interval.
std::vector<double> simpson_weights(int n, double h);

// Brent-style root solve on [lo, hi]; f(lo) and f(hi) must bracket a sign change.
// xtol is an absolute tolerance on the abscissa.
double find_root(const std::function<double(double)>& f, double lo, double hi, double xtol);

// Fritsch-Carlson monotone cubic interpolant through (x_i, y_i), x strictly increasing.
// Evaluation outside [x_front, x_back] extrapolates with the end cubics.
class Pchip {
public:
    Pchip() = default;
    Pchip(std::vector<double> x, std::vector<double> y);
    double operator()(double q) const;

private:
    std::vector<double> x_, y_, d_;  // d_: node derivatives
};

// Cubic Lagrange through equally spaced samples y0..y3 (abscissae -1,0,1,2),
// evaluated at s in [0,1] (between y1 and y2).
inline double cubic4(double y0, double y1, double y2, double y3, double s) {
    const double a = -s * (s - 1.0) * (s - 2.0) / 6.0;
    const double b = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
    const double c = -(s + 1.0) * s * (s - 2.0) / 2.0;
    const double d = (s + 1.0) * s * (s - 1.0) / 6.0;
    return a * y0 + b * y1 + c * y2 + d * y3;
}

// Piecewise-linear interpolation of (x, y) at q; clamps outside the range.
double linear_interp(std::span<const double> x, std::span<const double> y, double q);

// Solve the SPD system A x = b (A row-major n x n, overwritten by its Cholesky factor).
// Returns false if a pivot is not positive.
bool cholesky_solve(std::vector<double>& A, std::span<double> b, int n);

}
