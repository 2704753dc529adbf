#include "runup/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "runup/common.hpp"

namespace runup {

void gauss_legendre(int n, double a, double b,
                    std::vector<double>& nodes, std::vector<double>& weights) {
    require(n >= 1, "gauss_legendre: n must be positive");
    require(a < b, "gauss_legendre: empty interval");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess.
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        nodes[i] = xm - xl * z;
        nodes[n - 1 - i] = xm + xl * z;
        weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

std::vector<double> simpson_weights(int n, double h) {
    require(n >= 2, "simpson_weights: need at least 2 nodes");
    require(h > 0.0, "simpson_weights: spacing must be positive");
    std::vector<double> w(n, 0.0);
    if (n == 2) {  // trapezoid is all we can do
        w[0] = w[1] = 0.5 * h;
        return w;
    }
    if (n == 3) {
        w[0] = h / 3.0; w[1] = 4.0 * h / 3.0; w[2] = h / 3.0;
        return w;
    }
    int m = n - 1;              // interval count
    int simpson_end = m;        // intervals covered by Simpson pairs
    if (m % 2 != 0) simpson_end = m - 3;  // leave three intervals for the 3/8 rule
    for (int i = 0; i + 2 <= simpson_end; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (simpson_end != m) {
        const int s = simpson_end;
        w[s] += 3.0 * h / 8.0;
        w[s + 1] += 9.0 * h / 8.0;
        w[s + 2] += 9.0 * h / 8.0;
        w[s + 3] += 3.0 * h / 8.0;
    }
    return w;
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double xtol) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    require(std::isfinite(fa) && std::isfinite(fb), "find_root: non-finite endpoint value");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    require(fa * fb < 0.0, "find_root: endpoints do not bracket a root");
    // Keep b the best estimate, c the previous best on the far side.
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int it = 0; it < 200; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 2.220446049250313e-16 * std::abs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic / secant step
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) { c = a; fc = fa; d = b - a; e = d; }
    }
    return b;
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const size_t n = x_.size();
    require(n >= 2 && y_.size() == n, "Pchip: need matching arrays with at least 2 points");
    for (size_t i = 1; i < n; ++i)
        require(x_[i] > x_[i - 1], "Pchip: abscissae must be strictly increasing");
    d_.assign(n, 0.0);
    std::vector<double> slope(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) slope[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    if (n == 2) {
        d_[0] = d_[1] = slope[0];
        return;
    }
    for (size_t i = 1; i + 1 < n; ++i) {
        if (slope[i - 1] * slope[i] <= 0.0) {
            d_[i] = 0.0;
        } else {
            const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
            const double w1 = 2.0 * h1 + h0, w2 = h1 + 2.0 * h0;
            d_[i] = (w1 + w2) / (w1 / slope[i - 1] + w2 / slope[i]);
        }
    }
    auto end_slope = [](double h0, double h1, double s0, double s1) {
        double d0 = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
        if (d0 * s0 <= 0.0) d0 = 0.0;
        else if (s0 * s1 < 0.0 && std::abs(d0) > 3.0 * std::abs(s0)) d0 = 3.0 * s0;
        return d0;
    };
    d_[0] = end_slope(x_[1] - x_[0], x_[2] - x_[1], slope[0], slope[1]);
    d_[n - 1] = end_slope(x_[n - 1] - x_[n - 2], x_[n - 2] - x_[n - 3],
                          slope[n - 2], slope[n - 3]);
}

double Pchip::operator()(double q) const {
    const size_t n = x_.size();
    size_t i = std::upper_bound(x_.begin(), x_.end(), q) - x_.begin();
    if (i == 0) i = 1;
    if (i >= n) i = n - 1;
    --i;  // interval [x_i, x_{i+1}]
    const double h = x_[i + 1] - x_[i];
    const double t = (q - x_[i]) / h;
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
}

double linear_interp(std::span<const double> x, std::span<const double> y, double q) {
    require(x.size() == y.size() && x.size() >= 2, "linear_interp: bad table");
    if (q <= x.front()) return y.front();
    if (q >= x.back()) return y.back();
    size_t i = std::upper_bound(x.begin(), x.end(), q) - x.begin() - 1;
    const double t = (q - x[i]) / (x[i + 1] - x[i]);
    return (1.0 - t) * y[i] + t * y[i + 1];
}

bool cholesky_solve(std::vector<double>& A, std::span<double> b, int n) {
    for (int j = 0; j < n; ++j) {
        double diag = A[static_cast<size_t>(j) * n + j];
        for (int k = 0; k < j; ++k) {
            const double v = A[static_cast<size_t>(j) * n + k];
            diag -= v * v;
        }
        if (!(diag > 0.0)) return false;
        const double l = std::sqrt(diag);
        A[static_cast<size_t>(j) * n + j] = l;
        for (int i = j + 1; i < n; ++i) {
            double s = A[static_cast<size_t>(i) * n + j];
            for (int k = 0; k < j; ++k)
                s -= A[static_cast<size_t>(i) * n + k] * A[static_cast<size_t>(j) * n + k];
            A[static_cast<size_t>(i) * n + j] = s / l;
        }
    }
    for (int i = 0; i < n; ++i) {  // L y = b
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= A[static_cast<size_t>(i) * n + k] * b[k];
        b[i] = s / A[static_cast<size_t>(i) * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {  // L^T x = y
        double s = b[i];
        for (int k = i + 1; k < n; ++k) s -= A[static_cast<size_t>(k) * n + i] * b[k];
        b[i] = s / A[static_cast<size_t>(i) * n + i];
    }
    return true;
}

}
