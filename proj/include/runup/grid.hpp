#pragma once
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "runup/common.hpp"

namespace runup {

// Uniform 1-D grid on [x_min, x_max] with n nodes, spacing h = (x_max - x_min)/(n - 1).
struct Grid {
    double x_min = 0.0;
    double x_max = 1.0;
    int n = 2;

    Grid() = default;
    Grid(double lo, double hi, int nodes) : x_min(lo), x_max(hi), n(nodes) {
        require(std::isfinite(lo) && std::isfinite(hi), "Grid: bounds must be finite");
        require(lo < hi, "Grid: x_min must be below x_max");
        require(nodes >= 2, "Grid: need at least 2 nodes");
    }

    double h() const { return (x_max - x_min) / (n - 1); }
    double node(int i) const { return x_min + i * h(); }
    std::vector<double> nodes() const {
        std::vector<double> xs(n);
        for (int i = 0; i < n; ++i) xs[i] = node(i);
        return xs;
    }
    bool operator==(const Grid&) const = default;
};

// Vector-valued function sampled on a uniform grid. Storage is component-major:
// component c lives in values[c*n .. c*n + n), so each component is contiguous.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(const Grid& g, int m)
        : grid_(g), m_(m), values_(static_cast<size_t>(m) * g.n, 0.0) {
        require(m >= 1, "GridFunction: need at least one component");
    }

    // f(x, out) fills the m-vector at x.
    static GridFunction sample(const Grid& g, int m,
                               const std::function<void(double, std::span<double>)>& f) {
        GridFunction u(g, m);
        std::vector<double> buf(m);
        for (int i = 0; i < g.n; ++i) {
            f(g.node(i), buf);
            for (int c = 0; c < m; ++c) u.at(c, i) = buf[c];
        }
        return u;
    }

    static GridFunction sample_scalar(const Grid& g, const std::function<double(double)>& f) {
        GridFunction u(g, 1);
        for (int i = 0; i < g.n; ++i) u.at(0, i) = f(g.node(i));
        return u;
    }

    const Grid& grid() const { return grid_; }
    int m() const { return m_; }
    int n() const { return grid_.n; }

    double& at(int c, int i) { return values_[static_cast<size_t>(c) * grid_.n + i]; }
    double at(int c, int i) const { return values_[static_cast<size_t>(c) * grid_.n + i]; }

    std::span<double> component(int c) {
        return {values_.data() + static_cast<size_t>(c) * grid_.n, static_cast<size_t>(grid_.n)};
    }
    std::span<const double> component(int c) const {
        return {values_.data() + static_cast<size_t>(c) * grid_.n, static_cast<size_t>(grid_.n)};
    }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    // max over nodes of the Euclidean norm of the m-vector
    double sup_norm() const {
        double best = 0.0;
        for (int i = 0; i < grid_.n; ++i) {
            double s = 0.0;
            for (int c = 0; c < m_; ++c) { double v = at(c, i); s += v * v; }
            best = std::max(best, s);
        }
        return std::sqrt(best);
    }

    double max_abs() const {
        double best = 0.0;
        for (double v : values_) best = std::max(best, std::abs(v));
        return best;
    }

    bool all_finite() const {
        for (double v : values_) if (!std::isfinite(v)) return false;
        return true;
    }

private:
    Grid grid_;
    int m_ = 0;
    std::vector<double> values_;
};

inline bool same_shape(const GridFunction& a, const GridFunction& b) {
    return a.grid() == b.grid() && a.m() == b.m();
}

inline bool bitwise_equal(const GridFunction& a, const GridFunction& b) {
    return same_shape(a, b) && a.values() == b.values();
}

inline double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    require(same_shape(a, b), "max_abs_diff: shape mismatch");
    double best = 0.0;
    for (size_t i = 0; i < a.values().size(); ++i)
        best = std::max(best, std::abs(a.values()[i] - b.values()[i]));
    return best;
}

// y += alpha * x
inline void axpy(double alpha, const GridFunction& x, GridFunction& y) {
    require(same_shape(x, y), "axpy: shape mismatch");
    for (size_t i = 0; i < y.values().size(); ++i) y.values()[i] += alpha * x.values()[i];
}

}
