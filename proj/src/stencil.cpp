#include "runup/stencil.hpp"

#include <cmath>
#include <string>

#include "runup/common.hpp"

namespace runup {

std::vector<double> fd_weights(double x0, std::span<const double> xs, int der) {
    const int nn = static_cast<int>(xs.size()) - 1;
    require(nn >= der, "fd_weights: not enough points for the requested derivative");
    // c[j][k]: weight of node j for the k-th derivative
    std::vector<double> c(static_cast<size_t>(nn + 1) * (der + 1), 0.0);
    auto C = [&](int j, int k) -> double& { return c[static_cast<size_t>(j) * (der + 1) + k]; };
    double c1 = 1.0;
    double c4 = xs[0] - x0;
    C(0, 0) = 1.0;
    for (int i = 1; i <= nn; ++i) {
        const int mn = std::min(i, der);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    C(i, k) = c1 * (k * C(i - 1, k - 1) - c5 * C(i - 1, k)) / c2;
                C(i, 0) = -c1 * c5 * C(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k)
                C(j, k) = (c4 * C(j, k) - k * C(j, k - 1)) / c3;
            C(j, 0) = c4 * C(j, 0) / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(nn + 1);
    for (int j = 0; j <= nn; ++j) w[j] = C(j, der);
    return w;
}

DerivativeOp::DerivativeOp(const Grid& grid, int order) : grid_(grid), p_(order) {
    require(order == 2 || order == 4 || order == 6, "stencil order must be 2, 4, or 6");
    require(grid.n >= order + 1, "insufficient grid: need at least order+1 nodes");
    const int width = p_ + 1;
    const int half = p_ / 2;
    const double h = grid_.h();

    // offsets in units of h; divide by h once at the end
    std::vector<double> offs(width);
    for (int j = 0; j < width; ++j) offs[j] = static_cast<double>(j - half);
    interior_ = fd_weights(0.0, offs, 1);
    for (double& w : interior_) w /= h;

    left_.assign(static_cast<size_t>(half) * width, 0.0);
    right_.assign(static_cast<size_t>(half) * width, 0.0);
    for (int r = 0; r < half; ++r) {
        // node r reads nodes 0..p; node n-half+r reads nodes n-1-p..n-1
        for (int j = 0; j < width; ++j) offs[j] = static_cast<double>(j);
        auto wl = fd_weights(static_cast<double>(r), offs, 1);
        for (int j = 0; j < width; ++j) left_[static_cast<size_t>(r) * width + j] = wl[j] / h;
        auto wr = fd_weights(static_cast<double>(r + half + 1), offs, 1);
        for (int j = 0; j < width; ++j) right_[static_cast<size_t>(r) * width + j] = wr[j] / h;
    }
}

kernels::StencilTable DerivativeOp::table() const {
    kernels::StencilTable st;
    st.n = grid_.n;
    st.width = p_ + 1;
    st.half = p_ / 2;
    st.nboundary = p_ / 2;
    st.interior = interior_.data();
    st.left = left_.data();
    st.right = right_.data();
    return st;
}

void DerivativeOp::apply(std::span<const double> f, std::span<double> df, kernels::Exec e) const {
    require(static_cast<int>(f.size()) == grid_.n && f.size() == df.size(),
            "order/grid mismatch: stencil length differs from data length");
    kernels::stencil_apply(table(), f.data(), df.data(), e);
}

GridFunction DerivativeOp::apply(const GridFunction& f, kernels::Exec e) const {
    require(f.grid() == grid_, "order/grid mismatch: operand sampled on a different grid");
    GridFunction out(f.grid(), f.m());
    for (int c = 0; c < f.m(); ++c) apply(f.component(c), out.component(c), e);
    return out;
}

GridFunction derivative(const GridFunction& f, int p, kernels::Exec e) {
    DerivativeOp op(f.grid(), p);
    return op.apply(f, e);
}

}
