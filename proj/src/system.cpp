#include "runup/system.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "runup/common.hpp"
#include "runup/numerics.hpp"
#include "runup/stencil.hpp"

namespace runup {

MatrixField::MatrixField(int m, Fn f) : m_(m), fn_(std::move(f)) {
    require(m >= 1, "MatrixField: order must be positive");
    require(static_cast<bool>(fn_), "MatrixField: empty evaluator");
}

MatrixField MatrixField::constant(int m, std::vector<double> entries) {
    require(static_cast<int>(entries.size()) == m * m, "MatrixField::constant: wrong entry count");
    auto data = std::make_shared<std::vector<double>>(std::move(entries));
    return MatrixField(m, [data](double, std::span<double> out) {
        for (size_t i = 0; i < data->size(); ++i) out[i] = (*data)[i];
    });
}

MatrixField MatrixField::zero(int m) {
    return MatrixField(m, [](double, std::span<double> out) {
        for (auto& v : out) v = 0.0;
    });
}

MatrixField MatrixField::scalar(std::function<double(double)> f) {
    return MatrixField(1, [f = std::move(f)](double x, std::span<double> out) { out[0] = f(x); });
}

void MatrixField::eval(double x, std::span<double> out) const {
    require(static_cast<int>(out.size()) == m_ * m_, "MatrixField::eval: bad output span");
    fn_(x, out);
}

std::vector<double> MatrixField::sample(const Grid& g) const {
    std::vector<double> out(static_cast<size_t>(g.n) * m_ * m_);
    for (int i = 0; i < g.n; ++i)
        eval(g.node(i), {out.data() + static_cast<size_t>(i) * m_ * m_,
                         static_cast<size_t>(m_) * m_});
    return out;
}

HyperbolicSystem1D::HyperbolicSystem1D(MatrixField a1_, MatrixField a0_)
    : m(a1_.m()), a1(std::move(a1_)), a0(std::move(a0_)) {
    require(a1.m() == a0.m(), "HyperbolicSystem1D: coefficient orders differ");
}

Manifold Manifold::zero() {
    return {[](double) { return 0.0; }, [](double) { return 0.0; }};
}

Manifold Manifold::linear(double beta) {
    return {[beta](double x) { return beta * x; }, [beta](double) { return beta; }};
}

Manifold Manifold::from_samples(const Grid& g, std::span<const double> tau_values,
                                int stencil_order) {
    require(static_cast<int>(tau_values.size()) == g.n,
            "order/grid mismatch: tau sample count differs from grid size");
    DerivativeOp op(g, stencil_order);
    std::vector<double> tp(g.n);
    op.apply(tau_values, tp);
    auto tau_i = std::make_shared<Pchip>(g.nodes(), std::vector<double>(tau_values.begin(), tau_values.end()));
    auto tp_i = std::make_shared<Pchip>(g.nodes(), tp);
    return {[tau_i](double x) { return (*tau_i)(x); },
            [tp_i](double x) { return (*tp_i)(x); }};
}

GridFunction apply_D(const HyperbolicSystem1D& sys, const GridFunction& u, int p,
                     kernels::Exec e) {
    require(u.m() == sys.m, "apply_D: component count differs from system order");
    GridFunction du = derivative(u, p, e);
    const Grid& g = u.grid();
    const auto A1 = sys.a1.sample(g);
    const auto A0 = sys.a0.sample(g);
    GridFunction out(g, sys.m);
    kernels::matfield_apply(g.n, sys.m, A1.data(), du.values().data(),
                            A0.data(), u.values().data(), out.values().data(), e);
    return out;
}

void characteristic_matrix(const HyperbolicSystem1D& sys, const Manifold& mf,
                           double x, std::span<double> out) {
    const int m = sys.m;
    require(static_cast<int>(out.size()) == m * m, "characteristic_matrix: bad output span");
    sys.a1.eval(x, out);
    const double tp = mf.tau_prime(x);
    for (int i = 0; i < m * m; ++i) out[i] = -tp * out[i];
    for (int i = 0; i < m; ++i) out[static_cast<size_t>(i) * m + i] += 1.0;
}

static double det_small(std::vector<double> a, int m) {
    double det = 1.0;
    for (int col = 0; col < m; ++col) {
        int p = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(a[static_cast<size_t>(r) * m + col]) >
                std::abs(a[static_cast<size_t>(p) * m + col])) p = r;
        if (p != col) {
            for (int c = 0; c < m; ++c)
                std::swap(a[static_cast<size_t>(p) * m + c], a[static_cast<size_t>(col) * m + c]);
            det = -det;
        }
        const double pivot = a[static_cast<size_t>(col) * m + col];
        det *= pivot;
        if (pivot == 0.0) return 0.0;
        for (int r = col + 1; r < m; ++r) {
            const double f = a[static_cast<size_t>(r) * m + col] / pivot;
            for (int c = col + 1; c < m; ++c)
                a[static_cast<size_t>(r) * m + c] -= f * a[static_cast<size_t>(col) * m + c];
        }
    }
    return det;
}

double noncharacteristic_margin(const HyperbolicSystem1D& sys, const Manifold& mf,
                                const Grid& g) {
    const int m = sys.m;
    std::vector<double> M(static_cast<size_t>(m) * m);
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.n; ++i) {
        characteristic_matrix(sys, mf, g.node(i), M);
        margin = std::min(margin, std::abs(det_small(M, m)));
    }
    return margin;
}

void check_hyperbolic(const HyperbolicSystem1D& sys, const Grid& g, double tol) {
    const int m = sys.m;
    if (m == 1) return;  // scalar coefficients are trivially real
    std::vector<double> A(static_cast<size_t>(m) * m);
    for (int i = 0; i < g.n; ++i) {
        const double x = g.node(i);
        sys.a1.eval(x, A);
        double scale = 0.0;
        for (double v : A) scale = std::max(scale, std::abs(v));
        scale = std::max(scale, 1.0);
        if (m == 2) {
            // eigenvalues real iff (a-d)^2 + 4bc >= 0
            const double disc = (A[0] - A[3]) * (A[0] - A[3]) + 4.0 * A[1] * A[2];
            if (disc < -tol * scale * scale) {
                std::ostringstream os;
                os << "system not hyperbolic: complex characteristic speeds at x = " << x;
                throw std::invalid_argument(os.str());
            }
            continue;
        }
        Eigen::MatrixXd E(m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) E(r, c) = A[static_cast<size_t>(r) * m + c];
        Eigen::EigenSolver<Eigen::MatrixXd> es(E);
        double spread = 0.0;
        for (int r = 0; r < m; ++r) {
            if (std::abs(es.eigenvalues()[r].imag()) > tol * scale) {
                std::ostringstream os;
                os << "system not hyperbolic: complex characteristic speeds at x = " << x;
                throw std::invalid_argument(os.str());
            }
            for (int c = 0; c < m; ++c)
                spread = std::max(spread, std::abs(es.eigenvalues()[r].real() -
                                                   es.eigenvalues()[c].real()));
        }
        // An eigenbasis is required away from multiple eigenvalues; degenerate
        // coincident speeds (e.g. a dry shoreline node) are tolerated.
        Eigen::MatrixXcd V = es.eigenvectors();
        const double cond_gate = 1.0 / (tol * 1e4);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
        const double cond = svd.singularValues()(0) / svd.singularValues()(m - 1);
        if (cond > cond_gate && spread > tol * scale) {
            std::ostringstream os;
            os << "system not hyperbolic: defective characteristic structure at x = " << x;
            throw std::invalid_argument(os.str());
        }
    }
}

ManifoldIC::ManifoldIC(HyperbolicSystem1D sys, Manifold mf, GridFunction g)
    : system(std::move(sys)), manifold(std::move(mf)), data(std::move(g)) {
    require(data.m() == system.m, "ManifoldIC: data components differ from system order");
    check_hyperbolic(system, data.grid());
    margin = noncharacteristic_margin(system, manifold, data.grid());
    // data within 1e-10 of a characteristic manifold cannot be projected stably
    if (!(margin > 1e-10)) {
        std::ostringstream os;
        os << "characteristic manifold: det(I - tau' A1) vanishes on the data grid (margin "
           << margin << ")";
        throw std::invalid_argument(os.str());
    }
}

}
