#include "runup/projection.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "runup/common.hpp"
#include "runup/stencil.hpp"

namespace runup {

namespace {

// Everything projection_step needs repeatedly, built once per grid.
struct ProjectionContext {
    const ManifoldIC& ic;
    ProjectionOptions opt;
    DerivativeOp ddx;
    std::vector<double> A1, A0;   // node-major m*m samples
    std::vector<double> taup;     // tau'(x_i)
    kernels::NodeLu lu;           // factors of I - tau' A1

    ProjectionContext(const ManifoldIC& ic_, const ProjectionOptions& o)
        : ic(ic_), opt(o), ddx(ic_.data.grid(), o.stencil_order) {
        const Grid& g = ic.data.grid();
        const int m = ic.system.m;
        A1 = ic.system.a1.sample(g);
        A0 = ic.system.a0.sample(g);
        taup.resize(g.n);
        std::vector<double> M(static_cast<size_t>(g.n) * m * m);
        for (int i = 0; i < g.n; ++i) {
            taup[i] = ic.manifold.tau_prime(g.node(i));
            double* Mi = M.data() + static_cast<size_t>(i) * m * m;
            const double* A1i = A1.data() + static_cast<size_t>(i) * m * m;
            for (int e = 0; e < m * m; ++e) Mi[e] = -taup[i] * A1i[e];
            for (int r = 0; r < m; ++r) Mi[static_cast<size_t>(r) * m + r] += 1.0;
        }
        lu = kernels::node_lu_factor(g.n, m, M.data());
        // determinant gate uses a scale ~ ||M||^m so the test is unit-free
        for (int i = 0; i < g.n; ++i) {
            const double* Mi = M.data() + static_cast<size_t>(i) * m * m;
            double frob = 0.0;
            for (int e = 0; e < m * m; ++e) frob += Mi[e] * Mi[e];
            const double scale = std::pow(std::max(1.0, std::sqrt(frob)), m);
            if (std::abs(lu.det[i]) <= opt.singular_tol * scale) {
                std::ostringstream os;
                os << "characteristic point at x = " << g.node(i)
                   << ": |det(I - tau' A1)| = " << std::abs(lu.det[i]);
                throw std::invalid_argument(os.str());
            }
        }
    }

    // h -> (I - tau' A1)^{-1} (A1 h_x + A0 h)
    GridFunction step(const GridFunction& h) const {
        const Grid& g = ic.data.grid();
        require(h.grid() == g, "order/grid mismatch: operand sampled on a different grid");
        require(h.m() == ic.system.m, "projection_step: component count differs from system order");
        GridFunction dh(g, h.m());
        for (int c = 0; c < h.m(); ++c) ddx.apply(h.component(c), dh.component(c), opt.exec);
        GridFunction rhs(g, h.m());
        kernels::matfield_apply(g.n, h.m(), A1.data(), dh.values().data(),
                                A0.data(), h.values().data(), rhs.values().data(), opt.exec);
        GridFunction out(g, h.m());
        kernels::node_lu_solve(lu, rhs.values().data(), out.values().data(), opt.exec);
        return out;
    }
};

// Incremental projection driver shared by project() and choose_order().
struct TaylorAccumulator {
    const ProjectionContext& ctx;
    GridFunction power;    // K^k g
    GridFunction sum;      // running projected data
    std::vector<GridFunction> terms;
    std::vector<double> norms;
    std::vector<double> tau, factor;  // tau(x_i) and tau^k/k! per node
    int k = 0;

    explicit TaylorAccumulator(const ProjectionContext& c)
        : ctx(c), power(c.ic.data), sum(c.ic.data) {
        const Grid& g = ctx.ic.data.grid();
        tau.resize(g.n);
        factor.assign(g.n, 1.0);
        for (int i = 0; i < g.n; ++i) tau[i] = ctx.ic.manifold.tau(g.node(i));
        terms.push_back(ctx.ic.data);  // k = 0 term is g itself
        norms.push_back(terms.back().sup_norm());
        for (size_t i = 0; i < sum.values().size(); ++i) sum.values()[i] = terms[0].values()[i];
    }

    // Advance to the next Taylor term and return it (without adding to sum).
    GridFunction next_term() {
        power = ctx.step(power);
        ++k;
        for (int i = 0; i < static_cast<int>(factor.size()); ++i)
            factor[i] *= tau[i] / static_cast<double>(k);
        GridFunction term(power.grid(), power.m());
        const int n = power.n();
        for (int c = 0; c < power.m(); ++c)
            for (int i = 0; i < n; ++i) term.at(c, i) = factor[i] * power.at(c, i);
        return term;
    }

    void accept(GridFunction term) {
        for (size_t i = 0; i < sum.values().size(); ++i) sum.values()[i] += term.values()[i];
        norms.push_back(term.sup_norm());
        terms.push_back(std::move(term));
    }
};

ProjectionResult finish(TaylorAccumulator& acc, double next_norm) {
    ProjectionResult res;
    res.g_proj = acc.sum;
    res.order = static_cast<int>(acc.terms.size()) - 1;
    res.terms = std::move(acc.terms);
    res.term_sup_norms = std::move(acc.norms);
    res.next_term_estimate = next_norm;
    std::vector<double> seq = res.term_sup_norms;
    seq.push_back(next_norm);
    int rising = 0;
    for (size_t i = 1; i < seq.size(); ++i) {
        rising = (seq[i] > seq[i - 1]) ? rising + 1 : 0;
        if (rising >= 3) res.diverging = true;
    }
    if (res.diverging)
        res.warnings.push_back("Taylor terms are growing; manifold data may be too rough "
                               "or the expansion point too far");
    return res;
}

void warn_stencil_budget(ProjectionResult& res, int order, int p) {
    if (p < 2 * (order + 1)) {
        std::ostringstream os;
        os << "stencil order " << p << " is low for projection order " << order
           << "; derivative error may dominate (suggest p >= " << 2 * (order + 1) << ")";
        res.warnings.push_back(os.str());
    }
}

}  // namespace

GridFunction projection_step(const ManifoldIC& ic, const GridFunction& h,
                             const ProjectionOptions& opt) {
    ProjectionContext ctx(ic, opt);
    return ctx.step(h);
}

ProjectionResult project(const ManifoldIC& ic, int order, const ProjectionOptions& opt) {
    require(order >= 0, "project: order must be non-negative");
    ProjectionContext ctx(ic, opt);
    TaylorAccumulator acc(ctx);
    for (int k = 1; k <= order; ++k) acc.accept(acc.next_term());
    const double next = acc.next_term().sup_norm();
    ProjectionResult res = finish(acc, next);
    warn_stencil_budget(res, order, opt.stencil_order);
    return res;
}

std::pair<int, ProjectionResult> choose_order(const ManifoldIC& ic, double eps,
                                              int j_max, const ProjectionOptions& opt) {
    require(eps > 0.0, "choose_order: eps must be positive");
    require(j_max >= 0, "choose_order: j_max must be non-negative");
    ProjectionContext ctx(ic, opt);
    TaylorAccumulator acc(ctx);
    GridFunction pending = acc.next_term();  // candidate order-1 term
    for (int j = 0; j <= j_max; ++j) {
        const double next = pending.sup_norm();
        if (next < eps) {
            ProjectionResult res = finish(acc, next);
            res.converged = true;
            warn_stencil_budget(res, j, opt.stencil_order);
            return {j, res};
        }
        if (j == j_max) break;
        acc.accept(std::move(pending));
        pending = acc.next_term();
    }
    const double next = pending.sup_norm();
    ProjectionResult res = finish(acc, next);
    res.converged = false;
    std::ostringstream os;
    os << "projection did not reach eps = " << eps << " by order " << j_max
       << " (next term " << next << ")";
    res.warnings.push_back(os.str());
    warn_stencil_budget(res, j_max, opt.stencil_order);
    return {j_max, res};
}

}
