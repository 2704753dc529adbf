#include "runup/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "runup/bessel.hpp"
#include "runup/common.hpp"

namespace runup::kernels {

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

Exec default_exec() {
    static const Exec e = [] {
        const char* env = std::getenv("RUNUP_EXEC");
        if (env && std::string(env) == "serial") return Exec::Serial;
        return openmp_enabled() ? Exec::Parallel : Exec::Serial;
    }();
    return e;
}

// ---------------------------------------------------------------- reference

namespace ref {

static inline double stencil_row(const StencilTable& st, const double* f, int i) {
    if (i < st.nboundary) {
        const double* w = st.left + static_cast<size_t>(i) * st.width;
        double s = 0.0;
        for (int j = 0; j < st.width; ++j) s += w[j] * f[j];
        return s;
    }
    if (i >= st.n - st.nboundary) {
        const int r = i - (st.n - st.nboundary);
        const double* w = st.right + static_cast<size_t>(r) * st.width;
        const double* fb = f + (st.n - st.width);
        double s = 0.0;
        for (int j = 0; j < st.width; ++j) s += w[j] * fb[j];
        return s;
    }
    const double* fw = f + (i - st.half);
    double s = 0.0;
    for (int j = 0; j < st.width; ++j) s += st.interior[j] * fw[j];
    return s;
}

void stencil_apply(const StencilTable& st, const double* f, double* df) {
    for (int i = 0; i < st.n; ++i) df[i] = stencil_row(st, f, i);
}

void matfield_apply(int n, int m, const double* M, const double* a,
                    const double* N, const double* b, double* out) {
    for (int i = 0; i < n; ++i) {
        for (int r = 0; r < m; ++r) {
            double s = 0.0;
            const double* Mi = M + (static_cast<size_t>(i) * m + r) * m;
            for (int c = 0; c < m; ++c) s += Mi[c] * a[static_cast<size_t>(c) * n + i];
            if (N) {
                const double* Ni = N + (static_cast<size_t>(i) * m + r) * m;
                for (int c = 0; c < m; ++c) s += Ni[c] * b[static_cast<size_t>(c) * n + i];
            }
            out[static_cast<size_t>(r) * n + i] = s;
        }
    }
}

static inline void lu_solve_one(const double* lu, const int* piv, int m,
                                const double* r, int stride_in, double* y, int stride_out,
                                double* tmp) {
    for (int i = 0; i < m; ++i) tmp[i] = r[static_cast<size_t>(piv[i]) * stride_in];
    for (int i = 1; i < m; ++i)
        for (int j = 0; j < i; ++j) tmp[i] -= lu[static_cast<size_t>(i) * m + j] * tmp[j];
    for (int i = m - 1; i >= 0; --i) {
        for (int j = i + 1; j < m; ++j) tmp[i] -= lu[static_cast<size_t>(i) * m + j] * tmp[j];
        tmp[i] /= lu[static_cast<size_t>(i) * m + i];
    }
    for (int i = 0; i < m; ++i) y[static_cast<size_t>(i) * stride_out] = tmp[i];
}

void node_lu_solve(const NodeLu& lu, const double* r, double* y) {
    double tmp[16];
    for (int i = 0; i < lu.n; ++i)
        lu_solve_one(lu.lu.data() + static_cast<size_t>(i) * lu.m * lu.m,
                     lu.piv.data() + static_cast<size_t>(i) * lu.m, lu.m,
                     r + i, lu.n, y + i, lu.n, tmp);
}

void axpby(int len, double aa, const double* x, double bb, const double* y, double* out) {
    for (int i = 0; i < len; ++i) out[i] = aa * x[i] + bb * y[i];
}

void swe_rhs_combine(int n, const double* dphi, const double* dpsi,
                     const double* phi, const double* psi,
                     const double* c, const double* damp,
                     double* rphi, double* rpsi) {
    for (int i = 0; i < n; ++i) {
        rphi[i] = -dpsi[i] - damp[i] * phi[i];
        rpsi[i] = -c[i] * dphi[i] - phi[i] - damp[i] * psi[i];
    }
}

void hankel_project_j0(int nk, const double* k, int ns, const double* sigma,
                       const double* wq, const double* f, double scale, double* coeff) {
    for (int i = 0; i < nk; ++i) {
        const double twok = 2.0 * k[i];
        double s = 0.0;
        for (int j = 0; j < ns; ++j)
            s += wq[j] * f[j] * special::j0(twok * std::sqrt(sigma[j]));
        coeff[i] = scale * s;
    }
}

void hankel_project_j1(int nk, const double* k, int ns, const double* sigma,
                       const double* wq, const double* f, double scale, double* coeff) {
    for (int i = 0; i < nk; ++i) {
        const double twok = 2.0 * k[i];
        double s = 0.0;
        for (int j = 0; j < ns; ++j) {
            const double rs = std::sqrt(sigma[j]);
            s += wq[j] * f[j] * rs * special::j1(twok * rs);
        }
        coeff[i] = scale * s;
    }
}

static inline void synth_node(int nk, const double* k, const double* w,
                              const double* a, const double* b,
                              const double* ck, const double* sk,
                              double sigma, double* phi, double* psi) {
    const double rs = std::sqrt(sigma);
    double p = 0.0, q = 0.0;
    for (int i = 0; i < nk; ++i) {
        const double arg = 2.0 * k[i] * rs;
        const double m0 = special::j0(arg);
        const double m1 = 2.0 * k[i] * special::j1_over_x(arg);  // J1(arg)/rs
        q += w[i] * (a[i] * ck[i] - b[i] * sk[i]) * m0;
        p += w[i] * (a[i] * sk[i] + b[i] * ck[i]) * m1;
    }
    *phi = p;
    *psi = q;
}

void hankel_synth(int ns, const double* sigma, int nk, const double* k, const double* w,
                  const double* a, const double* b, double tau,
                  double* phi, double* psi) {
    std::vector<double> ck(nk), sk(nk);
    for (int i = 0; i < nk; ++i) {
        ck[i] = std::cos(k[i] * tau);
        sk[i] = std::sin(k[i] * tau);
    }
    for (int j = 0; j < ns; ++j)
        synth_node(nk, k, w, a, b, ck.data(), sk.data(), sigma[j], &phi[j], &psi[j]);
}

}  // namespace ref

// ---------------------------------------------------------------- dispatch

NodeLu node_lu_factor(int n, int m, const double* mats) {
    require(m >= 1 && m <= 16, "node_lu_factor: matrix size out of range");
    NodeLu out;
    out.n = n;
    out.m = m;
    out.lu.assign(static_cast<size_t>(n) * m * m, 0.0);
    out.piv.assign(static_cast<size_t>(n) * m, 0);
    out.det.assign(n, 0.0);
    for (int node = 0; node < n; ++node) {
        double* lu = out.lu.data() + static_cast<size_t>(node) * m * m;
        int* piv = out.piv.data() + static_cast<size_t>(node) * m;
        std::memcpy(lu, mats + static_cast<size_t>(node) * m * m, sizeof(double) * m * m);
        for (int i = 0; i < m; ++i) piv[i] = i;
        double det = 1.0;
        for (int col = 0; col < m; ++col) {
            int p = col;
            for (int r = col + 1; r < m; ++r)
                if (std::abs(lu[static_cast<size_t>(r) * m + col]) >
                    std::abs(lu[static_cast<size_t>(p) * m + col])) p = r;
            if (p != col) {
                for (int c = 0; c < m; ++c)
                    std::swap(lu[static_cast<size_t>(p) * m + c], lu[static_cast<size_t>(col) * m + c]);
                std::swap(piv[p], piv[col]);
                det = -det;
            }
            const double pivot = lu[static_cast<size_t>(col) * m + col];
            det *= pivot;
            if (pivot == 0.0) continue;  // singular; caller inspects det
            for (int r = col + 1; r < m; ++r) {
                const double f = lu[static_cast<size_t>(r) * m + col] / pivot;
                lu[static_cast<size_t>(r) * m + col] = f;
                for (int c = col + 1; c < m; ++c)
                    lu[static_cast<size_t>(r) * m + c] -= f * lu[static_cast<size_t>(col) * m + c];
            }
        }
        out.det[node] = det;
    }
    return out;
}

#ifdef _OPENMP
#define RUNUP_PARALLEL_FOR _Pragma("omp parallel for schedule(static)")
#else
#define RUNUP_PARALLEL_FOR
#endif

void stencil_apply(const StencilTable& st, const double* f, double* df, Exec e) {
    if (e == Exec::Serial || !openmp_enabled()) {
        ref::stencil_apply(st, f, df);
        return;
    }
    RUNUP_PARALLEL_FOR
    for (int i = 0; i < st.n; ++i) df[i] = ref::stencil_row(st, f, i);
}

void matfield_apply(int n, int m, const double* M, const double* a,
                    const double* N, const double* b, double* out, Exec e) {
    if (e == Exec::Serial || !openmp_enabled()) {
        ref::matfield_apply(n, m, M, a, N, b, out);
        return;
    }
    RUNUP_PARALLEL_FOR
    for (int i = 0; i < n; ++i) {
        for (int r = 0; r < m; ++r) {
            double s = 0.0;
            const double* Mi = M + (static_cast<size_t>(i) * m + r) * m;
            for (int c = 0; c < m; ++c) s += Mi[c] * a[static_cast<size_t>(c) * n + i];
            if (N) {
                const double* Ni = N + (static_cast<size_t>(i) * m + r) * m;
                for (int c = 0; c < m; ++c) s += Ni[c] * b[static_cast<size_t>(c) * n + i];
            }
            out[static_cast<size_t>(r) * n + i] = s;
        }
    }
}

void node_lu_solve(const NodeLu& lu, const double* r, double* y, Exec e) {
    if (e == Exec::Serial || !openmp_enabled()) {
        ref::node_lu_solve(lu, r, y);
        return;
    }
    RUNUP_PARALLEL_FOR
    for (int i = 0; i < lu.n; ++i) {
        double tmp[16];
        ref::lu_solve_one(lu.lu.data() + static_cast<size_t>(i) * lu.m * lu.m,
                          lu.piv.data() + static_cast<size_t>(i) * lu.m, lu.m,
                          r + i, lu.n, y + i, lu.n, tmp);
    }
}

void axpby(int len, double aa, const double* x, double bb, const double* y, double* out, Exec e) {
    if (e == Exec::Serial || !openmp_enabled()) {
        ref::axpby(len, aa, x, bb, y, out);
        return;
    }
    RUNUP_PARALLEL_FOR
    for (int i = 0; i < len; ++i) out[i] = aa * x[i] + bb * y[i];
}

void swe_rhs_combine(int n, const double* dphi, const double* dpsi,
                     const double* phi, const double* psi,
                     const double* c, const double* damp,
                     double* rphi, double* rpsi, Exec e) {
    if (e == Exec::Serial || !openmp_enabled()) {
        ref::swe_rhs_combine(n, dphi, dpsi, phi, psi, c, damp, rphi, rpsi);
        return;
    }
    RUNUP_PARALLEL_FOR
    for (int i = 0; i < n; ++i) {
        rphi[i] = -dpsi[i] - damp[i] * phi[i];
        rpsi[i] = -c[i] * dphi[i] - phi[i] - damp[i] * psi[i];
    }
}

void hankel_project_j0(int nk, const double* k, int ns, const double* sigma,
                       const double* wq, const double* f, double scale, double* coeff, Exec e) {
    if (e == Exec::Serial || !openmp_enabled()) {
        ref::hankel_project_j0(nk, k, ns, sigma, wq, f, scale, coeff);
        return;
    }
    RUNUP_PARALLEL_FOR
    for (int i = 0; i < nk; ++i) {
        const double twok = 2.0 * k[i];
        double s = 0.0;
        for (int j = 0; j < ns; ++j)
            s += wq[j] * f[j] * special::j0(twok * std::sqrt(sigma[j]));
        coeff[i] = scale * s;
    }
}

void hankel_project_j1(int nk, const double* k, int ns, const double* sigma,
                       const double* wq, const double* f, double scale, double* coeff, Exec e) {
    if (e == Exec::Serial || !openmp_enabled()) {
        ref::hankel_project_j1(nk, k, ns, sigma, wq, f, scale, coeff);
        return;
    }
    RUNUP_PARALLEL_FOR
    for (int i = 0; i < nk; ++i) {
        const double twok = 2.0 * k[i];
        double s = 0.0;
        for (int j = 0; j < ns; ++j) {
            const double rs = std::sqrt(sigma[j]);
            s += wq[j] * f[j] * rs * special::j1(twok * rs);
        }
        coeff[i] = scale * s;
    }
}

void hankel_synth(int ns, const double* sigma, int nk, const double* k, const double* w,
                  const double* a, const double* b, double tau,
                  double* phi, double* psi, Exec e) {
    if (e == Exec::Serial || !openmp_enabled()) {
        ref::hankel_synth(ns, sigma, nk, k, w, a, b, tau, phi, psi);
        return;
    }
    std::vector<double> ck(nk), sk(nk);
    for (int i = 0; i < nk; ++i) {
        ck[i] = std::cos(k[i] * tau);
        sk[i] = std::sin(k[i] * tau);
    }
    RUNUP_PARALLEL_FOR
    for (int j = 0; j < ns; ++j)
        ref::synth_node(nk, k, w, a, b, ck.data(), sk.data(), sigma[j], &phi[j], &psi[j]);
}

void for_each_index(int n, Exec e, const std::function<void(int)>& body) {
    if (e == Exec::Serial || !openmp_enabled()) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr first;
    std::mutex mtx;
    std::atomic<bool> failed{false};
    RUNUP_PARALLEL_FOR
    for (int i = 0; i < n; ++i) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(mtx);
            if (!first) first = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
        }
    }
    if (first) std::rethrow_exception(first);
}

}
