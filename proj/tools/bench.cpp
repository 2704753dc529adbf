// Timing comparison of the serial reference kernels against the OpenMP ones.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "runup/kernels.hpp"
#include "runup/stencil.hpp"

using namespace runup;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(int reps, const std::function<void()>& fn) {
    fn();  // warm up
    const auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-22s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main() {
    const int n = 1 << 20;
    const int nk = 512, ns = 4096;
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    std::printf("OpenMP %s, %d threads\n", kernels::openmp_enabled() ? "on" : "off",
                kernels::thread_count());
    std::printf("%-22s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        Grid g(0.0, 100.0, n);
        DerivativeOp op(g, 6);
        std::vector<double> f(n), df(n);
        for (auto& v : f) v = dist(rng);
        const auto st = op.table();
        report("stencil_apply p=6",
               time_ms(20, [&] { kernels::ref::stencil_apply(st, f.data(), df.data()); }),
               time_ms(20, [&] { kernels::stencil_apply(st, f.data(), df.data(),
                                                        kernels::Exec::Parallel); }));
    }
    {
        std::vector<double> dphi(n), dpsi(n), phi(n), psi(n), c(n), damp(n), r1(n), r2(n);
        for (int i = 0; i < n; ++i) {
            dphi[i] = dist(rng); dpsi[i] = dist(rng);
            phi[i] = dist(rng); psi[i] = dist(rng);
            c[i] = std::abs(dist(rng)); damp[i] = 0.0;
        }
        report("swe_rhs_combine",
               time_ms(20, [&] { kernels::ref::swe_rhs_combine(n, dphi.data(), dpsi.data(),
                    phi.data(), psi.data(), c.data(), damp.data(), r1.data(), r2.data()); }),
               time_ms(20, [&] { kernels::swe_rhs_combine(n, dphi.data(), dpsi.data(),
                    phi.data(), psi.data(), c.data(), damp.data(), r1.data(), r2.data(),
                    kernels::Exec::Parallel); }));
    }
    {
        const int m = 2, nn = n / 4;
        std::vector<double> mats(static_cast<size_t>(nn) * m * m), r(2 * nn), y(2 * nn);
        for (int i = 0; i < nn; ++i) {
            double* M = mats.data() + static_cast<size_t>(i) * 4;
            M[0] = 1.0; M[1] = 0.3 * dist(rng); M[2] = 0.3 * dist(rng); M[3] = 1.0;
        }
        for (auto& v : r) v = dist(rng);
        const auto lu = kernels::node_lu_factor(nn, m, mats.data());
        report("node_lu_solve m=2",
               time_ms(20, [&] { kernels::ref::node_lu_solve(lu, r.data(), y.data()); }),
               time_ms(20, [&] { kernels::node_lu_solve(lu, r.data(), y.data(),
                                                        kernels::Exec::Parallel); }));
    }
    {
        std::vector<double> sigma(ns), k(nk), w(nk), a(nk), b(nk), phi(ns), psi(ns);
        for (int j = 0; j < ns; ++j) sigma[j] = 100.0 * j / (ns - 1);
        for (int i = 0; i < nk; ++i) {
            k[i] = 16.0 * (i + 0.5) / nk;
            w[i] = 16.0 / nk * k[i];
            a[i] = dist(rng); b[i] = dist(rng);
        }
        report("hankel_synth",
               time_ms(3, [&] { kernels::ref::hankel_synth(ns, sigma.data(), nk, k.data(),
                    w.data(), a.data(), b.data(), 1.7, phi.data(), psi.data()); }),
               time_ms(3, [&] { kernels::hankel_synth(ns, sigma.data(), nk, k.data(),
                    w.data(), a.data(), b.data(), 1.7, phi.data(), psi.data(),
                    kernels::Exec::Parallel); }));
    }
    {
        std::vector<double> x(n), y(n), out(n);
        for (int i = 0; i < n; ++i) { x[i] = dist(rng); y[i] = dist(rng); }
        report("axpby",
               time_ms(50, [&] { kernels::ref::axpby(n, 1.1, x.data(), -0.7, y.data(), out.data()); }),
               time_ms(50, [&] { kernels::axpby(n, 1.1, x.data(), -0.7, y.data(), out.data(),
                                                kernels::Exec::Parallel); }));
    }
    return 0;
}
