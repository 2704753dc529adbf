#include <doctest.h>

#include <cmath>

#include "runup/oracles.hpp"

using namespace runup;

TEST_CASE("the mode oracle satisfies the hodograph equations pointwise") {
    // residuals of phi_tau + psi_sigma and psi_tau + sigma phi_sigma + phi by
    // high-order central differences with a tiny step
    const double h = 1e-4;
    for (double k : {0.7, 1.0, 2.3}) {
        for (double sigma : {0.8, 5.0, 17.3}) {
            for (double tau : {0.0, 1.1, 4.7}) {
                auto d_tau = [&](int comp) {
                    auto [p1, q1] = oracle::bessel_mode(k, sigma, tau + h);
                    auto [p2, q2] = oracle::bessel_mode(k, sigma, tau - h);
                    auto [p3, q3] = oracle::bessel_mode(k, sigma, tau + 2 * h);
                    auto [p4, q4] = oracle::bessel_mode(k, sigma, tau - 2 * h);
                    const double a = comp == 0 ? p1 : q1, b = comp == 0 ? p2 : q2;
                    const double c = comp == 0 ? p3 : q3, d = comp == 0 ? p4 : q4;
                    return (8 * (a - b) - (c - d)) / (12 * h);
                };
                auto d_sigma = [&](int comp) {
                    auto [p1, q1] = oracle::bessel_mode(k, sigma + h, tau);
                    auto [p2, q2] = oracle::bessel_mode(k, sigma - h, tau);
                    auto [p3, q3] = oracle::bessel_mode(k, sigma + 2 * h, tau);
                    auto [p4, q4] = oracle::bessel_mode(k, sigma - 2 * h, tau);
                    const double a = comp == 0 ? p1 : q1, b = comp == 0 ? p2 : q2;
                    const double c = comp == 0 ? p3 : q3, d = comp == 0 ? p4 : q4;
                    return (8 * (a - b) - (c - d)) / (12 * h);
                };
                auto [phi, psi] = oracle::bessel_mode(k, sigma, tau);
                const double r1 = d_tau(0) + d_sigma(1);
                const double r2 = d_tau(1) + sigma * d_sigma(0) + phi;
                CHECK(std::abs(r1) < 1e-8);
                CHECK(std::abs(r2) < 1e-7);
            }
        }
    }
}

TEST_CASE("the mode oracle matches frozen Bessel values and the sigma->0 limit") {
    // J1(2) and J0(2) frozen from a 30-digit computation
    auto [phi, psi] = oracle::bessel_mode(1.0, 1.0, M_PI / 2);
    CHECK(phi == doctest::Approx(0.57672480775687339).epsilon(1e-13));
    auto [phi0, psi0] = oracle::bessel_mode(1.0, 1.0, 0.0);
    CHECK(psi0 == doctest::Approx(0.22389077914123567).epsilon(1e-13));
    CHECK(phi0 == 0.0);

    // shoreline limit: phi -> k sin(k tau), psi -> cos(k tau)
    const double k = 1.7, tau = 0.83;
    auto [pa, qa] = oracle::bessel_mode(k, 0.0, tau);
    CHECK(pa == doctest::Approx(k * std::sin(k * tau)).epsilon(1e-14));
    CHECK(qa == doctest::Approx(std::cos(k * tau)).epsilon(1e-14));
    // continuity from sigma > 0
    auto [pb, qb] = oracle::bessel_mode(k, 1e-9, tau);
    CHECK(std::abs(pb - pa) < 1e-8);
    CHECK(std::abs(qb - qa) < 1e-8);
}

TEST_CASE("advection setup encodes the exact solution restriction") {
    oracle::AdvectionSetup adv{0.4, [](double x) { return std::sin(0.3 * x); }};
    Grid g{0.0, 10.0, 101};
    auto ic = adv.manifold_ic(g);
    for (int i = 7; i < g.n; i += 13) {
        const double x = g.node(i);
        // the data on the manifold is u(x, tau(x)) = profile((1-beta) x)
        CHECK(ic.data.at(0, i) == doctest::Approx(std::sin(0.3 * 0.6 * x)).epsilon(1e-14));
        CHECK(ic.manifold.tau(x) == doctest::Approx(0.4 * x).epsilon(1e-14));
        CHECK(adv.exact(x, 0.4 * x) == doctest::Approx(ic.data.at(0, i)).epsilon(1e-14));
    }
}

TEST_CASE("analytic and sampled nonlinear Taylor oracles agree") {
    auto eta0 = [](double x) {
        const double s = (x - 12.0) / 2.5;
        return 0.01 * std::exp(-s * s);
    };
    auto eta0p = [](double x) {
        const double s = (x - 12.0) / 2.5;
        return -0.01 * 2.0 * s / 2.5 * std::exp(-s * s);
    };
    auto eta0pp = [](double x) {
        const double s = (x - 12.0) / 2.5;
        return 0.01 * (4.0 * s * s - 2.0) / (2.5 * 2.5) * std::exp(-s * s);
    };
    auto zero = [](double) { return 0.0; };

    oracle::NonlinearTaylor analytic({eta0, eta0p, eta0pp, zero, zero, zero});
    Grid g{0.0, 40.0, 2001};
    PhysicalIC ic(g, eta0, zero);
    oracle::NonlinearTaylor sampled(ic, 6);

    for (double x : {6.0, 11.0, 12.5, 18.0}) {
        for (double t : {0.05, 0.1}) {
            double ea, ua, es, us;
            analytic.eval(x, t, 2, ea, ua);
            sampled.eval(x, t, 2, es, us);
            CHECK(std::abs(ea - es) < 1e-9);
            CHECK(std::abs(ua - us) < 1e-9);
        }
    }
}

TEST_CASE("the second-order Taylor term improves on the first for smooth data") {
    auto eta0 = [](double x) {
        const double s = (x - 12.0) / 2.5;
        return 0.01 * std::exp(-s * s);
    };
    auto zero = [](double) { return 0.0; };
    Grid g{0.0, 40.0, 2001};
    PhysicalIC ic(g, eta0, zero);
    oracle::NonlinearTaylor taylor(ic, 6);

    // with u0 = 0, eta is even in t to leading order: the t^2 term is real and
    // the order-2 prediction must differ from order-1 by O(t^2), not O(t)
    double e1a, u1a, e2a, u2a, e1b, u1b, e2b, u2b;
    taylor.eval(11.0, 0.1, 1, e1a, u1a);
    taylor.eval(11.0, 0.1, 2, e2a, u2a);
    taylor.eval(11.0, 0.05, 1, e1b, u1b);
    taylor.eval(11.0, 0.05, 2, e2b, u2b);
    const double d_big = std::abs(e2a - e1a);
    const double d_small = std::abs(e2b - e1b);
    CHECK(d_big / d_small == doctest::Approx(4.0).epsilon(0.05));
    // u has no t^2 correction from a pure-elevation start at this order? it does:
    // u2 depends on eta via u1' — just require the terms to be finite and small
    CHECK(std::abs(u2a - u1a) < 1e-3);
}

TEST_CASE("cg_roundtrip oracle passes for gentle combined data") {
    Grid g{0.0, 60.0, 1201};
    auto eta0 = [](double x) {
        const double s = (x - 15.0) / 3.0;
        return 0.02 * std::exp(-s * s);
    };
    auto u0 = [](double x) {
        const double s = (x - 15.0) / 3.0;
        return -0.01 * std::exp(-s * s);
    };
    PhysicalIC ic(g, eta0, u0);
    auto rep = oracle::cg_roundtrip(ic, g);
    INFO(rep.details);
    CHECK(rep.passed);
    CHECK(rep.sup_error <= 1e-10);
}
