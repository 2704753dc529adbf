#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "runup/numerics.hpp"

using namespace runup;

TEST_CASE("Gauss-Legendre quadrature integrates polynomials exactly") {
    std::vector<double> x, w;
    gauss_legendre(12, 0.0, 1.0, x, w);
    REQUIRE(x.size() == 12);

    // degree <= 2n-1 = 23 is exact; check x^5 and x^23
    double s5 = 0.0, s23 = 0.0, s0 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s0 += w[i];
        s5 += w[i] * std::pow(x[i], 5);
        s23 += w[i] * std::pow(x[i], 23);
    }
    CHECK(s0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s5 == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(s23 == doctest::Approx(1.0 / 24.0).epsilon(1e-13));
}

TEST_CASE("Gauss-Legendre handles general intervals and smooth integrands") {
    std::vector<double> x, w;
    gauss_legendre(20, -1.0, 3.0, x, w);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::exp(x[i]);
    CHECK(s == doctest::Approx(std::exp(3.0) - std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("Simpson weights integrate cubics exactly for even and odd interval counts") {
    auto integrate = [](int n, double a, double b, auto f) {
        const double h = (b - a) / (n - 1);
        auto w = simpson_weights(n, h);
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += w[i] * f(a + i * h);
        return s;
    };
    auto cubic = [](double t) { return 2.0 + t - 3.0 * t * t + 0.5 * t * t * t; };
    const double exact = 2.0 * 2.0 + 2.0 - 8.0 + 0.5 * 4.0;  // int_0^2
    CHECK(integrate(11, 0.0, 2.0, cubic) == doctest::Approx(exact).epsilon(1e-14));
    CHECK(integrate(12, 0.0, 2.0, cubic) == doctest::Approx(exact).epsilon(1e-14));

    // fourth-order accuracy on sin
    auto s1 = integrate(51, 0.0, 3.0, [](double t) { return std::sin(t); });
    auto s2 = integrate(101, 0.0, 3.0, [](double t) { return std::sin(t); });
    const double ref = 1.0 - std::cos(3.0);
    const double order = std::log2(std::abs(s1 - ref) / std::abs(s2 - ref));
    CHECK(order > 3.5);
}

TEST_CASE("Brent root finder") {
    const double r = find_root([](double t) { return std::cos(t); }, 0.0, 3.0, 1e-15);
    CHECK(r == doctest::Approx(M_PI / 2).epsilon(1e-14));

    const double q = find_root([](double t) { return t * t * t - 2.0; }, 0.0, 2.0, 1e-15);
    CHECK(q == doctest::Approx(std::cbrt(2.0)).epsilon(1e-14));

    CHECK_THROWS_AS(find_root([](double t) { return t + 10.0; }, 0.0, 1.0, 1e-12),
                    std::invalid_argument);
}

TEST_CASE("pchip interpolation reproduces nodes and preserves monotonicity") {
    std::vector<double> x = {0.0, 0.5, 1.2, 2.0, 3.5, 5.0};
    std::vector<double> y = {0.0, 0.1, 0.9, 1.0, 4.0, 4.1};
    Pchip p(x, y);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(p(x[i]) == doctest::Approx(y[i]).epsilon(1e-15));

    // monotone data -> monotone interpolant
    double prev = p(0.0);
    for (double t = 0.0; t <= 5.0; t += 0.01) {
        const double v = p(t);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("pchip is exact on linear data including extrapolation") {
    std::vector<double> x = {0.0, 1.0, 2.5, 4.0};
    std::vector<double> y;
    for (double xi : x) y.push_back(3.0 * xi - 1.0);
    Pchip p(x, y);
    for (double t : {-0.5, 0.3, 1.7, 3.9, 4.4})
        CHECK(p(t) == doctest::Approx(3.0 * t - 1.0).epsilon(1e-13));
}

TEST_CASE("cubic4 reproduces cubic polynomials through four points") {
    auto f = [](double t) { return 1.0 - 2.0 * t + 0.3 * t * t + 0.7 * t * t * t; };
    // samples at s = -1, 0, 1, 2
    for (double s : {-1.0, -0.3, 0.0, 0.42, 1.0, 1.6, 2.0}) {
        const double v = cubic4(f(-1.0), f(0.0), f(1.0), f(2.0), s);
        CHECK(v == doctest::Approx(f(s)).epsilon(1e-14));
    }
}

TEST_CASE("linear_interp clamps outside the table") {
    std::vector<double> x = {0.0, 1.0, 2.0};
    std::vector<double> y = {5.0, 7.0, 3.0};
    CHECK(linear_interp(x, y, 0.5) == doctest::Approx(6.0));
    CHECK(linear_interp(x, y, 1.25) == doctest::Approx(6.0));
    CHECK(linear_interp(x, y, -3.0) == doctest::Approx(5.0));
    CHECK(linear_interp(x, y, 9.0) == doctest::Approx(3.0));
}

TEST_CASE("cholesky_solve solves SPD systems") {
    // A = M^T M + I with M fixed -> SPD
    std::vector<double> a = {
        4.0, 1.0, 0.5, 0.0,
        1.0, 3.0, 0.2, 0.1,
        0.5, 0.2, 5.0, 1.0,
        0.0, 0.1, 1.0, 2.0,
    };
    std::vector<double> want = {1.0, -2.0, 0.5, 3.0};
    std::vector<double> b(4, 0.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) b[i] += a[i * 4 + j] * want[j];
    std::vector<double> got = b;
    CHECK(cholesky_solve(a, got, 4));
    for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));

    // non-SPD input is reported, not mis-solved
    std::vector<double> bad = {1.0, 2.0, 2.0, 1.0};  // eigenvalues 3, -1
    std::vector<double> rhs = {1.0, 1.0};
    CHECK_FALSE(cholesky_solve(bad, rhs, 2));
}
