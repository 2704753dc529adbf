#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "runup/system.hpp"

using namespace runup;

namespace {

// plane-beach hodograph system: A1 = [[0,1],[sigma,0]], A0 = [[0,0],[1,0]]
HyperbolicSystem1D beach_system() {
    MatrixField a1(2, [](double s, std::span<double> out) {
        out[0] = 0.0;
        out[1] = 1.0;
        out[2] = s;
        out[3] = 0.0;
    });
    MatrixField a0 = MatrixField::constant(2, {0.0, 0.0, 1.0, 0.0});
    return {a1, a0};
}

}  // namespace

TEST_CASE("MatrixField evaluation and sampling") {
    auto f = MatrixField::constant(2, {1.0, 2.0, 3.0, 4.0});
    std::vector<double> out(4);
    f.eval(0.7, out);
    CHECK(out[1] == 2.0);

    Grid g{0.0, 1.0, 3};
    auto s = MatrixField::scalar([](double x) { return 2.0 * x; }).sample(g);
    REQUIRE(s.size() == 3);
    CHECK(s[0] == 0.0);
    CHECK(s[1] == 1.0);
    CHECK(s[2] == 2.0);
}

TEST_CASE("apply_D matches analytic derivative for scalar advection") {
    HyperbolicSystem1D sys{MatrixField::constant(1, {1.0}), MatrixField::zero(1)};
    Grid g{0.0, M_PI, 201};
    auto u = GridFunction::sample_scalar(g, [](double x) { return std::sin(x); });
    auto du = apply_D(sys, u, 6);
    double err = 0.0;
    for (int i = 0; i < g.n; ++i)
        err = std::max(err, std::abs(du.at(0, i) - std::cos(g.node(i))));
    CHECK(err < 1e-9);
}

TEST_CASE("apply_D is exact on data the beach system maps polynomially") {
    // u = (0, sigma): A1 u_x = A1 (0,1) = (1, 0); A0 u = (0, 0) => D u = (1, 0)
    auto sys = beach_system();
    Grid g{0.0, 5.0, 41};
    GridFunction u(g, 2);
    for (int i = 0; i < g.n; ++i) {
        u.at(0, i) = 0.0;
        u.at(1, i) = g.node(i);
    }
    auto du = apply_D(sys, u, 4);
    for (int i = 0; i < g.n; ++i) {
        CHECK(du.at(0, i) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(du.at(1, i)) < 1e-12);
    }
}

TEST_CASE("characteristic matrix and margin: closed forms") {
    // scalar advection, tau = beta x: det(I - tau' A1) = 1 - beta
    HyperbolicSystem1D adv{MatrixField::constant(1, {1.0}), MatrixField::zero(1)};
    Grid g{0.0, 10.0, 11};
    const double beta = 0.25;
    CHECK(noncharacteristic_margin(adv, Manifold::linear(beta), g) ==
          doctest::Approx(1.0 - beta).epsilon(1e-14));

    // beach system, tau = beta sigma: det = 1 - beta^2 sigma, minimized at sigma = 10
    auto sys = beach_system();
    const double m = noncharacteristic_margin(sys, Manifold::linear(beta), g);
    CHECK(m == doctest::Approx(1.0 - beta * beta * 10.0).epsilon(1e-13));

    std::vector<double> mat(4);
    characteristic_matrix(sys, Manifold::linear(beta), 4.0, mat);
    CHECK(mat[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mat[1] == doctest::Approx(-beta).epsilon(1e-15));
    CHECK(mat[2] == doctest::Approx(-beta * 4.0).epsilon(1e-15));
    CHECK(mat[3] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("hyperbolicity check accepts real-characteristic systems") {
    Grid g{0.0, 25.0, 101};
    CHECK_NOTHROW(check_hyperbolic(beach_system(), g));  // includes the sigma=0 degeneracy

    HyperbolicSystem1D adv{MatrixField::constant(1, {2.0}), MatrixField::zero(1)};
    CHECK_NOTHROW(check_hyperbolic(adv, g));

    // diagonal 3x3 with distinct speeds
    HyperbolicSystem1D diag{
        MatrixField::constant(3, {1, 0, 0, 0, 2, 0, 0, 0, 3}), MatrixField::zero(3)};
    CHECK_NOTHROW(check_hyperbolic(diag, g));
}

TEST_CASE("hyperbolicity check rejects complex or defective characteristic structure") {
    Grid g{0.0, 1.0, 5};
    // rotation block: eigenvalues +-i
    HyperbolicSystem1D rot{MatrixField::constant(2, {0.0, 1.0, -1.0, 0.0}),
                           MatrixField::zero(2)};
    CHECK_THROWS_AS(check_hyperbolic(rot, g), std::invalid_argument);

    // 3x3 with a genuine Jordan block at eigenvalue 0 separated from eigenvalue 1
    HyperbolicSystem1D jordan{
        MatrixField::constant(3, {0, 1, 0, 0, 0, 0, 0, 0, 1}), MatrixField::zero(3)};
    CHECK_THROWS_AS(check_hyperbolic(jordan, g), std::invalid_argument);
}

TEST_CASE("Manifold::from_samples reproduces a linear manifold") {
    Grid g{0.0, 4.0, 21};
    std::vector<double> tv(g.n);
    for (int i = 0; i < g.n; ++i) tv[i] = 0.3 * g.node(i) + 0.1;
    auto mf = Manifold::from_samples(g, tv, 4);
    for (double x : {0.0, 0.77, 2.5, 4.0}) {
        CHECK(mf.tau(x) == doctest::Approx(0.3 * x + 0.1).epsilon(1e-12));
        CHECK(mf.tau_prime(x) == doctest::Approx(0.3).epsilon(1e-10));
    }
}

TEST_CASE("ManifoldIC validates the margin and records it") {
    HyperbolicSystem1D adv{MatrixField::constant(1, {1.0}), MatrixField::zero(1)};
    Grid g{0.0, 10.0, 21};
    auto data = GridFunction::sample_scalar(g, [](double x) { return std::exp(-x); });

    ManifoldIC ok(adv, Manifold::linear(0.5), data);
    CHECK(ok.margin == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_WITH_AS(ManifoldIC(adv, Manifold::linear(1.0), data),
                         doctest::Contains("characteristic manifold"), std::invalid_argument);
}
