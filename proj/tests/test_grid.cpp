#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "radflow/grid.hpp"

#include <cmath>
#include <random>

using namespace radflow;

TEST_CASE("uniform grid basics") {
    const RadialGrid g = make_uniform_grid(0.1, 1.0, 11);
    CHECK(g.size() == 11);
    CHECK(g.min_spacing() == doctest::Approx(0.09).epsilon(1e-14));
    CHECK(g.eps() == 0.1);
    CHECK(g.outer() == 1.0);
    // quadrature of 1 is exactly the annulus half-area
    const double q = integrate_radial(Samples(11, 1.0), g);
    CHECK(q == doctest::Approx(0.495).epsilon(1e-13));
}

TEST_CASE("grid construction rejects bad input") {
    CHECK_THROWS_AS(make_uniform_grid(0.5, 0.5, 11), std::invalid_argument);
    CHECK_THROWS_AS(make_uniform_grid(-0.1, 1.0, 11), std::invalid_argument);
    CHECK_THROWS_AS(make_uniform_grid(0.0, 1.0, 11), std::invalid_argument);
    CHECK_THROWS_AS(make_uniform_grid(0.1, 1.0, 2), std::invalid_argument);
}

TEST_CASE("quadrature of r on a near-unit disk") {
    const RadialGrid g = make_uniform_grid(1e-9, 1.0, 2001);
    Samples f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = g.node(i);
    CHECK(integrate_radial(f, g) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("integrate_radial example values") {
    const RadialGrid g = make_uniform_grid(1e-9, 1.0, 2001);
    CHECK(integrate_radial(Samples(g.size(), 1.0), g) == doctest::Approx(0.5).epsilon(1e-12));
    Samples r2(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r2[i] = g.node(i) * g.node(i);
    CHECK(integrate_radial(r2, g) == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(integrate_radial(Samples(g.size(), 0.0), g) == 0.0);
    CHECK_THROWS_AS(integrate_radial(Samples(5, 1.0), g), std::invalid_argument);
}

TEST_CASE("quadrature is linear and monotone") {
    const RadialGrid g = make_uniform_grid(0.2, 1.7, 57);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Samples f(g.size()), d(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        f[i] = unit(rng);
        d[i] = unit(rng);
    }
    Samples fg(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) fg[i] = 2.5 * f[i] + d[i];
    CHECK(integrate_radial(fg, g) ==
          doctest::Approx(2.5 * integrate_radial(f, g) + integrate_radial(d, g))
              .epsilon(1e-13));
    // f <= f + d pointwise with d >= 0
    Samples sum(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) sum[i] = f[i] + d[i];
    CHECK(integrate_radial(f, g) <= integrate_radial(sum, g));
}

TEST_CASE("quadrature error decays at second order") {
    auto quad_err = [](std::size_t n) {
        const RadialGrid g = make_uniform_grid(0.1, 1.0, n);
        Samples f(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::sin(3.0 * g.node(i));
        // exact ∫ sin(3r) r dr = [sin(3r)/9 - r cos(3r)/3]
        auto prim = [](double r) { return std::sin(3.0 * r) / 9.0 - r * std::cos(3.0 * r) / 3.0; };
        return std::abs(integrate_radial(f, g) - (prim(1.0) - prim(0.1)));
    };
    const double e1 = quad_err(101), e2 = quad_err(201);
    CHECK(e1 / e2 > 3.5);  // ratio ~4 for order 2
}

TEST_CASE("radial_derivative is exact on constants and quadratics") {
    const RadialGrid g = make_uniform_grid(0.1, 1.0, 101);
    const Samples dc = radial_derivative(Samples(g.size(), 4.2), g);
    for (double v : dc) CHECK(v == 0.0);

    Samples r2(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r2[i] = g.node(i) * g.node(i);
    const Samples d = radial_derivative(r2, g);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(d[i] == doctest::Approx(2.0 * g.node(i)).epsilon(1e-10));
    CHECK_THROWS_AS(radial_derivative(Samples(5, 0.0), g), std::invalid_argument);
}

TEST_CASE("radial_derivative converges at second order") {
    auto max_err = [](std::size_t n) {
        const RadialGrid g = make_uniform_grid(0.1, 1.0, n);
        Samples f(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::sin(g.node(i));
        const Samples d = radial_derivative(f, g);
        double e = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            e = std::max(e, std::abs(d[i] - std::cos(g.node(i))));
        return e;
    };
    const double e1 = max_err(101), e2 = max_err(201);
    CHECK(e1 / e2 > 3.5);
}

TEST_CASE("radial_derivative is linear") {
    const RadialGrid g = make_uniform_grid(0.3, 2.0, 41);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Samples f(g.size()), h(g.size()), fh(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        f[i] = unit(rng);
        h[i] = unit(rng);
        fh[i] = 3.0 * f[i] - 2.0 * h[i];
    }
    const Samples df = radial_derivative(f, g);
    const Samples dh = radial_derivative(h, g);
    const Samples dfh = radial_derivative(fh, g);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(dfh[i] == doctest::Approx(3.0 * df[i] - 2.0 * dh[i]).epsilon(1e-11));
}

TEST_CASE("sbp derivative satisfies summation by parts exactly") {
    const RadialGrid g = make_uniform_grid(0.1, 1.0, 87);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Samples f(g.size()), h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        f[i] = unit(rng);
        h[i] = unit(rng);
    }
    const Samples df = sbp_derivative(f, g);
    const Samples dh = sbp_derivative(h, g);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        acc += g.gap(i) * (f[i] * dh[i] + h[i] * df[i]);
    const double boundary = f.back() * h.back() - f.front() * h.front();
    CHECK(acc == doctest::Approx(boundary).epsilon(1e-12));
}

TEST_CASE("graded grid keeps the exact half-area quadrature") {
    const RadialGrid g = make_graded_grid(0.05, 1.0, 101, 1.03);
    const double q = integrate_radial(Samples(g.size(), 1.0), g);
    CHECK(q == doctest::Approx(0.5 * (1.0 - 0.0025)).epsilon(1e-12));
    // quadratic exactness of the derivative holds on graded grids too
    Samples r2(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r2[i] = g.node(i) * g.node(i);
    const Samples d = radial_derivative(r2, g);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(d[i] == doctest::Approx(2.0 * g.node(i)).epsilon(1e-9));
}

TEST_CASE("phys params validation") {
    PhysParams p{1.0, -0.5, 1.0, 1.0};
    CHECK(p.nu() == 1.5);
    CHECK_NOTHROW(p.validate());
    p.lambda = -1.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {0.0, 0.0, 1.0, 1.0};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {1.0, 0.0, 0.0, 1.0};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {1.0, 0.0, 1.0, 0.0};
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("flow state validation") {
    const RadialGrid g = make_uniform_grid(0.1, 1.0, 11);
    FlowState s;
    s.rho.assign(11, 1.0);
    s.u.assign(11, 0.0);
    s.theta.assign(11, 1.0);
    CHECK_NOTHROW(s.validate(g));
    s.u[0] = 0.1;
    CHECK_THROWS_AS(s.validate(g), std::invalid_argument);
    s.u[0] = 0.0;
    s.rho[5] = 0.0;
    CHECK_THROWS_AS(s.validate(g), std::invalid_argument);
    s.rho[5] = 1.0;
    s.theta[3] = -1.0;
    CHECK_THROWS_AS(s.validate(g), std::invalid_argument);
}
