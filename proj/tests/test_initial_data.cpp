#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "radflow/initial_data.hpp"
#include "radflow/grid.hpp"

#include <cmath>

using namespace radflow;

namespace {

InitialDataSpec basic_spec(double eps = 0.1, double R = 1.0) {
    InitialDataSpec spec;
    spec.rho0 = make_named_profile("constant", 1.0, 0.0, R);
    spec.u0 = make_named_profile("zero", 0.0, 0.0, R);
    spec.theta0 = make_named_profile("constant", 1.0, 0.0, R);
    spec.C0 = 10.0;
    spec.M0 = 0.5;
    spec.eps = eps;
    spec.delta = eps / 4.0;
    return spec;
}

} // namespace

TEST_CASE("mollify preserves constants to machine accuracy") {
    const Samples in(200, 3.0);
    const Samples out = mollify(in, 0.01, 0.05);
    CHECK(out.size() == 200 - 2 * 5);
    for (double v : out) CHECK(v == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("mollify leaves linear profiles unchanged") {
    const double h = 0.01;
    Samples in(200);
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = 2.5 * (h * static_cast<double>(i));
    const Samples out = mollify(in, h, 0.05);
    for (std::size_t i = 0; i < out.size(); ++i)
        CHECK(out[i] == doctest::Approx(in[i + 5]).epsilon(1e-10));
}

TEST_CASE("mollify smooths a step and keeps its mass") {
    const double h = 0.005;
    Samples in(400);
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = i < 200 ? 1.0 : 2.0;
    const std::size_t m = 8;  // delta = 0.04
    const Samples out = mollify(in, h, 0.04);
    REQUIRE(out.size() == in.size() - 2 * m);
    // monotone output
    for (std::size_t i = 0; i + 1 < out.size(); ++i) CHECK(out[i] <= out[i + 1] + 1e-14);
    // plain sums agree once the constant margins are trimmed
    double sum_out = 0.0, sum_in = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        sum_out += h * out[i];
        sum_in += h * in[i + m];
    }
    CHECK(sum_out == doctest::Approx(sum_in).epsilon(1e-8));
    // min never drops below the input min
    for (double v : out) CHECK(v >= 1.0 - 1e-12);
}

TEST_CASE("mollify rejects insufficient padding") {
    CHECK_THROWS_AS(mollify(Samples(5, 1.0), 0.01, 0.05), std::invalid_argument);
}

TEST_CASE("prepare_density normalizes a constant profile") {
    const RadialGrid g = make_uniform_grid(0.1, 1.0, 11);
    const InitialDataSpec spec = basic_spec();
    const Samples rho = prepare_density(spec, g);
    // grid mass of the unscaled constant is 0.495, so the scale is 0.5/0.495
    for (double v : rho) CHECK(v == doctest::Approx(0.5 / 0.495).epsilon(1e-10));
    CHECK(integrate_radial(rho, g) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("prepare_density hits M0 for assorted profiles") {
    const RadialGrid g = make_uniform_grid(0.1, 1.0, 201);
    for (const char* shape : {"sine", "gauss", "ramp", "step", "quadratic"}) {
        InitialDataSpec spec = basic_spec();
        spec.rho0 = make_named_profile(shape, 1.0, 0.4, 1.0);
        spec.M0 = profile_mass(spec.rho0, 1.0);
        const Samples rho = prepare_density(spec, g);
        CHECK(std::abs(integrate_radial(rho, g) - spec.M0) / spec.M0 <= 1e-10);
        for (double v : rho) CHECK(v > 0.0);
    }
}

TEST_CASE("prepare_velocity vanishes near both endpoints") {
    const RadialGrid g = make_uniform_grid(0.1, 1.0, 201);
    InitialDataSpec spec = basic_spec();

    const Samples zero = prepare_velocity(spec, g);
    for (double v : zero) CHECK(v == 0.0);

    spec.u0 = make_named_profile("constant", 1.0, 0.0, 1.0);
    const Samples u = prepare_velocity(spec, g);
    CHECK(u.front() == 0.0);
    CHECK(u.back() == 0.0);
    // identically zero outside the mollified support
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.node(i) <= 2.0 * spec.eps - spec.delta) CHECK(u[i] == 0.0);
        if (g.node(i) >= 1.0 - spec.delta) CHECK(u[i] == 0.0);
    }
    // interior plateau keeps the original value
    double mid = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (std::abs(g.node(i) - 0.6) < 0.05) mid = std::max(mid, u[i]);
    CHECK(mid == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("prepare_temperature is endpoint-flat") {
    const RadialGrid g = make_uniform_grid(0.1, 1.0, 201);
    InitialDataSpec spec = basic_spec();

    spec.theta0 = make_named_profile("constant", 2.0, 0.0, 1.0);
    const Samples flat = prepare_temperature(spec, g);
    for (double v : flat) CHECK(v == doctest::Approx(2.0).epsilon(1e-12));

    spec.theta0 = make_named_profile("ramp", 1.0, 1.0, 1.0);  // 1 + r
    const Samples theta = prepare_temperature(spec, g);
    const Samples dtheta = radial_derivative(theta, g);
    CHECK(std::abs(dtheta.front()) <= 1e-10);
    CHECK(std::abs(dtheta.back()) <= 1e-10);
    for (double v : theta) CHECK(v >= 1.0 - 1e-8);
}

TEST_CASE("validate_initial_data entropy values") {
    const RadialGrid g = make_uniform_grid(1e-9, 1.0, 2001);
    InitialDataSpec spec = basic_spec(1e-9, 1.0);
    spec.delta = 2.5e-10;

    Samples rho(g.size(), 1.0), u(g.size(), 0.0), theta(g.size(), 1.0);
    EstimateReport rep = validate_initial_data(rho, u, theta, spec, g, 1.0);
    double entropy = 0.0;
    for (const auto& e : rep.entries)
        if (e.name == "entropy integral") entropy = e.value;
    CHECK(entropy == doctest::Approx(0.0).epsilon(1e-12));

    theta.assign(g.size(), std::exp(1.0));
    rep = validate_initial_data(rho, u, theta, spec, g, 3.7);
    for (const auto& e : rep.entries)
        if (e.name == "entropy integral") entropy = e.value;
    // Psi(e) (e - 2) over the unit disk half-area
    CHECK(entropy == doctest::Approx(0.5 * (std::exp(1.0) - 2.0)).epsilon(1e-9));
}

TEST_CASE("validate_initial_data flags hypothesis violations") {
    const RadialGrid g = make_uniform_grid(0.1, 1.0, 21);
    InitialDataSpec spec = basic_spec();
    spec.C0 = 1.5;
    Samples rho(g.size(), 2.0), u(g.size(), 0.0), theta(g.size(), 1.0);
    const EstimateReport rep = validate_initial_data(rho, u, theta, spec, g, 1.0);
    bool upper_failed = false;
    for (const auto& e : rep.entries)
        if (e.name == "rho upper bound" && !e.pass) upper_failed = true;
    CHECK(upper_failed);
    CHECK_FALSE(rep.hard_pass());
}

TEST_CASE("spec validation") {
    InitialDataSpec spec = basic_spec();
    spec.delta = 0.2;  // >= eps
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = basic_spec();
    spec.C0 = 0.5;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = basic_spec();
    spec.M0 = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("tabulated profiles interpolate linearly") {
    const RadialProfile p = make_tabulated_profile({0.0, 0.5, 1.0}, {1.0, 2.0, 1.0});
    CHECK(p(0.25) == doctest::Approx(1.5));
    CHECK(p(0.75) == doctest::Approx(1.5));
    CHECK(p(-1.0) == 1.0);
    CHECK(p(2.0) == 1.0);
    CHECK_THROWS_AS(make_tabulated_profile({0.5, 0.2}, {1.0, 1.0}), std::invalid_argument);
}
