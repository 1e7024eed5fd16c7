#include "zoo.hpp"

#include "radflow/initial_data.hpp"

#include <cmath>
#include <random>

namespace radflow::testing {

namespace {

FlowState prepared_state(const RadialGrid& grid, const InitialDataSpec& spec) {
    FlowState s;
    s.t = 0.0;
    s.rho = prepare_density(spec, grid);
    s.u = prepare_velocity(spec, grid);
    s.theta = prepare_temperature(spec, grid);
    return s;
}

ZooCase constant_case() {
    ZooCase z{"constant", make_uniform_grid(0.1, 1.0, 201), {}, {}, {}, {}, true};
    z.params = {0.1, 0.0, 0.1, 1.0};
    z.initial.t = 0.0;
    z.initial.rho.assign(201, 1.0);
    z.initial.u.assign(201, 0.0);
    z.initial.theta.assign(201, 1.0);
    z.config.t_end = 1.0;
    z.config.dt_max = 5e-3;
    z.config.out_every = 50;
    return z;
}

ZooCase smooth_case() {
    // weakly compressible and junction-free so the discrete entropy budget
    // holds at the 1e-8 rate tolerance; recorded densely for the budget
    // quadratures
    ZooCase z{"smooth", make_uniform_grid(0.1, 1.0, 401), {}, {}, {}, {}, true};
    z.params = {0.05, 0.0, 0.05, 0.05};
    InitialDataSpec spec;
    spec.rho0 = make_named_profile("sine", 1.0, 0.03, 1.0);
    spec.u0 = make_named_profile("gauss", 0.0, 0.02, 1.0);
    spec.theta0 = make_named_profile("gauss", 1.0, 0.03, 1.0);
    spec.C0 = 50.0;
    spec.M0 = profile_mass(spec.rho0, 1.0);
    spec.eps = 0.1;
    spec.delta = 0.025;
    z.initial = prepared_state(z.grid, spec);
    z.config.t_end = 0.5;
    z.config.dt_max = 1e-3;
    z.config.out_every = 2;
    return z;
}

ZooCase budget_case() {
    ZooCase z{"budget", make_uniform_grid(0.1, 1.0, 801), {}, {}, {}, {}, true};
    z.params = {0.05, 0.0, 0.05, 0.05};
    InitialDataSpec spec;
    spec.rho0 = make_named_profile("sine", 1.0, 0.02, 1.0);
    spec.u0 = make_named_profile("gauss", 0.0, 0.015, 1.0);
    spec.theta0 = make_named_profile("gauss", 1.0, 0.02, 1.0);
    spec.C0 = 50.0;
    spec.M0 = profile_mass(spec.rho0, 1.0);
    spec.eps = 0.1;
    spec.delta = 0.025;
    z.initial = prepared_state(z.grid, spec);
    z.config.t_end = 1.0;
    z.config.dt_max = 1e-3;
    z.config.out_every = 2;
    return z;
}

ZooCase forced_case() {
    ZooCase z{"forced", make_uniform_grid(0.1, 1.0, 301), {}, {}, {}, {}, true};
    z.params = {0.05, 0.0, 0.08, 1.0};
    InitialDataSpec spec;
    spec.rho0 = make_named_profile("sine", 1.0, 0.1, 1.0);
    spec.u0 = make_named_profile("zero", 0.0, 0.0, 1.0);
    spec.theta0 = make_named_profile("constant", 1.0, 0.0, 1.0);
    spec.C0 = 50.0;
    spec.M0 = profile_mass(spec.rho0, 1.0);
    spec.eps = 0.1;
    spec.delta = 0.025;
    z.initial = prepared_state(z.grid, spec);
    z.forcing = make_named_forcing("pulse", 0.2, 1.0);
    z.config.t_end = 0.5;
    z.config.dt_max = 2e-3;
    z.config.out_every = 10;
    return z;
}

ZooCase near_vacuum_case() {
    ZooCase z{"near_vacuum", make_uniform_grid(0.05, 1.0, 401), {}, {}, {}, {}, false};
    z.params = {0.05, 0.0, 0.05, 1.0};
    InitialDataSpec spec;
    spec.rho0 = make_named_profile("quadratic", 0.05, 1.2, 1.0);
    spec.u0 = make_named_profile("sine", 0.0, 0.05, 1.0);
    spec.theta0 = make_named_profile("constant", 1.0, 0.0, 1.0);
    spec.C0 = 50.0;
    spec.M0 = profile_mass(spec.rho0, 1.0);
    spec.eps = 0.05;
    spec.delta = 0.0125;
    z.initial = prepared_state(z.grid, spec);
    z.config.t_end = 0.3;
    z.config.dt_max = 2e-3;
    z.config.out_every = 10;
    return z;
}

} // namespace

std::vector<ZooCase> standard_zoo() {
    std::vector<ZooCase> zoo;
    zoo.push_back(constant_case());
    zoo.push_back(smooth_case());
    zoo.push_back(budget_case());
    zoo.push_back(forced_case());
    zoo.push_back(near_vacuum_case());
    return zoo;
}

const std::vector<std::pair<ZooCase, Trajectory>>& zoo_trajectories() {
    static const std::vector<std::pair<ZooCase, Trajectory>> cache = [] {
        std::vector<std::pair<ZooCase, Trajectory>> out;
        for (ZooCase& z : standard_zoo()) {
            Trajectory traj = run(z.grid, z.initial, z.params, z.forcing, z.config);
            out.emplace_back(std::move(z), std::move(traj));
        }
        return out;
    }();
    return cache;
}

FlowState seeded_state(const RadialGrid& grid, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t n = grid.size();
    const double L = grid.outer() - grid.eps();
    FlowState s;
    s.t = 0.0;
    s.rho.resize(n);
    s.u.resize(n);
    s.theta.resize(n);
    const double a_rho = 0.2 + 0.6 * unit(rng);
    const double a_u = 0.5 * unit(rng);
    const double a_th = 0.2 + 0.5 * unit(rng);
    const double p1 = unit(rng) * 2.0 * M_PI, p2 = unit(rng) * 2.0 * M_PI;
    const int k1 = 1 + static_cast<int>(3.0 * unit(rng));
    const int k2 = 1 + static_cast<int>(3.0 * unit(rng));
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (grid.node(i) - grid.eps()) / L;
        s.rho[i] = 1.0 + 0.5 * a_rho * std::sin(2.0 * M_PI * k1 * x + p1);
        s.u[i] = a_u * std::sin(M_PI * x) * std::sin(2.0 * M_PI * k2 * x + p2);
        s.theta[i] = 1.0 + 0.5 * a_th * std::cos(2.0 * M_PI * k2 * x + p1);
    }
    s.u.front() = 0.0;
    s.u.back() = 0.0;
    return s;
}

} // namespace radflow::testing
