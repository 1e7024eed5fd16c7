#include "radflow/functionals.hpp"

#include "radflow/initial_data.hpp"
#include "radflow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radflow {

double total_mass(const FlowState& state, const RadialGrid& grid) {
    return integrate_radial(state.rho, grid);
}

double total_energy(const FlowState& state, const RadialGrid& grid) {
    Samples e(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        e[i] = state.rho[i] * (0.5 * state.u[i] * state.u[i] + state.theta[i]);
    return integrate_radial(e, grid);
}

double total_entropy(const FlowState& state, const RadialGrid& grid, double K) {
    Samples s(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        s[i] = state.rho[i] * entropy_density(state.rho[i], state.u[i], state.theta[i], K);
    return integrate_radial(s, grid);
}

double entropy_dissipation(const FlowState& state, const RadialGrid& grid,
                           const PhysParams& params) {
    const Samples thr = radial_derivative(state.theta, grid);
    const Samples q = compute_Q(state, params, grid);
    Samples d(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double ratio = thr[i] / state.theta[i];
        d[i] = params.kappa * ratio * ratio + q[i] / state.theta[i];
    }
    return integrate_radial(d, grid);
}

double temperature_lq(const FlowState& state, const RadialGrid& grid, double q) {
    if (!(q >= 1.0))
        throw std::invalid_argument("temperature_lq: q must be >= 1");
    Samples f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        f[i] = std::pow(state.theta[i], q);
    return integrate_radial(f, grid);
}

VelocityNorms velocity_global_norms(const FlowState& state, const RadialGrid& grid) {
    const Samples ur = radial_derivative(state.u, grid);
    Samples wint(grid.size()), u4(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double uor = state.u[i] / grid.node(i);
        wint[i] = std::pow(std::abs(ur[i]), 4.0 / 3.0) + std::pow(std::abs(uor), 4.0 / 3.0);
        u4[i] = std::pow(state.u[i], 4);
    }
    return {integrate_radial(wint, grid), std::cbrt(integrate_radial(u4, grid))};
}

Samples velocity_grad_sq(const FlowState& state, const RadialGrid& grid) {
    const Samples ur = radial_derivative(state.u, grid);
    Samples g(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double uor = state.u[i] / grid.node(i);
        g[i] = ur[i] * ur[i] + uor * uor;
    }
    return g;
}

double log_temp_gradient(const FlowState& state, const RadialGrid& grid) {
    Samples lf(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        lf[i] = std::log1p(state.theta[i]);
    const Samples d = radial_derivative(lf, grid);
    Samples sq(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        sq[i] = d[i] * d[i];
    return integrate_radial(sq, grid);
}

Samples cumulative_mass(const FlowState& state, const RadialGrid& grid) {
    const Samples& r = grid.nodes();
    Samples c(grid.size(), 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double seg = 0.5 * (r[i] - r[i - 1]) *
                           (r[i - 1] * state.rho[i - 1] + r[i] * state.rho[i]);
        c[i] = c[i - 1] + seg;
    }
    return c;
}

double mass_radius(const FlowState& state, const RadialGrid& grid, double h) {
    const Samples c = cumulative_mass(state, grid);
    if (!(h > 0.0) || !(h < c.back()))
        throw std::invalid_argument("mass_radius: h must lie in (0, total mass)");
    std::size_t lo = 0, hi = grid.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (c[mid] <= h ? lo : hi) = mid;
    }
    const double frac = (h - c[lo]) / (c[lo + 1] - c[lo]);
    return grid.node(lo) + frac * (grid.node(lo + 1) - grid.node(lo));
}

ParticlePath particle_path(const Trajectory& traj, double h) {
    ParticlePath path;
    path.h = h;
    for (const FlowState& s : traj.states) {
        path.times.push_back(s.t);
        path.radii.push_back(mass_radius(s, traj.grid, h));
    }
    return path;
}

namespace {

double interp_linear(const RadialGrid& grid, const Samples& f, double r) {
    const Samples& x = grid.nodes();
    if (r <= x.front()) return f.front();
    if (r >= x.back()) return f.back();
    std::size_t lo = 0, hi = x.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (x[mid] <= r ? lo : hi) = mid;
    }
    const double frac = (r - x[lo]) / (x[lo + 1] - x[lo]);
    return (1.0 - frac) * f[lo] + frac * f[lo + 1];
}

} // namespace

CutoffField transport_cutoff(const Trajectory& traj, double h, double p) {
    if (!(p > 2.0))
        throw std::invalid_argument("transport_cutoff: p must exceed 2");
    const RadialGrid& grid = traj.grid;
    const double r0 = mass_radius(traj.initial(), grid, h);
    if (2.0 * r0 >= grid.outer())
        throw std::invalid_argument("transport_cutoff: 2 r_h(0) >= R, no room for the bridge");

    CutoffField cut;
    cut.p = p;
    auto phi0 = [r0, p](double r) {
        const double xi = std::clamp((r - r0) / r0, 0.0, 1.0);
        const double s = xi * xi * (3.0 - 2.0 * xi);
        return std::pow(s, p);
    };

    Samples current(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        current[i] = phi0(grid.node(i));
    cut.times.push_back(traj.states.front().t);
    cut.phi.push_back(current);

    for (std::size_t k = 0; k + 1 < traj.states.size(); ++k) {
        const FlowState& a = traj.states[k];
        const FlowState& b = traj.states[k + 1];
        const double dt = b.t - a.t;
        Samples next(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double r = grid.node(i);
            // two-stage backtracking with the time-average velocity
            const double mid = r - 0.5 * dt * b.u[i];
            const double umid = 0.5 * (interp_linear(grid, a.u, mid) +
                                       interp_linear(grid, b.u, mid));
            const double foot = std::clamp(r - dt * umid, grid.eps(), grid.outer());
            next[i] = std::clamp(interp_linear(grid, cut.phi[k], foot), 0.0, 1.0);
        }
        cut.times.push_back(b.t);
        cut.phi.push_back(std::move(next));
    }
    return cut;
}

double cutoff_growth_ratio(const CutoffField& cutoff, const Trajectory& traj,
                           double phi_floor) {
    const RadialGrid& grid = traj.grid;
    double worst = 0.0;
    for (const Samples& row : cutoff.phi) {
        const Samples dr = radial_derivative(row, grid);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i] <= phi_floor) continue;
            const double denom = std::pow(row[i], (cutoff.p - 1.0) / cutoff.p);
            worst = std::max(worst, std::abs(dr[i]) / denom);
        }
    }
    return worst;
}

HigherOrderTriple higher_order_functionals(const Trajectory& traj, double h, double p) {
    if (traj.states.size() < 3)
        throw std::invalid_argument(
            "higher_order_functionals: cadence too coarse for time differencing");
    const RadialGrid& grid = traj.grid;
    const std::size_t n = grid.size();
    const std::size_t K = traj.states.size();
    const CutoffField cut = transport_cutoff(traj, h, p);
    const ParticlePath path = particle_path(traj, h);

    auto sigma = [](double t) { return std::min(1.0, t); };

    // convective derivatives on the recorded cadence; one-sided at the ends
    std::vector<Samples> udot(K, Samples(n, 0.0)), thdot(K, Samples(n, 0.0));
    for (std::size_t k = 0; k < K; ++k) {
        const std::size_t ka = k == 0 ? 0 : k - 1;
        const std::size_t kb = k + 1 == K ? k : k + 1;
        const double dt = traj.states[kb].t - traj.states[ka].t;
        const Samples du = radial_derivative(traj.states[k].u, grid);
        const Samples dth = radial_derivative(traj.states[k].theta, grid);
        for (std::size_t i = 0; i < n; ++i) {
            const double ut = (traj.states[kb].u[i] - traj.states[ka].u[i]) / dt;
            const double tht = (traj.states[kb].theta[i] - traj.states[ka].theta[i]) / dt;
            udot[k][i] = ut + traj.states[k].u[i] * du[i];
            thdot[k][i] = tht + traj.states[k].u[i] * dth[i];
        }
    }

    Samples a_int(K, 0.0), b_int(K, 0.0), d_int(K, 0.0);
    double a_sup = 0.0, b_sup = 0.0, d_sup = 0.0;
    const Samples& w = grid.weights();
    for (std::size_t k = 0; k < K; ++k) {
        const FlowState& s = traj.states[k];
        const double sg = sigma(s.t);
        const Samples du = radial_derivative(s.u, grid);
        const Samples dth = radial_derivative(s.theta, grid);
        double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0, d1 = 0.0, d2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (grid.node(i) < path.radii[k]) continue;
            const double phi = cut.phi[k][i];
            const double div = du[i] + s.u[i] / grid.node(i);
            a1 += w[i] * phi * div * div;
            a2 += w[i] * phi * udot[k][i] * udot[k][i];
            b1 += w[i] * phi * s.theta[i] * s.theta[i];
            b2 += w[i] * phi * dth[i] * dth[i];
            d1 += w[i] * phi * phi * dth[i] * dth[i];
            d2 += w[i] * phi * phi * thdot[k][i] * thdot[k][i];
        }
        a_sup = std::max(a_sup, sg * a1);
        b_sup = std::max(b_sup, sg * b1);
        d_sup = std::max(d_sup, sg * sg * d1);
        a_int[k] = sg * a2;
        b_int[k] = sg * b2;
        d_int[k] = sg * sg * d2;
    }
    auto time_trapezoid = [&](const Samples& f) {
        double acc = 0.0;
        for (std::size_t k = 0; k + 1 < K; ++k)
            acc += 0.5 * (traj.states[k + 1].t - traj.states[k].t) * (f[k] + f[k + 1]);
        return acc;
    };
    return {a_sup + time_trapezoid(a_int), b_sup + time_trapezoid(b_int),
            d_sup + time_trapezoid(d_int)};
}

} // namespace radflow
