#include "radflow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radflow {

void SolverConfig::validate() const {
    if (!(cfl > 0.0) || !(cfl <= 0.9))
        throw std::invalid_argument("SolverConfig: cfl must lie in (0, 0.9]");
    if (!(dt_max > 0.0))
        throw std::invalid_argument("SolverConfig: dt_max must be positive");
    if (!(t_end > 0.0))
        throw std::invalid_argument("SolverConfig: t_end must be positive");
    if (!(floor_rho > 0.0) || floor_rho > 1e-10 || !(floor_theta > 0.0) || floor_theta > 1e-10)
        throw std::invalid_argument("SolverConfig: floors must lie in (0, 1e-10]");
    if (out_every == 0)
        throw std::invalid_argument("SolverConfig: out_every must be >= 1");
}

double q_pointwise(double u, double ur, double r, const PhysParams& params) {
    // (mu+lambda)(u_r + u/r)^2 + mu (u_r - u/r)^2 expands to the documented
    // lambda (u_r + u/r)^2 + 2 mu (u_r^2 + u^2/r^2); this grouping is a sum
    // of nonnegative terms even for lambda < 0.
    const double div = ur + u / r;
    const double shear = ur - u / r;
    return (params.mu + params.lambda) * div * div + params.mu * shear * shear;
}

Samples compute_Q(const FlowState& state, const PhysParams& params, const RadialGrid& grid) {
    const Samples ur = radial_derivative(state.u, grid);
    Samples q(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        q[i] = q_pointwise(state.u[i], ur[i], grid.node(i), params);
    return q;
}

Samples compute_Q_dual(const FlowState& state, const PhysParams& params, const RadialGrid& grid) {
    const Samples ur = radial_derivative(state.u, grid);
    Samples usq(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        usq[i] = state.u[i] * state.u[i];
    const Samples dusq = radial_derivative(usq, grid);
    Samples q(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.node(i);
        const double div = ur[i] + state.u[i] / r;
        q[i] = params.nu() * div * div - (2.0 * params.mu / r) * dusq[i];
    }
    return q;
}

double cfl_dt(const FlowState& state, const PhysParams& params, const RadialGrid& grid,
              const SolverConfig& config) {
    double speed = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        speed = std::max(speed, std::abs(state.u[i]) + std::sqrt(params.K * state.theta[i]));
    if (speed <= 0.0) return config.dt_max;
    return std::min(config.cfl * grid.min_spacing() / speed, config.dt_max);
}

namespace {

// Thomas solve of a tridiagonal system; checks diagonal dominance since a
// violation signals an over-long step.
void solve_tridiagonal(Samples& lower, Samples& diag, Samples& upper, Samples& rhs,
                       double t_now) {
    const std::size_t n = diag.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double off = (i > 0 ? std::abs(lower[i]) : 0.0) +
                           (i + 1 < n ? std::abs(upper[i]) : 0.0);
        if (!(diag[i] > 0.0) || off > diag[i] * (1.0 + 1e-12))
            throw SolverError("implicit solve lost diagonal dominance (dt too large)", t_now);
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

struct FaceData {
    Samples mass_flux;            // r~ u~ rho_up per interior face
    std::vector<std::size_t> up;  // upwind node per face
};

FaceData mass_faces(const RadialGrid& grid, const FlowState& s) {
    const std::size_t n = grid.size();
    FaceData f;
    f.mass_flux.assign(n - 1, 0.0);
    f.up.assign(n - 1, 0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double rf = 0.5 * (grid.node(k) + grid.node(k + 1));
        const double uf = 0.5 * (s.u[k] + s.u[k + 1]);
        const double a = rf * uf;
        const std::size_t up = a >= 0.0 ? k : k + 1;
        f.mass_flux[k] = a * s.rho[up];
        f.up[k] = up;
    }
    return f;
}

} // namespace

FlowState step(const RadialGrid& grid, const FlowState& state, const PhysParams& params,
               const Forcing& forcing, const Sources* sources, double dt,
               const SolverConfig& config, StepDiagnostics* diag) {
    if (!(dt > 0.0))
        throw std::invalid_argument("step: dt must be positive");
    const std::size_t n = grid.size();
    const Samples& r = grid.nodes();
    const Samples& w = grid.weights();
    const double t = state.t;
    const double nu = params.nu();

    // (i) conservative transport of rho and rho u; boundary fluxes vanish
    // with u = 0 at the endpoints, so the r-weighted totals telescope.
    const FaceData faces = mass_faces(grid, state);
    Samples rho_new(n), mom(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double fl = i > 0 ? faces.mass_flux[i - 1] : 0.0;
        const double fr = i + 1 < n ? faces.mass_flux[i] : 0.0;
        const double fl_m = i > 0 ? faces.mass_flux[i - 1] * state.u[faces.up[i - 1]] : 0.0;
        const double fr_m = i + 1 < n ? faces.mass_flux[i] * state.u[faces.up[i]] : 0.0;
        rho_new[i] = state.rho[i] - dt * (fr - fl) / w[i];
        mom[i] = state.rho[i] * state.u[i] - dt * (fr_m - fl_m) / w[i];
    }
    if (sources && sources->mass)
        for (std::size_t i = 0; i < n; ++i)
            rho_new[i] += dt * sources->mass(t, r[i]);

    // (ii) pressure and force kicks on interior nodes. uhat is the midpoint
    // velocity of the pressure kick; pairing it with the sbp derivative in
    // the work term below makes the pressure-work exchange exact.
    Samples pressure(n);
    for (std::size_t i = 0; i < n; ++i)
        pressure[i] = params.K * rho_new[i] * state.theta[i];
    const Samples dp = sbp_derivative(pressure, grid);
    Samples uhat(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double u_pre = mom[i] / rho_new[i];
        uhat[i] = u_pre - 0.5 * dt * dp[i] / rho_new[i];
        mom[i] -= dt * dp[i];
        double force = rho_new[i] * forcing(t, r[i]);
        if (sources && sources->momentum) force += sources->momentum(t, r[i]);
        mom[i] += dt * force;
    }
    Samples u_star(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i)
        u_star[i] = mom[i] / rho_new[i];

    // (iii) implicit viscous solve in delta form: constants and the zero
    // field are exact fixed points of the whole step.
    Samples u_new = u_star;
    if (n > 2) {
        const std::size_t m = n - 2;
        Samples lo(m), di(m), up(m), rhs(m);
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t i = j + 1;
            const double hm = r[i] - r[i - 1];
            const double hp = r[i + 1] - r[i];
            const double a2 = 2.0 / (hm * (hm + hp));
            const double c2 = 2.0 / (hp * (hm + hp));
            const double b2 = -(a2 + c2);
            const double a1 = -hp / (hm * (hm + hp));
            const double c1 = hm / (hp * (hm + hp));
            const double b1 = -(a1 + c1);
            const double La = nu * (a2 + a1 / r[i]);
            const double Lb = nu * (b2 + b1 / r[i] - 1.0 / (r[i] * r[i]));
            const double Lc = nu * (c2 + c1 / r[i]);
            lo[j] = -La;
            di[j] = rho_new[i] / dt - Lb;
            up[j] = -Lc;
            rhs[j] = La * u_star[i - 1] + Lb * u_star[i] + Lc * u_star[i + 1];
        }
        solve_tridiagonal(lo, di, up, rhs, t);
        for (std::size_t j = 0; j < m; ++j)
            u_new[j + 1] = u_star[j + 1] + rhs[j];
    }

    // (iv) rho theta transport with the mass-flux upwinding of (i) so a
    // uniform temperature rides along exactly, then the work and heating.
    Samples q(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double fl = i > 0 ? faces.mass_flux[i - 1] * state.theta[faces.up[i - 1]] : 0.0;
        const double fr = i + 1 < n ? faces.mass_flux[i] * state.theta[faces.up[i]] : 0.0;
        q[i] = state.rho[i] * state.theta[i] - dt * (fr - fl) / w[i];
    }
    Samples ruhat(n);
    for (std::size_t i = 0; i < n; ++i)
        ruhat[i] = r[i] * uhat[i];
    const Samples dws = sbp_derivative(ruhat, grid);
    FlowState probe;
    probe.t = t;
    probe.rho = rho_new;
    probe.u = u_new;
    probe.theta = state.theta;
    const Samples heat = compute_Q(probe, params, grid);
    for (std::size_t i = 0; i < n; ++i) {
        double src = 0.0;
        if (sources && sources->heat) src = sources->heat(t, r[i]);
        q[i] += dt * (-pressure[i] * dws[i] / r[i] + heat[i] + src);
    }
    Samples theta_star(n);
    for (std::size_t i = 0; i < n; ++i)
        theta_star[i] = q[i] / rho_new[i];

    // (v) implicit conduction in flux form with zero-flux endpoint faces;
    // the r-weighted thermal total is conserved by this solve.
    Samples theta_new = theta_star;
    {
        Samples cond(n - 1);
        for (std::size_t k = 0; k + 1 < n; ++k)
            cond[k] = params.kappa * 0.5 * (r[k] + r[k + 1]) / (r[k + 1] - r[k]);
        Samples lo(n), di(n), up(n), rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double gl = i > 0 ? cond[i - 1] : 0.0;
            const double gr = i + 1 < n ? cond[i] : 0.0;
            lo[i] = -gl;
            di[i] = rho_new[i] * w[i] / dt + gl + gr;
            up[i] = -gr;
            const double left = i > 0 ? theta_star[i - 1] - theta_star[i] : 0.0;
            const double right = i + 1 < n ? theta_star[i + 1] - theta_star[i] : 0.0;
            rhs[i] = gl * left + gr * right;
        }
        solve_tridiagonal(lo, di, up, rhs, t);
        for (std::size_t i = 0; i < n; ++i)
            theta_new[i] = theta_star[i] + rhs[i];
    }

    FlowState out;
    out.t = t + dt;
    out.rho = std::move(rho_new);
    out.u = std::move(u_new);
    out.theta = std::move(theta_new);
    out.u.front() = 0.0;
    out.u.back() = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (out.rho[i] < config.floor_rho) {
            out.rho[i] = config.floor_rho;
            if (diag) ++diag->floor_rho_hits;
        }
        if (out.theta[i] < config.floor_theta) {
            out.theta[i] = config.floor_theta;
            if (diag) ++diag->floor_theta_hits;
        }
        if (!std::isfinite(out.rho[i]) || !std::isfinite(out.u[i]) || !std::isfinite(out.theta[i]))
            throw SolverError("non-finite state after step", t);
    }
    return out;
}

Trajectory run(const RadialGrid& grid, const FlowState& initial, const PhysParams& params,
               const Forcing& forcing, const SolverConfig& config, const Sources* sources) {
    params.validate();
    config.validate();
    initial.validate(grid);

    Trajectory traj{params, grid, {}, {}, {}};
    traj.states.push_back(initial);
    FlowState current = initial;
    const double t_end = initial.t + config.t_end;

    std::size_t steps_since_output = 0;
    while (current.t < t_end - 1e-14 * config.t_end) {
        double dt = cfl_dt(current, params, grid, config);
        if (dt < config.dt_max) ++traj.diagnostics.cfl_limited_steps;
        dt = std::min(dt, t_end - current.t);
        try {
            current = step(grid, current, params, forcing, sources, dt, config,
                           &traj.diagnostics);
        } catch (const SolverError&) {
            throw;
        } catch (const std::exception& e) {
            throw SolverError(e.what(), current.t);
        }
        traj.dt_history.push_back(dt);
        ++traj.diagnostics.total_steps;
        if (++steps_since_output == config.out_every) {
            traj.states.push_back(current);
            steps_since_output = 0;
        }
    }
    if (traj.states.back().t < current.t)
        traj.states.push_back(current);
    return traj;
}

} // namespace radflow
