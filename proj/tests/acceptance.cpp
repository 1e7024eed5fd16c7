// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, not configurable.

#include "radflow/continuation.hpp"
#include "radflow/functionals.hpp"
#include "radflow/initial_data.hpp"
#include "radflow/manufactured.hpp"
#include "radflow/orlicz.hpp"
#include "radflow/solver.hpp"
#include "radflow/verification.hpp"

#include "support/zoo.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace radflow;
using radflow::testing::seeded_state;
using radflow::testing::zoo_trajectories;

namespace {

int g_failures = 0;

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void report(int id, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    std::printf("%s c%02d %-28s %s (%.1fs)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

struct MmsRun {
    std::size_t n;
    RadialGrid grid;
    Trajectory traj;
};

const PhysParams kMmsParams{0.1, 0.0, 0.1, 1.0};

// MMS runs with dense output cadence, shared by criteria 6 and 10.
const std::vector<MmsRun>& mms_runs() {
    static const std::vector<MmsRun> cache = [] {
        std::vector<MmsRun> out;
        const ExactRadialFields fields = make_default_manufactured(0.1, 1.0);
        const Sources sources = manufactured_sources(fields, kMmsParams, 0.1, 1.0, 0.25);
        for (std::size_t n : {201u, 401u, 801u}) {
            RadialGrid grid = make_uniform_grid(0.1, 1.0, n);
            SolverConfig cfg;
            cfg.t_end = 0.25;
            cfg.dt_max = 0.25 * grid.min_spacing();
            cfg.cfl = 0.9;
            cfg.out_every = 5;
            Trajectory traj = run(grid, sample_exact_state(fields, grid, 0.0), kMmsParams,
                                  Forcing(), cfg, &sources);
            out.push_back({n, std::move(grid), std::move(traj)});
        }
        return out;
    }();
    return cache;
}

void c1_constant_state() {
    const double t0 = now_seconds();
    const RadialGrid grid = make_uniform_grid(0.1, 1.0, 201);
    FlowState init;
    init.rho.assign(grid.size(), 1.0);
    init.u.assign(grid.size(), 0.0);
    init.theta.assign(grid.size(), 1.0);
    SolverConfig cfg;
    cfg.t_end = 1.0;
    cfg.dt_max = 5e-3;
    cfg.out_every = 25;
    const Trajectory traj =
        run(grid, init, PhysParams{0.1, 0.0, 0.1, 1.0}, Forcing(), cfg);
    double dev = 0.0;
    for (const FlowState& s : traj.states)
        for (std::size_t i = 0; i < grid.size(); ++i)
            dev = std::max({dev, std::abs(s.rho[i] - 1.0), std::abs(s.u[i]),
                            std::abs(s.theta[i] - 1.0)});
    const double secs = now_seconds() - t0;
    report(1, "constant-state exactness", dev <= 1e-12 && secs < 5.0,
           "max deviation " + fmt(dev), secs);
}

void c2_mass_conservation() {
    const double t0 = now_seconds();
    const RadialGrid grid = make_uniform_grid(0.1, 1.0, 801);
    InitialDataSpec spec;
    spec.rho0 = make_named_profile("sine", 1.0, 0.1, 1.0);
    spec.u0 = make_named_profile("sine", 0.0, 0.1, 1.0);
    spec.theta0 = make_named_profile("gauss", 1.0, 0.1, 1.0);
    spec.C0 = 50.0;
    spec.M0 = profile_mass(spec.rho0, 1.0);
    spec.eps = 0.1;
    spec.delta = 0.025;
    FlowState init;
    init.rho = prepare_density(spec, grid);
    init.u = prepare_velocity(spec, grid);
    init.theta = prepare_temperature(spec, grid);
    SolverConfig cfg;
    cfg.t_end = 0.5;
    cfg.dt_max = 1e-3;
    cfg.out_every = 50;
    const Trajectory traj =
        run(grid, init, PhysParams{0.05, 0.0, 0.05, 1.0}, Forcing(), cfg);
    const double m0 = total_mass(traj.initial(), grid);
    double drift = 0.0;
    for (const FlowState& s : traj.states)
        drift = std::max(drift, std::abs(total_mass(s, grid) - m0) / m0);
    report(2, "mass conservation", drift <= 1e-8, "rel drift " + fmt(drift),
           now_seconds() - t0);
}

void c3_q_nonnegativity() {
    const double t0 = now_seconds();
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const RadialGrid grid = make_uniform_grid(0.1, 1.0, 101);
    double qmin = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const FlowState s = seeded_state(grid, 1000 + trial);
        PhysParams p;
        p.mu = 0.05 + 0.95 * unit(rng);
        p.lambda = -p.mu + (3.0 * p.mu) * unit(rng);  // mu + lambda >= 0
        p.kappa = 1.0;
        p.K = 1.0;
        const Samples q = compute_Q(s, p, grid);
        for (double v : q) qmin = std::min(qmin, v);
    }
    // dual-form agreement at discretization order on one smooth field
    const PhysParams p{0.3, -0.2, 1.0, 1.0};
    std::vector<double> hs, diffs;
    for (std::size_t n : {101u, 201u, 401u, 801u}) {
        const RadialGrid g = make_uniform_grid(0.1, 1.0, n);
        const FlowState s = seeded_state(g, 77);
        const Samples a = compute_Q(s, p, g);
        const Samples b = compute_Q_dual(s, p, g);
        double d = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            d = std::max(d, std::abs(a[i] - b[i]));
        hs.push_back(g.min_spacing());
        diffs.push_back(d);
    }
    const double slope = fit_order(hs, diffs);
    const bool pass = qmin >= -1e-14 && slope >= 0.9;
    report(3, "Q nonnegativity + dual form", pass,
           "min Q " + fmt(qmin) + ", dual slope " + fmt(slope), now_seconds() - t0);
}

void c4_entropy_budget() {
    const double t0 = now_seconds();
    double worst = -1e300;
    std::string where;
    for (const auto& [zcase, traj] : zoo_trajectories()) {
        if (!zcase.forcing.is_zero() || !zcase.smooth) continue;
        const EstimateReport rep =
            check_global_estimates(traj, zcase.params, zcase.forcing);
        for (const auto& e : rep.entries)
            if (e.name.rfind("entropy budget", 0) == 0 && e.value > worst) {
                worst = e.value;
                where = zcase.name;
            }
    }
    report(4, "entropy + dissipation budget", worst <= 1e-8,
           "worst rate " + fmt(worst) + " on " + where, now_seconds() - t0);
}

void c5_mms_convergence() {
    const double t0 = now_seconds();
    const MmsResult res =
        run_mms_study(0.1, 1.0, {101, 201, 401, 801}, kMmsParams, 0.5, 0.25);
    const double secs = now_seconds() - t0;
    const bool pass = res.order_rho >= 0.9 && res.order_u >= 0.9 &&
                      res.order_theta >= 0.9 && secs < 120.0;
    report(5, "manufactured convergence", pass,
           "orders rho " + fmt(res.order_rho) + ", u " + fmt(res.order_u) + ", theta " +
               fmt(res.order_theta),
           secs);
}

void c6_weak_residuals() {
    const double t0 = now_seconds();
    bool pass = true;
    std::ostringstream detail;

    // constant states: every residual at quadrature zero
    {
        const auto& [zcase, traj] = zoo_trajectories().front();
        double worst = 0.0;
        for (const TestFunction& tf :
             shipped_test_functions(traj.grid.eps(), traj.grid.outer())) {
            worst = std::max(worst, weak_residual_mass(traj, tf));
            if (tf.vanishes_inner && tf.vanishes_outer)
                worst = std::max(worst, std::abs(weak_residual_momentum(
                                                     traj, zcase.params, zcase.forcing, tf)
                                                     .total()));
            if (tf.support_min >= traj.grid.eps() + 0.05)
                worst = std::max(worst, weak_residual_energy(traj, zcase.params,
                                                             zcase.forcing, tf, 0.05));
        }
        pass = pass && worst <= 1e-10;
        detail << "const worst " << fmt(worst);
    }

    // manufactured runs: slopes per form over the library
    const ExactRadialFields fields = make_default_manufactured(0.1, 1.0);
    const Sources sources = manufactured_sources(fields, kMmsParams, 0.1, 1.0, 0.25);
    double min_slope = 1e300;
    const auto& runs = mms_runs();
    for (const TestFunction& tf : shipped_test_functions(0.1, 1.0)) {
        std::vector<double> hs, rm, rp, re;
        for (const MmsRun& mr : runs) {
            hs.push_back(mr.grid.min_spacing());
            rm.push_back(weak_residual_mass(mr.traj, tf, &sources));
            if (tf.vanishes_inner && tf.vanishes_outer)
                rp.push_back(std::abs(
                    weak_residual_momentum(mr.traj, kMmsParams, Forcing(), tf, &sources)
                        .total()));
            if (tf.support_min >= mr.grid.eps() + 0.05)
                re.push_back(weak_residual_energy(mr.traj, kMmsParams, Forcing(), tf, 0.05,
                                                  &sources));
        }
        // sequences already at the floating-point floor count as converged
        auto floored = [](const std::vector<double>& r) {
            for (double v : r)
                if (v > 1e-12) return false;
            return true;
        };
        if (!floored(rm)) min_slope = std::min(min_slope, fit_order(hs, rm));
        if (rp.size() == hs.size() && !floored(rp))
            min_slope = std::min(min_slope, fit_order(hs, rp));
        if (re.size() == hs.size() && !floored(re))
            min_slope = std::min(min_slope, fit_order(hs, re));
    }
    pass = pass && min_slope >= 0.9;
    detail << ", min slope " << fmt(min_slope);
    report(6, "weak-form residuals", pass, detail.str(), now_seconds() - t0);
}

void c7_orlicz_closed_form() {
    const double t0 = now_seconds();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto inverse = [](YoungKind kind, double target) {
        double lo = 0.0, hi = 1.0;
        while (young_eval(kind, hi) < target) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (young_eval(kind, mid) < target ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    double worst_rel = 0.0;
    for (int pair = 0; pair < 50; ++pair) {
        const double eps = 1e-6 + 0.3 * unit(rng);
        const double R = eps + 0.4 + 1.2 * unit(rng);
        const double a = 0.1 + 5.0 * unit(rng);
        const RadialGrid grid = make_uniform_grid(eps, R, 801);
        const double area = annulus_area(grid);
        for (YoungKind kind : {YoungKind::M, YoungKind::N, YoungKind::H}) {
            const double k = luxemburg_norm(Samples(grid.size(), a), grid, kind, 1e-12);
            const double expected = a / inverse(kind, 1.0 / area);
            worst_rel = std::max(worst_rel, std::abs(k - expected) / expected);
        }
    }
    bool props = true;
    const RadialGrid grid = make_uniform_grid(0.1, 1.0, 101);
    for (int trial = 0; trial < 1000; ++trial) {
        Samples u(grid.size()), v(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            u[i] = unit(rng);
            v[i] = u[i] + unit(rng);
        }
        const double a = 0.25 + 2.0 * unit(rng);
        Samples au(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) au[i] = a * u[i];
        const YoungKind kind =
            trial % 3 == 0 ? YoungKind::M : (trial % 3 == 1 ? YoungKind::N : YoungKind::H);
        const double nu = luxemburg_norm(u, grid, kind, 1e-11);
        const double nau = luxemburg_norm(au, grid, kind, 1e-11);
        const double nv = luxemburg_norm(v, grid, kind, 1e-11);
        if (std::abs(nau - a * nu) > 1e-8 * std::max(1.0, nau)) props = false;
        if (nu > nv * (1.0 + 1e-9) + 1e-12) props = false;
    }
    report(7, "Luxemburg closed form", worst_rel <= 1e-9 && props,
           "worst rel " + fmt(worst_rel) + (props ? ", props ok" : ", props FAILED"),
           now_seconds() - t0);
}

void c8_omega_bound() {
    const double t0 = now_seconds();
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    bool pass = true;
    double worst_margin = -1e300;
    for (const auto& [zcase, traj] : zoo_trajectories()) {
        const RadialGrid& grid = traj.grid;
        const Samples& w = grid.weights();
        for (const FlowState& s : traj.states) {
            double clog = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i)
                clog += w[i] * s.rho[i] * std::log(s.rho[i]);
            clog = std::abs(clog);
            for (int region = 0; region < 20; ++region) {
                double a = grid.eps() + (grid.outer() - grid.eps()) * unit(rng);
                double b = grid.eps() + (grid.outer() - grid.eps()) * unit(rng);
                if (a > b) std::swap(a, b);
                double lhs = 0.0, meas = 0.0;
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    if (grid.node(i) < a || grid.node(i) > b) continue;
                    lhs += w[i] * s.rho[i];
                    meas += w[i];
                }
                if (meas <= 0.0) continue;
                const double bound = omega(meas, clog);
                worst_margin = std::max(worst_margin, lhs - bound);
                if (lhs > bound * (1.0 + 1e-12)) pass = false;
            }
        }
    }
    report(8, "omega/G uniform integrability", pass, "worst lhs-bound " + fmt(worst_margin),
           now_seconds() - t0);
}

void c9_log_embedding() {
    const double t0 = now_seconds();
    bool pass = true;
    double worst = 0.0;
    for (const auto& [zcase, traj] : zoo_trajectories())
        for (const FlowState& s : traj.states)
            for (double q : {1.0, 2.0, 4.0}) {
                const LogEmbedding le = log_embedding_bound(s.theta, traj.grid, q);
                if (!(le.lq <= le.bound)) pass = false;
                if (std::isfinite(le.bound))
                    worst = std::max(worst, le.lq / le.bound);
            }
    report(9, "log-embedding bound", pass, "max lq/bound " + fmt(worst),
           now_seconds() - t0);
}

void c10_particle_paths() {
    const double t0 = now_seconds();
    const auto& runs = mms_runs();
    std::vector<double> hs, errs;
    bool monotone = true;
    for (const MmsRun& mr : runs) {
        const double m = total_mass(mr.traj.initial(), mr.grid);
        const ParticlePath path = particle_path(mr.traj, 0.3 * m);
        double err = 0.0;
        for (std::size_t k = 1; k + 1 < path.times.size(); ++k) {
            const double slope = (path.radii[k + 1] - path.radii[k - 1]) /
                                 (path.times[k + 1] - path.times[k - 1]);
            // u at (t_k, r_h(t_k)) from the recorded state
            const FlowState& s = mr.traj.states[k];
            const Samples& x = mr.grid.nodes();
            std::size_t lo = 0, hi = mr.grid.size() - 1;
            while (hi - lo > 1) {
                const std::size_t mid = (lo + hi) / 2;
                (x[mid] <= path.radii[k] ? lo : hi) = mid;
            }
            const double frac = (path.radii[k] - x[lo]) / (x[lo + 1] - x[lo]);
            const double u = (1.0 - frac) * s.u[lo] + frac * s.u[lo + 1];
            err = std::max(err, std::abs(slope - u));
        }
        hs.push_back(mr.grid.min_spacing());
        errs.push_back(err);
        for (std::size_t k = 0; k < mr.traj.states.size(); ++k) {
            double prev = 0.0;
            for (double frac : {0.2, 0.4, 0.6, 0.8}) {
                const double r = mass_radius(mr.traj.states[k], mr.grid, frac * m);
                if (r <= prev) monotone = false;
                prev = r;
            }
        }
    }
    const bool decreasing = errs.front() / errs.back() >= 2.0;
    report(10, "particle-path consistency", decreasing && monotone,
           "slope errors " + fmt(errs.front()) + " -> " + fmt(errs.back()) +
               (monotone ? ", monotone" : ", NOT monotone"),
           now_seconds() - t0);
}

void c11_continuation() {
    const double t0 = now_seconds();
    ContinuationPlan plan;
    plan.eps_sequence = {0.2, 0.1, 0.05, 0.025};
    plan.R = 1.0;
    plan.h_target = 1.0 / 400.0;
    plan.t_end = 0.5;
    plan.params = {0.05, 0.0, 0.05, 1.0};
    plan.rho0 = make_named_profile("sine", 1.0, 0.1, 1.0);
    plan.u0 = make_named_profile("sine", 0.0, 0.15, 1.0);
    plan.theta0 = make_named_profile("gauss", 1.0, 0.1, 1.0);
    plan.solver.dt_max = 1e-3;
    plan.solver.out_every = 20;
    plan.h_probes = {0.08, 0.04, 0.02, 0.01};
    const std::vector<Trajectory> family = run_sequence(plan);

    std::vector<double> sups;
    for (std::size_t j = 0; j + 1 < family.size(); ++j)
        sups.push_back(
            overlap_distance(family[j], family[j + 1], 0.3, 0.1, 0.5).sup);
    bool decreasing = true;
    for (std::size_t j = 0; j + 1 < sups.size(); ++j)
        if (sups[j + 1] > sups[j]) decreasing = false;

    double mmin = 1e300, mmax = 0.0;
    for (const Trajectory& traj : family) {
        const double m = total_mass(traj.final_state(), traj.grid);
        mmin = std::min(mmin, m);
        mmax = std::max(mmax, m);
    }
    const double mass_spread = (mmax - mmin) / mmax;
    const double secs = now_seconds() - t0;
    const bool pass = decreasing && mass_spread <= 1e-8 && secs < 600.0;
    std::ostringstream detail;
    detail << "sup distances";
    for (double s : sups) detail << ' ' << fmt(s);
    detail << ", mass spread " << fmt(mass_spread);
    report(11, "continuation Cauchy behavior", pass, detail.str(), secs);
}

void c12_hoelder_sanity() {
    const double t0 = now_seconds();
    Samples t(256), lin(256), root(256);
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] = static_cast<double>(i) / 255.0;
        lin[i] = t[i];
        root[i] = std::sqrt(t[i]);
    }
    const double a1 = hoelder_exponent(t, lin).alpha;
    const double a2 = hoelder_exponent(t, root).alpha;
    const bool pass = std::abs(a1 - 1.0) <= 0.05 && std::abs(a2 - 0.5) <= 0.05;
    report(12, "Hoelder estimator sanity", pass,
           "alpha(t)=" + fmt(a1) + ", alpha(sqrt t)=" + fmt(a2), now_seconds() - t0);
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    c1_constant_state();
    c2_mass_conservation();
    c3_q_nonnegativity();
    c4_entropy_budget();
    c5_mms_convergence();
    c6_weak_residuals();
    c7_orlicz_closed_form();
    c8_omega_bound();
    c9_log_embedding();
    c10_particle_paths();
    c11_continuation();
    c12_hoelder_sanity();
    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
