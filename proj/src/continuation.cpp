#include "radflow/continuation.hpp"

#include "radflow/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

namespace radflow {

void ContinuationPlan::validate() const {
    if (eps_sequence.empty())
        throw std::invalid_argument("ContinuationPlan: empty eps sequence");
    for (std::size_t j = 0; j + 1 < eps_sequence.size(); ++j)
        if (!(eps_sequence[j] > eps_sequence[j + 1]))
            throw std::invalid_argument("ContinuationPlan: eps must strictly decrease");
    for (double e : eps_sequence)
        if (!(e > 2.0 * h_target))
            throw std::invalid_argument("ContinuationPlan: eps below the resolvable scale");
    if (!(eps_sequence.front() < R))
        throw std::invalid_argument("ContinuationPlan: eps must stay below R");
    if (!rho0 || !u0 || !theta0)
        throw std::invalid_argument("ContinuationPlan: profiles required");
    params.validate();
}

namespace {

Trajectory run_one(const ContinuationPlan& plan, double eps) {
    const std::size_t n = std::max<std::size_t>(
        static_cast<std::size_t>(std::lround((plan.R - eps) / plan.h_target)) + 1, 9);
    const RadialGrid grid = plan.grade_ratio > 1.0
                                ? make_graded_grid(eps, plan.R, n, plan.grade_ratio)
                                : make_uniform_grid(eps, plan.R, n);

    InitialDataSpec spec;
    spec.rho0 = plan.rho0;
    spec.u0 = plan.u0;
    spec.theta0 = plan.theta0;
    spec.C0 = plan.C0;
    spec.M0 = profile_mass(plan.rho0, plan.R);
    spec.eps = eps;
    spec.delta = eps / 4.0;

    FlowState initial;
    initial.t = 0.0;
    initial.rho = prepare_density(spec, grid);
    initial.u = prepare_velocity(spec, grid);
    initial.theta = prepare_temperature(spec, grid);

    SolverConfig config = plan.solver;
    config.t_end = plan.t_end;
    return run(grid, initial, plan.params, plan.forcing, config);
}

} // namespace

std::vector<Trajectory> run_sequence(const ContinuationPlan& plan) {
    plan.validate();
    std::vector<Trajectory> family;
    family.reserve(plan.eps_sequence.size());
    if (plan.threads <= 1) {
        for (double eps : plan.eps_sequence)
            family.push_back(run_one(plan, eps));
        return family;
    }
    std::vector<std::future<Trajectory>> futures;
    futures.reserve(plan.eps_sequence.size());
    for (double eps : plan.eps_sequence)
        futures.push_back(std::async(std::launch::async,
                                     [&plan, eps] { return run_one(plan, eps); }));
    for (auto& f : futures)
        family.push_back(f.get());
    return family;
}

namespace {

double interp_nodes(const RadialGrid& grid, const Samples& f, double r) {
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

std::vector<std::pair<std::size_t, std::size_t>>
matched_states(const Trajectory& a, const Trajectory& b, double t0, double t1) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t j = 0;
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        const double t = a.states[i].t;
        if (t < t0 || t > t1) continue;
        while (j + 1 < b.states.size() && b.states[j].t < t - 1e-12) ++j;
        if (std::abs(b.states[j].t - t) <= 1e-9 * std::max(1.0, t))
            out.emplace_back(i, j);
    }
    if (out.empty())
        throw std::invalid_argument("overlap_distance: no matching recorded times");
    return out;
}

} // namespace

OverlapDistance overlap_distance(const Trajectory& ti, const Trajectory& tj, double a,
                                 double t0, double t1) {
    if (!(a > std::max(ti.grid.eps(), tj.grid.eps())))
        throw std::invalid_argument("overlap_distance: region must avoid both inner radii");
    const bool i_coarser = ti.grid.min_spacing() >= tj.grid.min_spacing();
    const Trajectory& coarse = i_coarser ? ti : tj;
    const Trajectory& fine = i_coarser ? tj : ti;
    const auto pairs = matched_states(coarse, fine, t0, t1);

    OverlapDistance out;
    double l2_acc = 0.0;
    double prev_t = coarse.states[pairs.front().first].t;
    double prev_row = 0.0;
    bool have_prev = false;
    for (const auto& [kc, kf] : pairs) {
        const FlowState& sc = coarse.states[kc];
        const FlowState& sf = fine.states[kf];
        const Samples cum_f = cumulative_mass(sf, fine.grid);
        const Samples cum_c = cumulative_mass(sc, coarse.grid);
        double row = 0.0;
        for (std::size_t i = 0; i < coarse.grid.size(); ++i) {
            const double r = coarse.grid.node(i);
            if (r < a) continue;
            const double du = sc.u[i] - interp_nodes(fine.grid, sf.u, r);
            const double dth = sc.theta[i] - interp_nodes(fine.grid, sf.theta, r);
            out.sup = std::max({out.sup, std::abs(du), std::abs(dth)});
            row += coarse.grid.weights()[i] * (du * du + dth * dth);
            const double dcum = cum_c[i] - interp_nodes(fine.grid, cum_f, r);
            out.rho_weak = std::max(out.rho_weak, std::abs(dcum));
        }
        if (have_prev)
            l2_acc += 0.5 * (sc.t - prev_t) * (row + prev_row);
        prev_t = sc.t;
        prev_row = row;
        have_prev = true;
    }
    out.l2 = std::sqrt(std::max(l2_acc, 0.0));
    return out;
}

VacuumCurve estimate_vacuum_boundary(const std::vector<Trajectory>& family,
                                     const Samples& h_probes) {
    if (family.empty())
        throw std::invalid_argument("estimate_vacuum_boundary: empty family");
    if (h_probes.size() < 2)
        throw std::invalid_argument("estimate_vacuum_boundary: need >= 2 probes");
    for (std::size_t k = 0; k + 1 < h_probes.size(); ++k)
        if (!(h_probes[k] > h_probes[k + 1]))
            throw std::invalid_argument("estimate_vacuum_boundary: probes must decrease");

    // smallest-eps member carries the most of the limit
    const Trajectory* best = &family.front();
    for (const Trajectory& t : family)
        if (t.grid.eps() < best->grid.eps()) best = &t;

    VacuumCurve curve;
    for (const FlowState& s : best->states) {
        Samples radii(h_probes.size());
        for (std::size_t k = 0; k < h_probes.size(); ++k)
            radii[k] = mass_radius(s, best->grid, h_probes[k]);
        for (std::size_t k = 0; k + 1 < h_probes.size(); ++k)
            if (radii[k] < radii[k + 1] - 1e-14)
                curve.monotone_probes = false;
        // least squares of r_h against sqrt(h): intercept is the estimate
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        const double m = static_cast<double>(h_probes.size());
        for (std::size_t k = 0; k < h_probes.size(); ++k) {
            const double x = std::sqrt(h_probes[k]);
            sx += x;
            sy += radii[k];
            sxx += x * x;
            sxy += x * radii[k];
        }
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        const double intercept = (sy - slope * sx) / m;
        double resid = 0.0;
        for (std::size_t k = 0; k < h_probes.size(); ++k) {
            const double fit = intercept + slope * std::sqrt(h_probes[k]);
            resid += (radii[k] - fit) * (radii[k] - fit);
        }
        curve.times.push_back(s.t);
        curve.r_lower.push_back(std::max(intercept, 0.0));
        curve.fit_residual.push_back(std::sqrt(resid / m));
    }
    if (curve.times.size() >= 16) {
        const HoelderFit fit = hoelder_exponent(curve.times, curve.r_lower);
        // the curve type ranges over (0, 1]; the raw fit is descriptive and
        // can overshoot slightly on near-Lipschitz data
        curve.alpha = std::clamp(fit.alpha, 1e-6, 1.0);
        curve.hoelder_C = fit.C;
    }
    return curve;
}

HoelderFit hoelder_exponent(const Samples& times, const Samples& values) {
    if (times.size() != values.size() || times.size() < 16)
        throw std::invalid_argument("hoelder_exponent: need >= 16 samples");
    const std::size_t n = times.size();
    double vmax = 0.0;
    for (double v : values) vmax = std::max(vmax, std::abs(v));

    std::vector<double> log_tau, log_diff;
    for (std::size_t lag = 1; lag < n; lag *= 2) {
        double sup = 0.0, tau = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) {
            sup = std::max(sup, std::abs(values[i + lag] - values[i]));
            tau = std::max(tau, times[i + lag] - times[i]);
        }
        if (sup <= 1e-300 || tau <= 0.0) continue;
        log_tau.push_back(std::log(tau));
        log_diff.push_back(std::log(sup));
    }
    if (log_tau.size() < 2 || vmax == 0.0) {
        // constant (or near-constant) curve
        bool constant = true;
        for (double v : values)
            if (std::abs(v - values.front()) > 1e-14 * std::max(1.0, vmax)) constant = false;
        if (constant) return {1.0, 0.0};
        if (log_tau.size() < 2) return {1.0, 0.0};
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(log_tau.size());
    for (std::size_t k = 0; k < log_tau.size(); ++k) {
        sx += log_tau[k];
        sy += log_diff[k];
        sxx += log_tau[k] * log_tau[k];
        sxy += log_tau[k] * log_diff[k];
    }
    const double alpha = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double logc = (sy - alpha * sx) / m;
    return {alpha, std::exp(logc)};
}

} // namespace radflow
