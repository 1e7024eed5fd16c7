#include "radflow/manufactured.hpp"

#include <cmath>
#include <stdexcept>

namespace radflow {

namespace {

void check_endpoint_compatibility(const ExactRadialFields& f, double eps, double R,
                                  double t_end) {
    for (int k = 0; k <= 8; ++k) {
        const double t = t_end * static_cast<double>(k) / 8.0;
        for (double r : {eps, R}) {
            if (std::abs(f.u(t, r)) > 1e-10)
                throw std::invalid_argument(
                    "manufactured_sources: exact velocity must vanish at the endpoints");
            if (std::abs(f.theta_r(t, r)) > 1e-10)
                throw std::invalid_argument(
                    "manufactured_sources: exact temperature slope must vanish at the endpoints");
        }
    }
}

} // namespace

Sources manufactured_sources(const ExactRadialFields& f, const PhysParams& params,
                             double eps, double R, double t_end) {
    check_endpoint_compatibility(f, eps, R, t_end);
    const double nu = params.nu();
    const double K = params.K;
    const double kap = params.kappa;
    const double mu = params.mu;
    const double lam = params.lambda;

    Sources s;
    s.mass = [f](double t, double r) {
        return f.rho_t(t, r) + f.rho_r(t, r) * f.u(t, r) + f.rho(t, r) * f.u_r(t, r) +
               f.rho(t, r) * f.u(t, r) / r;
    };
    s.momentum = [f, nu, K](double t, double r) {
        const double rho = f.rho(t, r), u = f.u(t, r);
        const double ur = f.u_r(t, r), urr = f.u_rr(t, r);
        const double transport = f.rho_t(t, r) * u + rho * f.u_t(t, r) +
                                 f.rho_r(t, r) * u * u + 2.0 * rho * u * ur +
                                 rho * u * u / r;
        const double pr = K * (f.rho_r(t, r) * f.theta(t, r) + rho * f.theta_r(t, r));
        const double visc = nu * (urr + ur / r - u / (r * r));
        return transport + pr - visc;
    };
    s.heat = [f, K, kap, mu, lam](double t, double r) {
        const double rho = f.rho(t, r), u = f.u(t, r), th = f.theta(t, r);
        const double ur = f.u_r(t, r), thr = f.theta_r(t, r);
        const double transport = f.rho_t(t, r) * th + rho * f.theta_t(t, r) +
                                 f.rho_r(t, r) * u * th + rho * ur * th + rho * u * thr +
                                 rho * u * th / r;
        const double conduction = kap * (f.theta_rr(t, r) + thr / r);
        const double div = ur + u / r;
        const double work = K * rho * th * div;
        const double q = lam * div * div + 2.0 * mu * (ur * ur + (u / r) * (u / r));
        return transport - conduction + work - q;
    };
    return s;
}

ExactRadialFields make_default_manufactured(double eps, double R) {
    // Built so the mass equation is satisfied identically: with
    //   r rho = r + beta(t) B_r(r),   r rho u = -beta'(t) B(r),
    // and B(eps) = B(R), the continuity residual is (m_t + w_r)/r = 0 and
    // u vanishes at both endpoints. The only manufactured sources live in
    // the momentum and temperature equations.
    const double xi = M_PI / (R - eps);
    const double b0 = 0.02, om = 2.0;
    const double a_th = 0.2, alpha = 0.5;

    auto beta = [b0, om](double t) { return b0 * std::cos(om * t); };
    auto beta_t = [b0, om](double t) { return -b0 * om * std::sin(om * t); };
    auto beta_tt = [b0, om](double t) { return -b0 * om * om * std::cos(om * t); };
    auto B = [xi, eps](double r) {
        const double s = std::sin(xi * (r - eps));
        return s * s;
    };
    auto Br = [xi, eps](double r) { return xi * std::sin(2.0 * xi * (r - eps)); };
    auto Brr = [xi, eps](double r) {
        return 2.0 * xi * xi * std::cos(2.0 * xi * (r - eps));
    };
    auto Brrr = [xi, eps](double r) {
        return -4.0 * xi * xi * xi * std::sin(2.0 * xi * (r - eps));
    };
    auto m = [beta, Br](double t, double r) { return r + beta(t) * Br(r); };
    auto w = [beta_t, B](double t, double r) { return -beta_t(t) * B(r); };

    ExactRadialFields f;
    f.rho = [m](double t, double r) { return m(t, r) / r; };
    f.rho_t = [beta_t, Br](double t, double r) { return beta_t(t) * Br(r) / r; };
    f.rho_r = [m, beta, Brr](double t, double r) {
        const double mr = 1.0 + beta(t) * Brr(r);
        return (mr - m(t, r) / r) / r;
    };

    f.u = [w, m](double t, double r) { return w(t, r) / m(t, r); };
    f.u_t = [w, m, beta_t, beta_tt, B, Br](double t, double r) {
        const double wt = -beta_tt(t) * B(r);
        const double mt = beta_t(t) * Br(r);
        const double mm = m(t, r);
        return wt / mm - w(t, r) * mt / (mm * mm);
    };
    f.u_r = [w, m, beta, beta_t, Br, Brr](double t, double r) {
        const double wr = -beta_t(t) * Br(r);
        const double mr = 1.0 + beta(t) * Brr(r);
        const double mm = m(t, r);
        return wr / mm - w(t, r) * mr / (mm * mm);
    };
    f.u_rr = [w, m, beta, beta_t, Br, Brr, Brrr](double t, double r) {
        const double wr = -beta_t(t) * Br(r);
        const double wrr = -beta_t(t) * Brr(r);
        const double mr = 1.0 + beta(t) * Brr(r);
        const double mrr = beta(t) * Brrr(r);
        const double mm = m(t, r);
        const double ww = w(t, r);
        return wrr / mm - 2.0 * wr * mr / (mm * mm) - ww * mrr / (mm * mm) +
               2.0 * ww * mr * mr / (mm * mm * mm);
    };

    f.theta = [a_th, alpha, B](double t, double r) {
        return 1.0 + a_th * std::exp(-alpha * t) * B(r);
    };
    f.theta_t = [a_th, alpha, B](double t, double r) {
        return -alpha * a_th * std::exp(-alpha * t) * B(r);
    };
    f.theta_r = [a_th, alpha, Br](double t, double r) {
        return a_th * std::exp(-alpha * t) * Br(r);
    };
    f.theta_rr = [a_th, alpha, Brr](double t, double r) {
        return a_th * std::exp(-alpha * t) * Brr(r);
    };
    return f;
}

FlowState sample_exact_state(const ExactRadialFields& f, const RadialGrid& grid, double t) {
    FlowState s;
    s.t = t;
    s.rho.resize(grid.size());
    s.u.resize(grid.size());
    s.theta.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.node(i);
        s.rho[i] = f.rho(t, r);
        s.u[i] = f.u(t, r);
        s.theta[i] = f.theta(t, r);
    }
    s.u.front() = 0.0;
    s.u.back() = 0.0;
    return s;
}

DiscreteResidual manufactured_discrete_residual(const ExactRadialFields& f,
                                                const PhysParams& params,
                                                const RadialGrid& grid, double t) {
    const Sources src = manufactured_sources(f, params, grid.eps(), grid.outer(), t);
    const std::size_t n = grid.size();
    Samples rho(n), u(n), theta(n), mom(n), rth(n), pressure(n), usq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = grid.node(i);
        rho[i] = f.rho(t, r);
        u[i] = f.u(t, r);
        theta[i] = f.theta(t, r);
        mom[i] = rho[i] * u[i];
        rth[i] = rho[i] * theta[i];
        pressure[i] = params.K * rho[i] * theta[i];
        usq[i] = u[i] * u[i];
    }
    const Samples du = radial_derivative(u, grid);
    const Samples dmom_u = radial_derivative([&] {
        Samples v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = mom[i] * u[i];
        return v;
    }(), grid);
    const Samples dmom = radial_derivative(mom, grid);
    const Samples drthu = radial_derivative([&] {
        Samples v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = rth[i] * u[i];
        return v;
    }(), grid);
    const Samples dp = radial_derivative(pressure, grid);
    const Samples dtheta = radial_derivative(theta, grid);
    // interior three-point second differences, the stencil the implicit
    // solves are built from
    auto second_diff = [&](const Samples& f, std::size_t i) {
        const double hm = grid.node(i) - grid.node(i - 1);
        const double hp = grid.node(i + 1) - grid.node(i);
        const double a2 = 2.0 / (hm * (hm + hp));
        const double c2 = 2.0 / (hp * (hm + hp));
        return a2 * (f[i - 1] - f[i]) + c2 * (f[i + 1] - f[i]);
    };

    DiscreteResidual res{0.0, 0.0, 0.0};
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double r = grid.node(i);
        const double mass = f.rho_t(t, r) + dmom[i] + mom[i] / r - src.mass(t, r);
        const double div = du[i] + u[i] / r;
        const double q = params.lambda * div * div +
                         2.0 * params.mu * (du[i] * du[i] + (u[i] / r) * (u[i] / r));
        const double momentum = f.rho_t(t, r) * u[i] + rho[i] * f.u_t(t, r) + dmom_u[i] +
                                mom[i] * u[i] / r + dp[i] -
                                params.nu() *
                                    (second_diff(u, i) + du[i] / r - u[i] / (r * r)) -
                                src.momentum(t, r);
        const double heat = f.rho_t(t, r) * theta[i] + rho[i] * f.theta_t(t, r) + drthu[i] +
                            rth[i] * u[i] / r -
                            params.kappa * (second_diff(theta, i) + dtheta[i] / r) +
                            pressure[i] * div - q - src.heat(t, r);
        res.mass = std::max(res.mass, std::abs(mass));
        res.momentum = std::max(res.momentum, std::abs(momentum));
        res.heat = std::max(res.heat, std::abs(heat));
    }
    return res;
}

FieldErrors l2_errors(const FlowState& state, const ExactRadialFields& f,
                      const RadialGrid& grid) {
    const std::size_t n = grid.size();
    Samples er(n), eu(n), eth(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = grid.node(i);
        er[i] = std::pow(state.rho[i] - f.rho(state.t, r), 2);
        eu[i] = std::pow(state.u[i] - f.u(state.t, r), 2);
        eth[i] = std::pow(state.theta[i] - f.theta(state.t, r), 2);
    }
    return {std::sqrt(integrate_radial(er, grid)), std::sqrt(integrate_radial(eu, grid)),
            std::sqrt(integrate_radial(eth, grid))};
}

double fit_order(const std::vector<double>& h, const std::vector<double>& err) {
    if (h.size() != err.size() || h.size() < 2)
        throw std::invalid_argument("fit_order: need matching samples, >= 2");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double x = std::log(h[i]);
        const double y = std::log(std::max(err[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

MmsResult run_mms_study(double eps, double R, const std::vector<std::size_t>& sizes,
                        const PhysParams& params, double t_end, double dt_over_h) {
    const ExactRadialFields fields = make_default_manufactured(eps, R);
    const Sources sources = manufactured_sources(fields, params, eps, R, t_end);

    MmsResult out;
    out.sizes = sizes;
    for (std::size_t n : sizes) {
        const RadialGrid grid = make_uniform_grid(eps, R, n);
        SolverConfig config;
        config.t_end = t_end;
        config.dt_max = dt_over_h * grid.min_spacing();
        config.cfl = 0.9;  // dt_max drives the step so dt scales with h
        config.out_every = 1000000;
        const FlowState initial = sample_exact_state(fields, grid, 0.0);
        const Trajectory traj = run(grid, initial, params, Forcing(), config, &sources);
        const FieldErrors e = l2_errors(traj.final_state(), fields, grid);
        out.h.push_back(grid.min_spacing());
        out.err_rho.push_back(e.rho);
        out.err_u.push_back(e.u);
        out.err_theta.push_back(e.theta);
    }
    out.order_rho = fit_order(out.h, out.err_rho);
    out.order_u = fit_order(out.h, out.err_u);
    out.order_theta = fit_order(out.h, out.err_theta);
    return out;
}

} // namespace radflow
