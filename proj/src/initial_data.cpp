#include "radflow/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radflow {

void InitialDataSpec::validate() const {
    if (!rho0 || !u0 || !theta0)
        throw std::invalid_argument("InitialDataSpec: all three profiles required");
    if (!(C0 >= 1.0))
        throw std::invalid_argument("InitialDataSpec: C0 >= 1 required");
    if (!(M0 > 0.0))
        throw std::invalid_argument("InitialDataSpec: M0 > 0 required");
    if (!(eps > 0.0))
        throw std::invalid_argument("InitialDataSpec: eps > 0 required");
    if (!(delta > 0.0) || !(delta < eps))
        throw std::invalid_argument("InitialDataSpec: 0 < delta < eps required");
}

double psi_entropy(double s) {
    if (!(s > 0.0))
        throw std::invalid_argument("psi_entropy: argument must be positive");
    return s - std::log(s) - 1.0;
}

double entropy_density(double rho, double u, double theta, double K) {
    return K * psi_entropy(1.0 / rho) + psi_entropy(theta) + 0.5 * u * u;
}

Samples mollify(const Samples& padded, double spacing, double delta) {
    if (!(spacing > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("mollify: spacing and delta must be positive");
    const std::size_t m = static_cast<std::size_t>(std::floor(delta / spacing + 1e-12));
    if (padded.size() <= 2 * m)
        throw std::invalid_argument("mollify: insufficient padding for kernel support");
    if (m == 0) {
        return padded;  // kernel narrower than one cell degenerates to identity
    }
    Samples kernel(2 * m + 1, 0.0);
    double ksum = 0.0;
    for (std::size_t j = 0; j <= 2 * m; ++j) {
        const double s = (static_cast<double>(j) - static_cast<double>(m)) * spacing / delta;
        const double s2 = s * s;
        kernel[j] = s2 < 1.0 ? std::exp(-1.0 / (1.0 - s2)) : 0.0;
        ksum += kernel[j];
    }
    for (double& k : kernel) k /= ksum;

    Samples out(padded.size() - 2 * m, 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= 2 * m; ++j)
            acc += kernel[j] * padded[i + j];
        out[i] = acc;
    }
    return out;
}

namespace {

// Fine trapezoid of f(r) r dr over [a, b].
double fine_radial_integral(const RadialProfile& f, double a, double b, std::size_t n = 4001) {
    const double h = (b - a) / static_cast<double>(n - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = a + h * static_cast<double>(i);
        const double w = (i == 0 || i + 1 == n) ? 0.5 * h : h;
        acc += w * f(r) * r;
    }
    return acc;
}

double weighted_average(const RadialProfile& f, double a, double b) {
    const double mass = fine_radial_integral(f, a, b);
    const double meas = 0.5 * (b * b - a * a);
    return mass / meas;
}

struct AuxGrid {
    Samples x;       // uniform nodes, x[m] == eps
    double h;        // spacing
    std::size_t m;   // kernel radius in cells
};

// Uniform working grid that covers [eps - delta, R + delta] so the mollified
// values are valid on all of [eps, R].
AuxGrid make_aux_grid(const InitialDataSpec& spec, const RadialGrid& grid) {
    const double R = grid.outer();
    const double h = std::min(spec.delta / 8.0, grid.min_spacing());
    const std::size_t m = static_cast<std::size_t>(std::floor(spec.delta / h + 1e-12));
    const std::size_t inner =
        static_cast<std::size_t>(std::ceil((R - spec.eps) / h - 1e-12)) + 1;
    AuxGrid aux;
    aux.h = h;
    aux.m = m;
    aux.x.resize(inner + 2 * m + 1);
    for (std::size_t j = 0; j < aux.x.size(); ++j)
        aux.x[j] = spec.eps + (static_cast<double>(j) - static_cast<double>(m)) * h;
    return aux;
}

// Linear interpolation of the valid mollified samples onto the target grid.
Samples interp_to_grid(const Samples& values, const AuxGrid& aux, const RadialGrid& grid) {
    // values[k] lives at radius aux.x[k + aux.m]
    Samples out(grid.size(), 0.0);
    const double x0 = aux.x[aux.m];
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.node(i);
        double pos = (r - x0) / aux.h;
        std::size_t k = static_cast<std::size_t>(std::clamp(
            std::floor(pos), 0.0, static_cast<double>(values.size() - 2)));
        const double frac = std::clamp(pos - static_cast<double>(k), 0.0, 1.0);
        out[i] = (1.0 - frac) * values[k] + frac * values[k + 1];
    }
    return out;
}

} // namespace

Samples prepare_density(const InitialDataSpec& spec, const RadialGrid& grid) {
    spec.validate();
    const double R = grid.outer();
    const double avg = weighted_average(spec.rho0, spec.eps, R);
    const AuxGrid aux = make_aux_grid(spec, grid);
    Samples raw(aux.x.size());
    for (std::size_t j = 0; j < aux.x.size(); ++j) {
        const double r = aux.x[j];
        raw[j] = (r < spec.eps || r > R) ? avg : spec.rho0(r);
    }
    const Samples smooth = mollify(raw, aux.h, spec.delta);
    Samples rho = interp_to_grid(smooth, aux, grid);
    double rmin = rho[0];
    for (double v : rho) rmin = std::min(rmin, v);
    if (!(rmin > 0.0))
        throw std::runtime_error("prepare_density: nonpositive density after mollification");
    const double mass = integrate_radial(rho, grid);
    const double scale = spec.M0 / mass;
    for (double& v : rho) v *= scale;
    return rho;
}

Samples prepare_velocity(const InitialDataSpec& spec, const RadialGrid& grid) {
    spec.validate();
    const double R = grid.outer();
    const AuxGrid aux = make_aux_grid(spec, grid);
    Samples raw(aux.x.size());
    for (std::size_t j = 0; j < aux.x.size(); ++j) {
        const double r = aux.x[j];
        if (r <= 2.0 * spec.eps || r >= R - 2.0 * spec.delta)
            raw[j] = 0.0;
        else
            raw[j] = spec.u0(r);
    }
    const Samples smooth = mollify(raw, aux.h, spec.delta);
    Samples u = interp_to_grid(smooth, aux, grid);
    u.front() = 0.0;
    u.back() = 0.0;
    return u;
}

Samples prepare_temperature(const InitialDataSpec& spec, const RadialGrid& grid) {
    spec.validate();
    const double R = grid.outer();
    const double avg_in = weighted_average(spec.theta0, 0.0, 2.0 * spec.eps);
    const double avg_out = weighted_average(spec.theta0, R - 2.0 * spec.delta, R);
    const AuxGrid aux = make_aux_grid(spec, grid);
    Samples raw(aux.x.size());
    for (std::size_t j = 0; j < aux.x.size(); ++j) {
        const double r = aux.x[j];
        if (r <= 2.0 * spec.eps)
            raw[j] = avg_in;
        else if (r >= R - 2.0 * spec.delta)
            raw[j] = avg_out;
        else
            raw[j] = spec.theta0(r);
    }
    const Samples smooth = mollify(raw, aux.h, spec.delta);
    Samples theta = interp_to_grid(smooth, aux, grid);
    for (double v : theta)
        if (!(v > 0.0))
            throw std::runtime_error("prepare_temperature: nonpositive temperature");
    return theta;
}

EstimateReport validate_initial_data(const Samples& rho, const Samples& u,
                                     const Samples& theta, const InitialDataSpec& spec,
                                     const RadialGrid& grid, double K) {
    EstimateReport report;
    report.title = "initial data hypotheses";
    double rho_min = rho[0], rho_max = rho[0], theta_min = theta[0];
    for (double v : rho) {
        rho_min = std::min(rho_min, v);
        rho_max = std::max(rho_max, v);
    }
    for (double v : theta) theta_min = std::min(theta_min, v);

    const double inv_c0 = 1.0 / spec.C0;
    report.add({"rho lower bound", rho_min, inv_c0, 0.0, rho_min >= inv_c0, true,
                "data hypothesis"});
    report.add({"rho upper bound", rho_max, spec.C0, 0.0, rho_max <= spec.C0, true,
                "data hypothesis"});
    report.add({"theta lower bound", theta_min, inv_c0, 0.0, theta_min >= inv_c0, true,
                "data hypothesis"});

    Samples s(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i)
        s[i] = rho[i] * entropy_density(rho[i], u[i], theta[i], K);
    const double entropy = integrate_radial(s, grid);
    report.add({"entropy integral", entropy, spec.C0, 0.0, entropy <= spec.C0, true,
                "data hypothesis"});

    const double mass = integrate_radial(rho, grid);
    const double drift = std::abs(mass - spec.M0) / spec.M0;
    report.add({"mass normalization", mass, spec.M0, 1e-10, drift <= 1e-10, true,
                "enforced normalization"});
    return report;
}

RadialProfile make_named_profile(const std::string& shape, double base, double amp, double R) {
    if (shape == "constant")
        return [base](double) { return base; };
    if (shape == "zero")
        return [](double) { return 0.0; };
    if (shape == "sine")
        return [base, amp, R](double r) { return base + amp * std::sin(M_PI * r / R); };
    if (shape == "gauss")
        return [base, amp, R](double r) {
            const double s = (r - 0.5 * R) / (0.15 * R);
            return base + amp * std::exp(-s * s);
        };
    if (shape == "ramp")
        return [base, amp, R](double r) { return base + amp * r / R; };
    if (shape == "step")
        return [base, amp, R](double r) { return r > 0.5 * R ? base + amp : base; };
    if (shape == "quadratic")
        return [base, amp, R](double r) { return base + amp * (r / R) * (r / R); };
    throw std::invalid_argument("make_named_profile: unknown shape '" + shape + "'");
}

RadialProfile make_tabulated_profile(Samples radii, Samples values) {
    if (radii.size() != values.size() || radii.size() < 2)
        throw std::invalid_argument("make_tabulated_profile: need matching tables, >= 2 rows");
    for (std::size_t i = 0; i + 1 < radii.size(); ++i)
        if (!(radii[i] < radii[i + 1]))
            throw std::invalid_argument("make_tabulated_profile: radii must increase");
    return [radii = std::move(radii), values = std::move(values)](double r) {
        if (r <= radii.front()) return values.front();
        if (r >= radii.back()) return values.back();
        std::size_t lo = 0, hi = radii.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (radii[mid] <= r ? lo : hi) = mid;
        }
        const double frac = (r - radii[lo]) / (radii[lo + 1] - radii[lo]);
        return (1.0 - frac) * values[lo] + frac * values[lo + 1];
    };
}

double profile_mass(const RadialProfile& rho0, double R) {
    const std::size_t n = 8001;
    const double h = R / static_cast<double>(n - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = h * static_cast<double>(i);
        const double w = (i == 0 || i + 1 == n) ? 0.5 * h : h;
        acc += w * rho0(r) * r;
    }
    return acc;
}

} // namespace radflow
