#include "radflow/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace radflow {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHuge = 1e300;
}

double young_eval(YoungKind kind, double s) {
    if (s < 0.0 || !std::isfinite(s))
        throw std::invalid_argument("young_eval: s must be finite and >= 0");
    switch (kind) {
    case YoungKind::M:
        return (1.0 + s) * std::log1p(s) - s;
    case YoungKind::N:
        if (s > 700.0) return kHuge;
        return std::expm1(s) - s;
    case YoungKind::H:
        if (s * s > 700.0) return kHuge;
        return std::expm1(s * s);
    }
    return 0.0;
}

double annulus_area(const RadialGrid& grid) {
    return kTwoPi * integrate_radial(Samples(grid.size(), 1.0), grid);
}

namespace {

// 2π-weighted modular ∫ Φ(|u|/k) dx, with an early bail once it is clearly
// above one; the bisection only needs the <=1 / >1 decision.
double modular(const Samples& field, const RadialGrid& grid, YoungKind kind, double k) {
    const Samples& w = grid.weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i) {
        acc += kTwoPi * w[i] * young_eval(kind, std::abs(field[i]) / k);
        if (acc > 1e6) return acc;
    }
    return acc;
}

} // namespace

double luxemburg_norm(const Samples& field, const RadialGrid& grid, YoungKind kind,
                      double tol) {
    if (field.size() != grid.size())
        throw std::invalid_argument("luxemburg_norm: field length mismatch");
    if (!(tol > 0.0))
        throw std::invalid_argument("luxemburg_norm: tol must be positive");
    double fmax = 0.0;
    for (double v : field) {
        if (!std::isfinite(v))
            throw std::invalid_argument("luxemburg_norm: field must be finite");
        fmax = std::max(fmax, std::abs(v));
    }
    if (fmax == 0.0) return 0.0;

    double lo = fmax, hi = fmax;
    int guard = 0;
    while (modular(field, grid, kind, hi) > 1.0) {
        hi *= 2.0;
        if (++guard > 600)
            throw std::runtime_error("luxemburg_norm: bracket expansion failed");
    }
    guard = 0;
    while (modular(field, grid, kind, lo) <= 1.0) {
        lo *= 0.5;
        if (++guard > 600) {
            // Modular stays below one for arbitrarily small k; the norm is 0.
            return 0.0;
        }
    }
    while (hi - lo > tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (modular(field, grid, kind, mid) <= 1.0)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

HolderPair holder_orlicz_pair(const Samples& u, const Samples& v, const RadialGrid& grid,
                              double tol) {
    if (u.size() != grid.size() || v.size() != grid.size())
        throw std::invalid_argument("holder_orlicz_pair: field length mismatch");
    const Samples& w = grid.weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        acc += kTwoPi * w[i] * u[i] * v[i];
    const double km = luxemburg_norm(u, grid, YoungKind::M, tol);
    const double kn = luxemburg_norm(v, grid, YoungKind::N, tol);
    return {std::abs(acc), 2.0 * km * kn};
}

double g_inverse(double c) {
    if (c < 0.0 || !std::isfinite(c))
        throw std::invalid_argument("g_inverse: c must be finite and >= 0");
    if (c == 0.0) return 1.0;
    const double e = std::numbers::e;
    double lo = 1.0;
    double hi = std::max(e, c);
    auto G = [](double y) { return y * std::log(y); };
    const double tol = 1e-12 * std::max(1.0, c);
    double y = std::clamp(c > e ? c / std::log(c) : 0.5 * (lo + hi), lo, hi);
    for (int it = 0; it < 200; ++it) {
        const double g = G(y) - c;
        if (std::abs(g) <= tol) return y;
        if (g > 0.0)
            hi = y;
        else
            lo = y;
        const double dg = std::log(y) + 1.0;
        double next = y - g / dg;
        if (!(next > lo) || !(next < hi))
            next = 0.5 * (lo + hi);
        y = next;
    }
    return y;
}

double omega(double r, double c) {
    if (!(r > 0.0))
        throw std::invalid_argument("omega: r must be positive");
    if (c < 0.0)
        throw std::invalid_argument("omega: c must be >= 0");
    return r + r * g_inverse(c / r);
}

LogEmbedding log_embedding_bound(const Samples& theta, const RadialGrid& grid, double q,
                                 double tol) {
    if (theta.size() != grid.size())
        throw std::invalid_argument("log_embedding_bound: field length mismatch");
    if (!(q >= 1.0))
        throw std::invalid_argument("log_embedding_bound: q must be >= 1");
    for (double v : theta)
        if (!(v > 0.0))
            throw std::invalid_argument("log_embedding_bound: theta must be positive");

    const Samples& w = grid.weights();
    double lq = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i)
        lq += kTwoPi * w[i] * std::pow(theta[i], q);

    Samples logf(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i)
        logf[i] = std::log1p(theta[i]);
    const double lambda = luxemburg_norm(logf, grid, YoungKind::H, tol);

    const double area = annulus_area(grid);
    double bound;
    if (lambda == 0.0) {
        bound = 1.0 + area;
    } else {
        const double x = q * lambda * lambda;
        const double base = x > 700.0 ? std::numeric_limits<double>::infinity() : std::expm1(x);
        bound = std::pow(base, q) * area + 1.0 + area;
    }
    return {lq, lambda, bound};
}

} // namespace radflow
