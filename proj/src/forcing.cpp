#include "radflow/forcing.hpp"

#include <cmath>
#include <stdexcept>

namespace radflow {

Forcing make_named_forcing(const std::string& name, double amp, double R) {
    if (name == "zero" || name.empty())
        return Forcing();
    if (name == "pulse") {
        // inward-decaying pulse, integrable in time
        return Forcing(name, [amp, R](double t, double r) {
            const double s = (r - 0.55 * R) / (0.2 * R);
            return amp * std::exp(-s * s) * std::exp(-2.0 * t);
        });
    }
    if (name == "ring") {
        return Forcing(name, [amp, R](double t, double r) {
            return amp * std::sin(M_PI * r / R) * std::cos(2.0 * t);
        });
    }
    throw std::invalid_argument("make_named_forcing: unknown forcing '" + name + "'");
}

Forcing make_tabulated_forcing(Samples times, Samples radii, std::vector<Samples> values) {
    if (times.size() < 2 || radii.size() < 2 || values.size() != times.size())
        throw std::invalid_argument("make_tabulated_forcing: bad table shape");
    for (const Samples& row : values)
        if (row.size() != radii.size())
            throw std::invalid_argument("make_tabulated_forcing: bad table row");
    auto locate = [](const Samples& xs, double x) {
        std::size_t lo = 0, hi = xs.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (xs[mid] <= x ? lo : hi) = mid;
        }
        return lo;
    };
    return Forcing("tabulated",
                   [times = std::move(times), radii = std::move(radii),
                    values = std::move(values), locate](double t, double r) {
        const double tc = std::clamp(t, times.front(), times.back());
        const double rc = std::clamp(r, radii.front(), radii.back());
        const std::size_t i = locate(times, tc);
        const std::size_t j = locate(radii, rc);
        const double ft = (tc - times[i]) / (times[i + 1] - times[i]);
        const double fr = (rc - radii[j]) / (radii[j + 1] - radii[j]);
        return (1.0 - ft) * ((1.0 - fr) * values[i][j] + fr * values[i][j + 1]) +
               ft * ((1.0 - fr) * values[i + 1][j] + fr * values[i + 1][j + 1]);
    });
}

ForcingNorms forcing_norms(const Forcing& f, const RadialGrid& grid, double t) {
    Samples sq(grid.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = f(t, grid.node(i));
        sq[i] = v * v;
        sup = std::max(sup, std::abs(v));
    }
    return {std::sqrt(integrate_radial(sq, grid)), sup};
}

} // namespace radflow
