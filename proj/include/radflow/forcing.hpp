#pragma once

#include "radflow/grid.hpp"

#include <functional>
#include <string>

namespace radflow {

/// External radial force f(t, r) (acceleration).
class Forcing {
public:
    Forcing() : name_("zero") {}
    Forcing(std::string name, std::function<double(double, double)> f)
        : name_(std::move(name)), f_(std::move(f)) {}

    double operator()(double t, double r) const { return f_ ? f_(t, r) : 0.0; }
    bool is_zero() const { return !f_; }
    const std::string& name() const { return name_; }

private:
    std::string name_;
    std::function<double(double, double)> f_;
};

/// Named analytic force registry: zero | pulse | ring.
Forcing make_named_forcing(const std::string& name, double amp, double R);

/// Tabulated (t, r) force values with bilinear interpolation, flat beyond
/// the table.
Forcing make_tabulated_forcing(Samples times, Samples radii,
                               std::vector<Samples> values);

struct ForcingNorms {
    double l2;   // ( ∫ f^2 r dr )^{1/2}
    double sup;  // max_i |f|
};
ForcingNorms forcing_norms(const Forcing& f, const RadialGrid& grid, double t);

/// Optional per-equation source densities (used by manufactured solutions):
/// mass adds to the continuity equation, momentum is a force density added
/// next to rho f, heat adds to the temperature equation.
struct Sources {
    std::function<double(double, double)> mass;
    std::function<double(double, double)> momentum;
    std::function<double(double, double)> heat;

    bool empty() const { return !mass && !momentum && !heat; }
};

} // namespace radflow
