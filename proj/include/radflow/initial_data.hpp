#pragma once

#include "radflow/grid.hpp"
#include "radflow/report.hpp"

#include <functional>
#include <string>

namespace radflow {

/// Radial profile on [0, R].
using RadialProfile = std::function<double(double)>;

/// User data plus the hypothesis constants: bounded positive density and
/// temperature, entropy integral below C0, target total mass M0.
struct InitialDataSpec {
    RadialProfile rho0;
    RadialProfile u0;
    RadialProfile theta0;
    double C0 = 10.0;    // >= 1
    double M0 = 0.0;     // > 0, total mass ∫_0^R rho0 r dr
    double eps = 0.0;    // annulus inner radius
    double delta = 0.0;  // mollifier width, < eps

    void validate() const;
};

/// Discrete convolution with the normalized bump kernel exp(-1/(1-s^2)) of
/// support [-delta, delta]. Input is sampled on a uniform grid of the given
/// spacing; the output drops the m = floor(delta/spacing) contaminated
/// samples on each side. Kernel weights are normalized so constants are
/// preserved exactly.
Samples mollify(const Samples& padded, double spacing, double delta);

/// Extend rho0 by its r-weighted average outside [eps, R], mollify,
/// restrict, and rescale by one constant so the grid mass equals M0.
Samples prepare_density(const InitialDataSpec& spec, const RadialGrid& grid);

/// Zero u0 on [0, 2 eps] and [R - 2 delta, R], then mollify; the result
/// vanishes identically near both endpoints.
Samples prepare_velocity(const InitialDataSpec& spec, const RadialGrid& grid);

/// Replace theta0 by its r-weighted average on [0, 2 eps] and on
/// [R - 2 delta, R], then mollify; the result is constant near both
/// endpoints.
Samples prepare_temperature(const InitialDataSpec& spec, const RadialGrid& grid);

/// Checks the data hypotheses: C0^{-1} <= rho0 <= C0, C0^{-1} <= theta0 and
/// ∫ rho0 S(rho0, u0, theta0) r dr <= C0 with
/// S = K Psi(1/rho) + Psi(theta) + u^2/2, Psi(s) = s - log s - 1.
EstimateReport validate_initial_data(const Samples& rho, const Samples& u,
                                     const Samples& theta, const InitialDataSpec& spec,
                                     const RadialGrid& grid, double K);

/// Entropy density S(rho, u, theta) for a single sample.
double entropy_density(double rho, double u, double theta, double K);

/// psi(s) = s - log s - 1 (natural log), nonnegative, zero at s = 1.
double psi_entropy(double s);

/// Named analytic profiles for configs and tests. Shapes: constant, zero,
/// sine, gauss, ramp, step, quadratic.
RadialProfile make_named_profile(const std::string& shape, double base, double amp, double R);

/// Tabulated (r, value) samples with linear interpolation and flat
/// extrapolation.
RadialProfile make_tabulated_profile(Samples radii, Samples values);

/// ∫_0^R rho0(r) r dr by fine trapezoid sampling of the profile.
double profile_mass(const RadialProfile& rho0, double R);

} // namespace radflow
