#pragma once

#include "radflow/grid.hpp"

#include <vector>

namespace radflow {

double total_mass(const FlowState& state, const RadialGrid& grid);

/// ∫ rho (u^2/2 + theta) r dr
double total_energy(const FlowState& state, const RadialGrid& grid);

/// ∫ rho [ K Psi(1/rho) + Psi(theta) + u^2/2 ] r dr, always >= 0.
double total_entropy(const FlowState& state, const RadialGrid& grid, double K);

/// ∫ [ kappa (theta_r / theta)^2 + Q / theta ] r dr, always >= 0.
double entropy_dissipation(const FlowState& state, const RadialGrid& grid,
                           const PhysParams& params);

/// ∫ theta^q r dr (the time accumulation applies the 2/q power elsewhere).
double temperature_lq(const FlowState& state, const RadialGrid& grid, double q);

struct VelocityNorms {
    double w;   // ∫ (|u_r|^{4/3} + |u/r|^{4/3}) r dr
    double l4;  // ( ∫ u^4 r dr )^{1/3}
};
VelocityNorms velocity_global_norms(const FlowState& state, const RadialGrid& grid);

/// |grad u|^2 = u_r^2 + u^2/r^2 as a field.
Samples velocity_grad_sq(const FlowState& state, const RadialGrid& grid);

/// ∫ | d_r ln(1 + theta) |^2 r dr
double log_temp_gradient(const FlowState& state, const RadialGrid& grid);

/// Nodal cumulative mass C_j = ∫_eps^{r_j} rho r dr (trapezoid), C_0 = 0.
Samples cumulative_mass(const FlowState& state, const RadialGrid& grid);

/// Radius enclosing mass h at one instant, by monotone piecewise-linear
/// inversion of the cumulative mass.
double mass_radius(const FlowState& state, const RadialGrid& grid, double h);

struct ParticlePath {
    double h = 0.0;
    Samples times;
    Samples radii;
};

/// r_h(t) with h = ∫_eps^{r_h} rho r dr at each recorded time.
ParticlePath particle_path(const Trajectory& traj, double h);

struct CutoffField {
    double p = 3.0;
    Samples times;
    std::vector<Samples> phi;  // one sample row per recorded time
};

/// Transported cut-off: phi0 = smoothstep((r - r_h(0))/r_h(0))^p, zero below
/// r_h(0) and one above 2 r_h(0), advected by phi_t + u phi_r = 0 with
/// semi-Lagrangian backtracking and monotone linear interpolation.
CutoffField transport_cutoff(const Trajectory& traj, double h, double p);

/// max over nodes and times of |phi_r| / phi^{(p-1)/p} restricted to where
/// phi exceeds the given floor; the persistence diagnostic for the cut-off
/// growth bound.
double cutoff_growth_ratio(const CutoffField& cutoff, const Trajectory& traj,
                           double phi_floor = 1e-6);

struct HigherOrderTriple {
    double A = 0.0;
    double B = 0.0;
    double D = 0.0;
};

/// The three weighted higher-order functionals with sigma(t) = min(1, t),
/// cut-off weights from transport_cutoff, spatial domain r >= r_h(t), and
/// convective derivatives from centered differences on the recorded cadence.
HigherOrderTriple higher_order_functionals(const Trajectory& traj, double h, double p);

} // namespace radflow
