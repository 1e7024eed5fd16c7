#pragma once

#include "radflow/forcing.hpp"
#include "radflow/grid.hpp"
#include "radflow/solver.hpp"

#include <functional>
#include <vector>

namespace radflow {

/// Analytic exact fields with the partial derivatives the source assembly
/// needs. u must vanish at both endpoints and theta_r must vanish at both
/// endpoints for all times of interest.
struct ExactRadialFields {
    using Fn = std::function<double(double, double)>;
    Fn rho, rho_t, rho_r;
    Fn u, u_t, u_r, u_rr;
    Fn theta, theta_t, theta_r, theta_rr;
};

/// Source terms that make the exact fields an exact solution of the radial
/// system, by substitution into the three equations. Rejects fields that
/// are incompatible with the endpoint conditions.
Sources manufactured_sources(const ExactRadialFields& fields, const PhysParams& params,
                             double eps, double R, double t_end);

/// Smooth positive exemplar on [eps, R]: static density, decaying velocity
/// and temperature perturbations with compatible endpoint behavior.
ExactRadialFields make_default_manufactured(double eps, double R);

/// Sample the exact fields on a grid (endpoint velocities snapped to zero).
FlowState sample_exact_state(const ExactRadialFields& fields, const RadialGrid& grid, double t);

/// Discrete residual of the exact fields under the returned sources on a
/// given grid at time t, per equation, in the maximum norm over interior
/// nodes. Decays at the order of the spatial stencils under refinement.
struct DiscreteResidual {
    double mass;
    double momentum;
    double heat;
};
DiscreteResidual manufactured_discrete_residual(const ExactRadialFields& fields,
                                                const PhysParams& params,
                                                const RadialGrid& grid, double t);

struct MmsResult {
    std::vector<std::size_t> sizes;
    std::vector<double> h;
    std::vector<double> err_rho;
    std::vector<double> err_u;
    std::vector<double> err_theta;
    double order_rho = 0.0;
    double order_u = 0.0;
    double order_theta = 0.0;
};

/// Refinement study against the manufactured solution with dt proportional
/// to h; errors are measured in the r-weighted L2 norm at the final time.
MmsResult run_mms_study(double eps, double R, const std::vector<std::size_t>& sizes,
                        const PhysParams& params, double t_end, double dt_over_h);

/// Least-squares slope of log(err) against log(h).
double fit_order(const std::vector<double>& h, const std::vector<double>& err);

/// r-weighted L2 distance between a state and the exact fields at state.t.
struct FieldErrors {
    double rho;
    double u;
    double theta;
};
FieldErrors l2_errors(const FlowState& state, const ExactRadialFields& fields,
                      const RadialGrid& grid);

} // namespace radflow
