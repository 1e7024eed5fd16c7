#pragma once

#include "radflow/forcing.hpp"
#include "radflow/grid.hpp"

#include <stdexcept>
#include <string>

namespace radflow {

struct SolverError : std::runtime_error {
    SolverError(const std::string& what, double time)
        : std::runtime_error(what), t(time) {}
    double t;
};

struct SolverConfig {
    double cfl = 0.4;          // advective CFL number, in (0, 0.9]
    double dt_max = 1e-2;      // hard cap on the step
    double t_end = 1.0;
    double floor_rho = 1e-13;
    double floor_theta = 1e-13;
    std::size_t out_every = 10;  // record cadence in steps
    std::string scheme = "upwind-split-v1";

    void validate() const;
};

/// Viscous heating in the manifestly nonnegative form
///   Q = lambda (u_r + u/r)^2 + 2 mu (u_r^2 + u^2/r^2),
/// with u_r from radial_derivative. Q >= 0 whenever mu + lambda >= 0.
Samples compute_Q(const FlowState& state, const PhysParams& params, const RadialGrid& grid);

/// The same quantity in its other algebraic form,
///   nu (u_r + u/r)^2 - (2 mu / r) d_r(u^2),
/// with d_r(u^2) as the discrete derivative of the squared samples. Agrees
/// with compute_Q up to discretization error on smooth fields.
Samples compute_Q_dual(const FlowState& state, const PhysParams& params, const RadialGrid& grid);

/// Pointwise heating kernel for given analytic (u, u_r, r).
double q_pointwise(double u, double ur, double r, const PhysParams& params);

/// Advective step bound: min(cfl * h_min / max(|u| + sqrt(K theta)), dt_max).
double cfl_dt(const FlowState& state, const PhysParams& params, const RadialGrid& grid,
              const SolverConfig& config);

/// One operator-split step of the radial system:
///  (i)   conservative upwind transport of rho and rho u in r-weighted form,
///  (ii)  explicit pressure gradient and force kicks on interior nodes,
///  (iii) implicit viscous solve in delta form (Dirichlet u = 0),
///  (iv)  rho theta transport with the same mass fluxes, pressure work paired
///        by summation by parts, and nonnegative heating Q,
///  (v)   implicit conduction solve in flux form with zero-flux ends.
FlowState step(const RadialGrid& grid, const FlowState& state, const PhysParams& params,
               const Forcing& forcing, const Sources* sources, double dt,
               const SolverConfig& config, StepDiagnostics* diag = nullptr);

/// March to t_end recording every out_every-th state plus the final one.
Trajectory run(const RadialGrid& grid, const FlowState& initial, const PhysParams& params,
               const Forcing& forcing, const SolverConfig& config,
               const Sources* sources = nullptr);

} // namespace radflow
