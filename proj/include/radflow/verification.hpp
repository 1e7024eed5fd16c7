#pragma once

#include "radflow/forcing.hpp"
#include "radflow/grid.hpp"
#include "radflow/report.hpp"

#include <functional>
#include <string>
#include <vector>

namespace radflow {

/// Analytic space-time test function with coded partials; no numerical
/// differentiation enters the residuals, so they isolate solver error.
struct TestFunction {
    std::string name;
    std::function<double(double, double)> psi;
    std::function<double(double, double)> psi_t;
    std::function<double(double, double)> psi_r;
    double support_min = 0.0;    // psi(t, r) == 0 for r < support_min
    bool vanishes_inner = false; // psi(t, eps) == 0
    bool vanishes_outer = false; // psi(t, R) == 0
};

/// Products of time polynomials (degree <= 2, so the time trapezoid of
/// psi_t is exact on any recorded cadence) and space smoothsteps/bumps.
std::vector<TestFunction> shipped_test_functions(double eps, double R);

/// | ∫ rho psi r dr |_{t0}^{tK} - ∫∫ (rho psi_t + rho u psi_r) r dr dt |
/// with the mass source included when present.
double weak_residual_mass(const Trajectory& traj, const TestFunction& tf,
                          const Sources* sources = nullptr);

struct MomentumResidual {
    double boundary = 0.0;   // ∫ rho u psi r dr at the time endpoints
    double transport = 0.0;  // ∫∫ (rho u psi_t + rho u^2 psi_r)
    double pressure = 0.0;   // ∫∫ P (psi_r + psi/r), via -∫∫ (DP) psi
    double force = 0.0;      // ∫∫ (rho f + source) psi
    double viscous = 0.0;    // nu ∫∫ (u_r + u/r)(psi_r + psi/r)
    double total() const { return boundary - transport - pressure - force + viscous; }
};

/// Radial momentum identity; requires psi to vanish at both grid ends.
MomentumResidual weak_residual_momentum(const Trajectory& traj, const PhysParams& params,
                                        const Forcing& forcing, const TestFunction& tf,
                                        const Sources* sources = nullptr);

/// Radial energy identity with the viscous flux reduced through the radial
/// gradient algebra: flux integrand kappa theta_r + nu u u_r + lambda u^2/r.
/// Requires supp psi within r >= eps + eta.
double weak_residual_energy(const Trajectory& traj, const PhysParams& params,
                            const Forcing& forcing, const TestFunction& tf, double eta,
                            const Sources* sources = nullptr);

struct GlobalEstimateTols {
    double mass_rel = 1e-8;
    double entropy_rate = 1e-8;
    double energy_rel = 1e-8;
    double q = 2.0;
};

/// Mass constancy, energy boundedness, the entropy + dissipation budget and
/// the time-accumulated temperature/velocity norms with observed maxima.
EstimateReport check_global_estimates(const Trajectory& traj, const PhysParams& params,
                                      const Forcing& forcing,
                                      const GlobalEstimateTols& tols = {});

/// min/max of rho on { r >= r_h(t) } over the run and the time integral of
/// the masked temperature sup; observed constants, reported not asserted.
EstimateReport check_pointwise_bounds(const Trajectory& traj, double h);

/// E(t) - E(0) - cumulative work, per recorded time. The signed defect must
/// stay below +1e-8 (dissipative scheme); its magnitude is reported.
EstimateReport energy_budget(const Trajectory& traj, const Forcing& forcing,
                             const Sources* sources = nullptr);

/// Node mask per recorded state index; true marks membership in E(t).
using RegionFn = std::function<std::vector<bool>(std::size_t state_index)>;

/// (a) time integral of masked sup norms of u/sqrt(theta) and log(theta v 1);
/// (b) the omega-modulus bound on the final density over E; (c) fitted
/// modulus constants for the rho theta and rho u^2 time integrals.
EstimateReport uniform_integrability(const Trajectory& traj, const RegionFn& region,
                                     double b);

/// || v ||_{L2} / ( || d_r v ||_{L2} + ∫ rho |v| dx ) with 2D area measure.
double korn_poincare_ratio(const Samples& v, const Samples& rho, const RadialGrid& grid);

/// The exponential-class temperature bound at every recorded time.
EstimateReport log_embedding_check(const Trajectory& traj, double q);

} // namespace radflow
