#pragma once

#include "radflow/forcing.hpp"
#include "radflow/grid.hpp"
#include "radflow/initial_data.hpp"
#include "radflow/solver.hpp"

#include <functional>
#include <vector>

namespace radflow {

/// Shrinking inner radii with matched data. Each run prepares its own
/// mollified data with delta = eps/4 and keeps the spacing near h_target so
/// discretization error is comparable across the family.
struct ContinuationPlan {
    std::vector<double> eps_sequence;  // strictly decreasing
    double R = 1.0;
    double h_target = 1.0 / 400.0;
    double grade_ratio = 1.0;          // > 1 refines geometrically near eps
    double t_end = 0.5;
    PhysParams params;
    RadialProfile rho0, u0, theta0;
    double C0 = 50.0;
    Forcing forcing;
    SolverConfig solver;       // t_end overridden by the plan
    Samples h_probes;          // mass labels for the vacuum extrapolation
    std::size_t threads = 1;

    void validate() const;
};

std::vector<Trajectory> run_sequence(const ContinuationPlan& plan);

struct OverlapDistance {
    double sup = 0.0;       // max over the region of (u, theta) deviations
    double l2 = 0.0;        // space-time L2 of the deviations
    double rho_weak = 0.0;  // sup of cumulative-mass differences (weak proxy)
};

/// Distances of two runs restricted to [a, R] x [t0, t1], on the coarser of
/// the two grids and on matched recorded times.
OverlapDistance overlap_distance(const Trajectory& ti, const Trajectory& tj, double a,
                                 double t0, double t1);

struct VacuumCurve {
    Samples times;
    Samples r_lower;        // extrapolated h -> 0 radii
    Samples fit_residual;   // per-time least-squares residual
    bool monotone_probes = true;
    double alpha = 1.0;     // fitted Hoelder exponent of t -> r_lower(t)
    double hoelder_C = 0.0;
};

/// Extrapolate r_h(t) to h -> 0 on the smallest-eps member of the family,
/// fitting r_h ~ r0 + c sqrt(h) over the probe labels.
VacuumCurve estimate_vacuum_boundary(const std::vector<Trajectory>& family,
                                     const Samples& h_probes);

struct HoelderFit {
    double alpha;
    double C;
};

/// Least-squares slope of log sup_t |f(t+tau) - f(t)| against log tau over
/// dyadic lags. Constant curves return (1, 0) by convention.
HoelderFit hoelder_exponent(const Samples& times, const Samples& values);

} // namespace radflow
