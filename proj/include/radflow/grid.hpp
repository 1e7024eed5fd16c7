#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace radflow {

using Samples = std::vector<double>;

/// Discrete annulus [eps, R]: strictly increasing node radii plus trapezoid
/// quadrature weights for integrals of the form  ∫ f(r) r dr.
class RadialGrid {
public:
    explicit RadialGrid(Samples nodes);

    double eps() const { return nodes_.front(); }
    double outer() const { return nodes_.back(); }
    std::size_t size() const { return nodes_.size(); }
    double node(std::size_t i) const { return nodes_[i]; }
    const Samples& nodes() const { return nodes_; }

    /// r-weighted quadrature weights: sum(w_i * f_i) ~ ∫ f r dr.
    const Samples& weights() const { return weights_; }
    /// Plain trapezoid measure (dr, no r factor) of the half-cells.
    double gap(std::size_t i) const { return gaps_[i]; }
    const Samples& gaps() const { return gaps_; }

    double min_spacing() const { return min_spacing_; }

private:
    Samples nodes_;
    Samples weights_;
    Samples gaps_;
    double min_spacing_ = 0.0;
};

RadialGrid make_uniform_grid(double eps, double R, std::size_t n);

/// Geometric spacing, finest near r = eps; ratio > 1 is the coarsening
/// factor from one interval to the next.
RadialGrid make_graded_grid(double eps, double R, std::size_t n, double ratio);

double integrate_radial(const Samples& field, const RadialGrid& grid);

/// Second-order first derivative: central stencils in the interior,
/// one-sided three-point stencils at the endpoints. Exact on quadratics
/// for uniform and graded grids; maps constants to exactly zero.
Samples radial_derivative(const Samples& field, const RadialGrid& grid);

/// First derivative paired with the trapezoid gaps so that summation by
/// parts holds exactly:
///   sum_i gap_i [f_i (Dg)_i + g_i (Df)_i] = f_N g_N - f_0 g_0.
/// Central interior rows, one-sided first-order endpoint rows.
Samples sbp_derivative(const Samples& field, const RadialGrid& grid);

/// Constant viscosity / conduction coefficients of the gas model.
struct PhysParams {
    double mu = 1.0;      // shear viscosity, > 0
    double lambda = 0.0;  // second viscosity, mu + lambda >= 0
    double kappa = 1.0;   // heat conduction, > 0
    double K = 1.0;       // gas constant, > 0

    double nu() const { return lambda + 2.0 * mu; }
    void validate() const;
};

/// Density / radial velocity / temperature samples at one instant.
struct FlowState {
    double t = 0.0;
    Samples rho;
    Samples u;
    Samples theta;

    /// Checks positivity of rho/theta, endpoint velocities and lengths.
    void validate(const RadialGrid& grid) const;
};

struct StepDiagnostics {
    std::uint64_t floor_rho_hits = 0;
    std::uint64_t floor_theta_hits = 0;
    std::uint64_t cfl_limited_steps = 0;
    std::uint64_t total_steps = 0;
    bool vacuum_contaminated() const { return floor_rho_hits + floor_theta_hits > 0; }
};

/// Time-ordered states of one run on a fixed grid.
struct Trajectory {
    PhysParams params;
    RadialGrid grid;
    std::vector<FlowState> states;
    std::vector<double> dt_history;
    StepDiagnostics diagnostics;

    const FlowState& initial() const { return states.front(); }
    const FlowState& final_state() const { return states.back(); }
    void validate() const;
};

} // namespace radflow
