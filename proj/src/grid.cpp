#include "radflow/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace radflow {

RadialGrid::RadialGrid(Samples nodes) : nodes_(std::move(nodes)) {
    const std::size_t n = nodes_.size();
    if (n < 3)
        throw std::invalid_argument("RadialGrid: need at least 3 nodes");
    if (!(nodes_.front() > 0.0))
        throw std::invalid_argument("RadialGrid: inner radius must be positive");
    min_spacing_ = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = nodes_[i + 1] - nodes_[i];
        if (!(h > 0.0))
            throw std::invalid_argument("RadialGrid: nodes must be strictly increasing");
        min_spacing_ = std::min(min_spacing_, h);
    }
    gaps_.assign(n, 0.0);
    gaps_[0] = 0.5 * (nodes_[1] - nodes_[0]);
    gaps_[n - 1] = 0.5 * (nodes_[n - 1] - nodes_[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i)
        gaps_[i] = 0.5 * (nodes_[i + 1] - nodes_[i - 1]);
    weights_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        weights_[i] = gaps_[i] * nodes_[i];
}

RadialGrid make_uniform_grid(double eps, double R, std::size_t n) {
    if (!(eps > 0.0))
        throw std::invalid_argument("make_uniform_grid: eps must be > 0");
    if (!(eps < R))
        throw std::invalid_argument("make_uniform_grid: eps must be < R");
    if (n < 3)
        throw std::invalid_argument("make_uniform_grid: n must be >= 3");
    Samples nodes(n);
    const double h = (R - eps) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        nodes[i] = eps + h * static_cast<double>(i);
    nodes.front() = eps;
    nodes.back() = R;
    return RadialGrid(std::move(nodes));
}

RadialGrid make_graded_grid(double eps, double R, std::size_t n, double ratio) {
    if (!(eps > 0.0) || !(eps < R) || n < 3)
        throw std::invalid_argument("make_graded_grid: invalid eps/R/n");
    if (!(ratio > 0.0) || !std::isfinite(ratio))
        throw std::invalid_argument("make_graded_grid: ratio must be positive");
    // Geometric interval lengths h_k = h0 * ratio^k, rescaled to span [eps, R].
    Samples nodes(n);
    double total = 0.0;
    double hk = 1.0;
    Samples lens(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        lens[k] = hk;
        total += hk;
        hk *= ratio;
    }
    const double scale = (R - eps) / total;
    nodes[0] = eps;
    for (std::size_t k = 0; k + 1 < n; ++k)
        nodes[k + 1] = nodes[k] + lens[k] * scale;
    nodes.back() = R;
    return RadialGrid(std::move(nodes));
}

double integrate_radial(const Samples& field, const RadialGrid& grid) {
    if (field.size() != grid.size())
        throw std::invalid_argument("integrate_radial: field length mismatch");
    const Samples& w = grid.weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i)
        acc += w[i] * field[i];
    return acc;
}

namespace {

// First-derivative weights of the quadratic through (a,b,c), evaluated at
// one of the three abscissae. The self weight is the negated sum of the
// others, so constants map to exactly zero in floating point.
struct Stencil3 {
    double wa, wb, wc;
};

Stencil3 d1_at_a(double a, double b, double c) {
    const double wb = (a - c) / ((b - a) * (b - c));
    const double wc = (a - b) / ((c - a) * (c - b));
    return {-(wb + wc), wb, wc};
}

Stencil3 d1_at_b(double a, double b, double c) {
    const double wa = (b - c) / ((a - b) * (a - c));
    const double wc = (b - a) / ((c - a) * (c - b));
    return {wa, -(wa + wc), wc};
}

Stencil3 d1_at_c(double a, double b, double c) {
    const double wa = (c - b) / ((a - b) * (a - c));
    const double wb = (c - a) / ((b - a) * (b - c));
    return {wa, wb, -(wa + wb)};
}

} // namespace

Samples radial_derivative(const Samples& field, const RadialGrid& grid) {
    const std::size_t n = grid.size();
    if (field.size() != n)
        throw std::invalid_argument("radial_derivative: field length mismatch");
    const Samples& r = grid.nodes();
    Samples out(n, 0.0);

    // evaluated in difference form against the self node, so constants map
    // to exactly zero in floating point
    {
        const Stencil3 s = d1_at_a(r[0], r[1], r[2]);
        out[0] = s.wb * (field[1] - field[0]) + s.wc * (field[2] - field[0]);
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const Stencil3 s = d1_at_b(r[i - 1], r[i], r[i + 1]);
        out[i] = s.wa * (field[i - 1] - field[i]) + s.wc * (field[i + 1] - field[i]);
    }
    {
        const Stencil3 s = d1_at_c(r[n - 3], r[n - 2], r[n - 1]);
        out[n - 1] =
            s.wa * (field[n - 3] - field[n - 1]) + s.wb * (field[n - 2] - field[n - 1]);
    }
    return out;
}

Samples sbp_derivative(const Samples& field, const RadialGrid& grid) {
    const std::size_t n = grid.size();
    if (field.size() != n)
        throw std::invalid_argument("sbp_derivative: field length mismatch");
    const Samples& r = grid.nodes();
    Samples out(n, 0.0);
    out[0] = (field[1] - field[0]) / (r[1] - r[0]);
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = (field[i + 1] - field[i - 1]) / (r[i + 1] - r[i - 1]);
    out[n - 1] = (field[n - 1] - field[n - 2]) / (r[n - 1] - r[n - 2]);
    return out;
}

void PhysParams::validate() const {
    if (!(mu > 0.0))
        throw std::invalid_argument("PhysParams: mu > 0 required");
    if (!(mu + lambda >= 0.0))
        throw std::invalid_argument("PhysParams: mu + lambda >= 0 required");
    if (!(kappa > 0.0))
        throw std::invalid_argument("PhysParams: kappa > 0 required");
    if (!(K > 0.0))
        throw std::invalid_argument("PhysParams: K > 0 required");
}

void FlowState::validate(const RadialGrid& grid) const {
    const std::size_t n = grid.size();
    if (rho.size() != n || u.size() != n || theta.size() != n)
        throw std::invalid_argument("FlowState: field length mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(rho[i] > 0.0))
            throw std::invalid_argument("FlowState: rho must be strictly positive");
        if (!(theta[i] > 0.0))
            throw std::invalid_argument("FlowState: theta must be strictly positive");
    }
    if (u.front() != 0.0 || u.back() != 0.0)
        throw std::invalid_argument("FlowState: u must vanish at both endpoints");
}

void Trajectory::validate() const {
    if (states.empty())
        throw std::invalid_argument("Trajectory: no states");
    for (std::size_t k = 0; k + 1 < states.size(); ++k)
        if (!(states[k].t < states[k + 1].t))
            throw std::invalid_argument("Trajectory: states must be strictly increasing in t");
    for (const FlowState& s : states)
        s.validate(grid);
}

} // namespace radflow
