#pragma once

#include "radflow/grid.hpp"

namespace radflow {

/// The three Young functions used for the gas estimates:
///   M(s) = (1+s) ln(1+s) - s,   N(s) = e^s - s - 1,   H(s) = e^{s^2} - 1.
/// M and N are complementary; H dominates N.
enum class YoungKind { M, N, H };

double young_eval(YoungKind kind, double s);

/// Smallest k with  ∫_Ω Φ(|u|/k) dx <= 1  on the 2D annulus, where
/// ∫_Ω . dx = 2π ∫ . r dr. Computed by bracketed bisection on the monotone
/// modular; the returned value is the upper bracket end, so the modular at
/// the returned norm is guaranteed <= 1. Returns 0 for the zero field.
double luxemburg_norm(const Samples& field, const RadialGrid& grid, YoungKind kind,
                      double tol = 1e-10);

/// 2D area of the annulus, 2π (R^2 - eps^2)/2, via the grid quadrature.
double annulus_area(const RadialGrid& grid);

/// lhs = |∫ u v dx|, rhs = 2 ||u||_M ||v||_N.  lhs <= rhs holds node-wise by
/// Young's inequality and positivity of the quadrature weights.
struct HolderPair {
    double lhs;
    double rhs;
};
HolderPair holder_orlicz_pair(const Samples& u, const Samples& v, const RadialGrid& grid,
                              double tol = 1e-10);

/// Inverse of G(y) = y ln y on [1, ∞): the y >= 1 with y ln y = c,
/// |G(y) - c| <= 1e-12 max(1, c).
double g_inverse(double c);

/// Uniform-integrability modulus  ω(r, c) = r + r G^{-1}(c / r).
double omega(double r, double c);

struct LogEmbedding {
    double lq;      // ∫ θ^q dx
    double lambda;  // || ln(1+θ) ||_{L_H}
    double bound;   // (e^{q Λ^2} - 1)^q |Ω| + 1 + |Ω|
};

/// The explicit L^q bound on a positive temperature field obtained from the
/// exponential-class norm of ln(1+θ). Holds node-wise for any positive field.
LogEmbedding log_embedding_bound(const Samples& theta, const RadialGrid& grid, double q,
                                 double tol = 1e-10);

} // namespace radflow
