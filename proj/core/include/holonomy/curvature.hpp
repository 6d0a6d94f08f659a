#pragma once

#include <vector>

#include "holonomy/bundle.hpp"
#include "holonomy/path.hpp"
#include "holonomy/types.hpp"

namespace holonomy {

/// Curvature of the connection evaluated on the coordinate pair (e_i, e_j)
/// at (x, g); the result is a fiber tangent at g.
///
/// With Gamma_k(x, g) = gamma(x, g) e_k, the value is
///   1/2 ( d_{x_i} Gamma_j - d_{x_j} Gamma_i
///         + (D_g Gamma_j) Gamma_i - (D_g Gamma_i) Gamma_j ),
/// all derivatives by central differences.  Swapping i and j negates the
/// result exactly (the same differences are subtracted in reverse order).
Vec curvature(const Connection& conn, const Vec& x, int i, int j, const Vec& g);

/// Square loop with corners x, x + r e_i, x + r e_i + r e_j, x + r e_j for
/// r = sqrt(eps); its enclosed coordinate area is eps.  Throws GeometryError
/// when the square does not fit inside the base chart.
PathSpec commutator_loop(const BaseChart& base, const Vec& x, int i, int j, double eps);

/// Result of the shrinking-loop derivative estimate.
struct SlopeFit {
    Vec estimate;                ///< extrapolated d/d eps of hol(loop_eps)(g) at 0
    double residual = 0.0;       ///< sup-norm gap between the last two extrapolants
    bool monotone = true;        ///< raw slopes approached the estimate monotonically
    std::vector<double> eps;     ///< the eps ladder used
    std::vector<Vec> deviation;  ///< hol(loop_eps)(g) - g per eps
};

/// eps0 * {1, 1/2, 1/4, 1/8}.
std::vector<double> default_eps_list(double eps0 = 0.04);

/// Estimates d/d eps|_0 hol(commutator_loop(x, i, j, eps))(g) by Richardson
/// extrapolation over a halving eps ladder; the value converges to the
/// vertical commutator of the coordinate lifts, i.e. 2 x curvature.
SlopeFit ambrose_singer_slope(const Connection& conn, const Vec& x, int i, int j, const Vec& g,
                              const std::vector<double>& eps_list, int steps);

}  // namespace holonomy
