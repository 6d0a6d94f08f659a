#pragma once

#include <algorithm>
#include <cmath>

#include "holonomy/types.hpp"

namespace holonomy {

/// Default central-difference step, rescaled away from unit size for large
/// arguments so the relative truncation error stays predictable.
inline double fd_step(double ref_norm) { return 1e-5 * std::max(1.0, ref_norm); }
inline double fd_step(const Vec& at) { return fd_step(at.norm()); }

/// Central difference of f along direction d at p.
template <class F>
Vec central_diff(F&& f, const Vec& p, const Vec& dir, double h) {
    return (f(p + h * dir) - f(p - h * dir)) / (2.0 * h);
}

/// Jacobian of f at p via per-coordinate central differences.
template <class F>
Mat central_jacobian(F&& f, const Vec& p, int out_dim, double h) {
    Mat J(out_dim, p.size());
    Vec e = Vec::Zero(p.size());
    for (int k = 0; k < p.size(); ++k) {
        e[k] = 1.0;
        J.col(k) = central_diff(f, p, e, h);
        e[k] = 0.0;
    }
    return J;
}

}  // namespace holonomy
