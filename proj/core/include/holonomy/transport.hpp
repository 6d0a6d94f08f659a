#pragma once

#include <functional>
#include <vector>

#include "holonomy/bundle.hpp"
#include "holonomy/path.hpp"
#include "holonomy/types.hpp"

namespace holonomy {

/// Solution samples of the horizontal-lift ODE  gdot = gamma(x(t), g) xdot(t).
struct LiftedCurve {
    std::vector<double> t;   ///< global parameters of every integrator node
    std::vector<Vec> base;   ///< x(t_k)
    std::vector<Vec> fiber;  ///< g(t_k)

    const Vec& endpoint() const { return fiber.back(); }
    int step_count() const { return static_cast<int>(t.size()) - 1; }
};

/// Fixed-step RK4 horizontal lift of `path` starting at g0.  `steps` is the
/// nominal total step count; it is split over the segments proportionally to
/// their parameter share so that integration restarts exactly at breakpoints.
///
/// Throws ChartEscapeError (with the escape parameter) if the lift leaves
/// the fiber chart interior (margin 1e-9), and DomainError if the path
/// leaves the base chart.
LiftedCurve lift_path(const Connection& conn, const PathSpec& path, const Vec& g0, int steps);

/// Fiber transport map induced by a path (a holonomy map when the path is a
/// loop).  `transport` re-integrates on every call.
struct HolonomyMap {
    Vec source;  ///< path start in the base
    Vec target;  ///< path end in the base
    int steps = 0;
    std::function<Vec(const Vec&)> transport;
};

HolonomyMap holonomy(const Connection& conn, const PathSpec& path, int steps);

/// || endpoint(2 steps) - endpoint(steps) ||_sup; decays ~16x per doubling
/// for a 4th-order scheme on smooth data.
double endpoint_doubling_delta(const Connection& conn, const PathSpec& path, const Vec& g0,
                               int steps);

}  // namespace holonomy
