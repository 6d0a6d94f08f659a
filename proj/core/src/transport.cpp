#include "holonomy/transport.hpp"

#include <cmath>
#include <string>

#include "holonomy/errors.hpp"

namespace holonomy {

namespace {

constexpr double kChartMargin = 1e-9;

void check_fiber(const Connection& conn, const Vec& g, double t_global) {
    for (int i = 0; i < g.size(); ++i)
        if (!std::isfinite(g[i]))
            throw ChartEscapeError(
                "lift_path: lifted curve became non-finite at t = " + std::to_string(t_global),
                t_global);
    if (!conn.bundle.fiber_chart.contains(g, kChartMargin))
        throw ChartEscapeError(
            "lift_path: lifted curve left the fiber chart at t = " + std::to_string(t_global),
            t_global);
}

void check_base(const Connection& conn, const Vec& x, double t_global) {
    if (!conn.bundle.base.contains(x, kChartMargin))
        throw DomainError("lift_path: path left the base chart at t = " +
                          std::to_string(t_global));
}

}  // namespace

LiftedCurve lift_path(const Connection& conn, const PathSpec& path, const Vec& g0, int steps) {
    if (steps < 1) throw DomainError("lift_path: steps must be >= 1");
    if (g0.size() != conn.fiber_dim()) throw DomainError("lift_path: g0 has wrong dimension");
    if (path.dim() != conn.base_dim())
        throw DomainError("lift_path: path dimension does not match the base chart");

    LiftedCurve out;
    out.t.push_back(0.0);
    out.base.push_back(path.at(0.0));
    out.fiber.push_back(g0);
    check_base(conn, out.base.back(), 0.0);
    check_fiber(conn, g0, 0.0);

    Vec g = g0;
    for (const PathSegment& seg : path.segments()) {
        // Integrate in the segment's local parameter; the lift ODE is
        // parameterization-invariant, so no global chain rule is needed.
        double share = seg.t1 - seg.t0;
        int n = std::max(1, static_cast<int>(std::llround(steps * share)));
        double h = 1.0 / n;
        auto f = [&](double s, const Vec& gg) -> Vec {
            Vec x = seg.value(s);
            check_base(conn, x, seg.t0 + s * share);
            return conn.gamma(x, gg) * seg.deriv(s);
        };
        for (int k = 0; k < n; ++k) {
            double s = k * h;
            Vec k1 = f(s, g);
            Vec k2 = f(s + 0.5 * h, g + 0.5 * h * k1);
            Vec k3 = f(s + 0.5 * h, g + 0.5 * h * k2);
            Vec k4 = f(s + h, g + h * k3);
            g += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            double t_global = seg.t0 + (k + 1) * h * share;
            check_fiber(conn, g, t_global);
            out.t.push_back(t_global);
            out.base.push_back(seg.value(s + h));
            out.fiber.push_back(g);
        }
    }
    return out;
}

HolonomyMap holonomy(const Connection& conn, const PathSpec& path, int steps) {
    HolonomyMap hm;
    hm.source = path.start();
    hm.target = path.end();
    hm.steps = steps;
    hm.transport = [conn, path, steps](const Vec& g0) {
        return lift_path(conn, path, g0, steps).endpoint();
    };
    return hm;
}

double endpoint_doubling_delta(const Connection& conn, const PathSpec& path, const Vec& g0,
                               int steps) {
    Vec a = lift_path(conn, path, g0, steps).endpoint();
    Vec b = lift_path(conn, path, g0, 2 * steps).endpoint();
    return sup_norm(a - b);
}

}  // namespace holonomy
