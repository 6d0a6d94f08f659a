#pragma once

#include <functional>
#include <vector>

#include "holonomy/types.hpp"

namespace holonomy {

/// One smooth piece of a path.  `value`/`deriv` are parameterized by a local
/// s in [0, 1]; [t0, t1] is the piece's share of the global parameter.
struct PathSegment {
    double t0 = 0.0;
    double t1 = 1.0;
    std::function<Vec(double)> value;
    std::function<Vec(double)> deriv;  ///< d value / d s
};

/// Piecewise-smooth path [0, 1] -> base chart coordinates.
class PathSpec {
public:
    PathSpec() = default;
    explicit PathSpec(std::vector<PathSegment> segments);

    Vec at(double t) const;
    /// d/dt, including the segment reparameterization factor.
    Vec derivative(double t) const;

    Vec start() const { return at(0.0); }
    Vec end() const { return at(1.0); }
    bool is_closed(double tol = 1e-9) const;

    const std::vector<PathSegment>& segments() const { return segs_; }
    int dim() const;

private:
    const PathSegment& segment_at(double t) const;
    std::vector<PathSegment> segs_;
};

/// Concatenation with the SECOND argument traversed first: the result runs
/// q on [0, 1/2] and p on [1/2, 1].  Requires q.end() == p.start() within
/// 1e-12 (throws CompositionError otherwise).
PathSpec concat(const PathSpec& p, const PathSpec& q);

/// t -> p(1 - t).
PathSpec reverse(const PathSpec& p);

PathSpec constant_path(Vec x);
PathSpec segment_path(Vec a, Vec b);
/// Straight pieces between consecutive points, uniform in parameter.
PathSpec polyline_path(const std::vector<Vec>& points);
/// Axis-aligned square loop based at `corner`, spanning directions i and j.
PathSpec square_loop(const Vec& corner, double side, bool ccw = true, int i = 0, int j = 1);
/// Arc of an axis-aligned ellipse (full loop when angle1 - angle0 = 2 pi).
PathSpec arc_path(const Vec& center, double rx, double ry, double angle0, double angle1);
PathSpec circle_loop(const Vec& center, double r);
PathSpec ellipse_loop(const Vec& center, double ax, double ay);

}  // namespace holonomy
