#pragma once

#include <limits>
#include <vector>

#include "holonomy/types.hpp"

namespace holonomy {

/// Open real interval; infinite endpoints are allowed.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double x, double margin = 0.0) const {
        return x > lo + margin && x < hi - margin;
    }
    double width() const { return hi - lo; }
};

/// Product of open intervals.  Used both for base charts and fiber charts.
class Box {
public:
    Box() = default;
    explicit Box(std::vector<Interval> intervals);

    /// [lo, hi]^dim.
    static Box cube(int dim, double lo, double hi);
    /// All of R^dim.
    static Box unbounded(int dim);

    int dim() const { return static_cast<int>(ivs_.size()); }
    const Interval& operator[](int i) const { return ivs_[static_cast<size_t>(i)]; }

    bool contains(const Vec& p, double margin = 0.0) const;

    /// Bounded box used when drawing samples from a possibly unbounded chart:
    /// infinite endpoints are replaced by the fallback bounds.
    Box sampling_box(double fallback_lo = -2.0, double fallback_hi = 2.0) const;

    Vec center() const;

private:
    std::vector<Interval> ivs_;
};

}  // namespace holonomy
