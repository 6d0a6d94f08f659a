#include "holonomy/box.hpp"

#include <cmath>
#include <utility>

#include "holonomy/errors.hpp"

namespace holonomy {

Box::Box(std::vector<Interval> intervals) : ivs_(std::move(intervals)) {
    for (const auto& iv : ivs_) {
        if (!(iv.lo < iv.hi)) throw DomainError("Box: interval endpoints must satisfy lo < hi");
    }
}

Box Box::cube(int dim, double lo, double hi) {
    return Box(std::vector<Interval>(static_cast<size_t>(dim), Interval{lo, hi}));
}

Box Box::unbounded(int dim) {
    return Box(std::vector<Interval>(static_cast<size_t>(dim), Interval{}));
}

bool Box::contains(const Vec& p, double margin) const {
    if (p.size() != dim()) return false;
    for (int i = 0; i < dim(); ++i) {
        if (!std::isfinite(p[i])) return false;
        if (!ivs_[static_cast<size_t>(i)].contains(p[i], margin)) return false;
    }
    return true;
}

Box Box::sampling_box(double fallback_lo, double fallback_hi) const {
    std::vector<Interval> out;
    out.reserve(ivs_.size());
    for (const auto& iv : ivs_) {
        double lo = std::isfinite(iv.lo) ? iv.lo : fallback_lo;
        double hi = std::isfinite(iv.hi) ? iv.hi : fallback_hi;
        if (!(lo < hi)) hi = lo + (fallback_hi - fallback_lo);
        out.push_back(Interval{lo, hi});
    }
    return Box(out);
}

Vec Box::center() const {
    Box s = sampling_box();
    Vec c(dim());
    for (int i = 0; i < dim(); ++i) c[i] = 0.5 * (s[i].lo + s[i].hi);
    return c;
}

}  // namespace holonomy
