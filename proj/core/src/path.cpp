#include "holonomy/path.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "holonomy/errors.hpp"

namespace holonomy {

PathSpec::PathSpec(std::vector<PathSegment> segments) : segs_(std::move(segments)) {
    if (segs_.empty()) throw CompositionError("PathSpec: no segments");
    if (std::abs(segs_.front().t0) > 1e-12 || std::abs(segs_.back().t1 - 1.0) > 1e-12)
        throw CompositionError("PathSpec: segments must cover [0, 1]");
    for (size_t k = 0; k < segs_.size(); ++k) {
        if (!(segs_[k].t0 < segs_[k].t1))
            throw CompositionError("PathSpec: segment interval is empty");
        if (k > 0) {
            if (std::abs(segs_[k].t0 - segs_[k - 1].t1) > 1e-12)
                throw CompositionError("PathSpec: segment intervals do not tile [0, 1]");
            Vec gap = segs_[k].value(0.0) - segs_[k - 1].value(1.0);
            if (gap.cwiseAbs().maxCoeff() > 1e-9)
                throw CompositionError("PathSpec: segments do not chain continuously");
        }
    }
}

const PathSegment& PathSpec::segment_at(double t) const {
    if (segs_.empty()) throw CompositionError("PathSpec: empty path");
    if (t <= segs_.front().t0) return segs_.front();
    for (const auto& s : segs_)
        if (t <= s.t1) return s;
    return segs_.back();
}

Vec PathSpec::at(double t) const {
    const PathSegment& s = segment_at(t);
    double sl = (t - s.t0) / (s.t1 - s.t0);
    return s.value(std::clamp(sl, 0.0, 1.0));
}

Vec PathSpec::derivative(double t) const {
    const PathSegment& s = segment_at(t);
    double sl = (t - s.t0) / (s.t1 - s.t0);
    return s.deriv(std::clamp(sl, 0.0, 1.0)) / (s.t1 - s.t0);
}

bool PathSpec::is_closed(double tol) const {
    return (end() - start()).cwiseAbs().maxCoeff() <= tol;
}

int PathSpec::dim() const {
    if (segs_.empty()) return 0;
    return static_cast<int>(segs_.front().value(0.0).size());
}

PathSpec concat(const PathSpec& p, const PathSpec& q) {
    Vec gap = p.start() - q.end();
    if (gap.cwiseAbs().maxCoeff() > 1e-12)
        throw CompositionError(
            "concat: end of the first-traversed path does not match the start of the second");
    std::vector<PathSegment> segs;
    for (const auto& s : q.segments())
        segs.push_back(PathSegment{0.5 * s.t0, 0.5 * s.t1, s.value, s.deriv});
    for (const auto& s : p.segments())
        segs.push_back(PathSegment{0.5 + 0.5 * s.t0, 0.5 + 0.5 * s.t1, s.value, s.deriv});
    return PathSpec(std::move(segs));
}

PathSpec reverse(const PathSpec& p) {
    std::vector<PathSegment> segs;
    const auto& src = p.segments();
    for (auto it = src.rbegin(); it != src.rend(); ++it) {
        const PathSegment s = *it;
        segs.push_back(PathSegment{
            1.0 - s.t1, 1.0 - s.t0,
            [s](double sl) { return s.value(1.0 - sl); },
            [s](double sl) -> Vec { return -s.deriv(1.0 - sl); }});
    }
    return PathSpec(std::move(segs));
}

PathSpec constant_path(Vec x) {
    Vec zero = Vec::Zero(x.size());
    return PathSpec({PathSegment{0.0, 1.0, [x](double) { return x; },
                                 [zero](double) { return zero; }}});
}

PathSpec segment_path(Vec a, Vec b) {
    Vec d = b - a;
    return PathSpec({PathSegment{0.0, 1.0,
                                 [a, d](double s) -> Vec { return a + s * d; },
                                 [d](double) { return d; }}});
}

PathSpec polyline_path(const std::vector<Vec>& points) {
    if (points.size() < 2) throw CompositionError("polyline_path: need at least two points");
    size_t n = points.size() - 1;
    std::vector<PathSegment> segs;
    for (size_t k = 0; k < n; ++k) {
        Vec a = points[k];
        Vec d = points[k + 1] - points[k];
        segs.push_back(PathSegment{static_cast<double>(k) / n, static_cast<double>(k + 1) / n,
                                   [a, d](double s) -> Vec { return a + s * d; },
                                   [d](double) { return d; }});
    }
    return PathSpec(std::move(segs));
}

PathSpec square_loop(const Vec& corner, double side, bool ccw, int i, int j) {
    Vec ei = Vec::Zero(corner.size());
    Vec ej = Vec::Zero(corner.size());
    ei[i] = side;
    ej[j] = side;
    std::vector<Vec> pts;
    if (ccw)
        pts = {corner, corner + ei, corner + ei + ej, corner + ej, corner};
    else
        pts = {corner, corner + ej, corner + ej + ei, corner + ei, corner};
    return polyline_path(pts);
}

PathSpec arc_path(const Vec& center, double rx, double ry, double angle0, double angle1) {
    if (center.size() != 2) throw CompositionError("arc_path: center must be 2-dimensional");
    double span = angle1 - angle0;
    return PathSpec({PathSegment{
        0.0, 1.0,
        [=](double s) -> Vec {
            double a = angle0 + s * span;
            return make_vec({center[0] + rx * std::cos(a), center[1] + ry * std::sin(a)});
        },
        [=](double s) -> Vec {
            double a = angle0 + s * span;
            return make_vec({-rx * span * std::sin(a), ry * span * std::cos(a)});
        }}});
}

PathSpec circle_loop(const Vec& center, double r) {
    return arc_path(center, r, r, 0.0, 2.0 * M_PI);
}

PathSpec ellipse_loop(const Vec& center, double ax, double ay) {
    return arc_path(center, ax, ay, 0.0, 2.0 * M_PI);
}

}  // namespace holonomy
