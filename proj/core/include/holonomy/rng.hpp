#pragma once

#include <cstdint>
#include <random>

#include "holonomy/box.hpp"
#include "holonomy/types.hpp"

namespace holonomy {

/// Deterministic sample stream.  Uniform doubles are derived directly from
/// the raw 64-bit engine output, so a given seed produces the same stream on
/// every platform and standard library.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform draw in [lo, hi).
    double uniform(double lo, double hi) {
        // 53-bit mantissa in [0, 1)
        double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    /// Interior point of the box; each coordinate keeps a relative margin
    /// away from the (sampling) boundary.
    Vec point_in(const Box& box, double edge_margin = 0.05) {
        Box s = box.sampling_box();
        Vec p(s.dim());
        for (int i = 0; i < s.dim(); ++i) {
            double w = s[i].width();
            p[i] = uniform(s[i].lo + edge_margin * w, s[i].hi - edge_margin * w);
        }
        return p;
    }

    /// Unit vector (normalized cube sample; tiny draws are rejected).
    Vec direction(int dim) {
        for (;;) {
            Vec v = tangent(dim, 1.0);
            double n = v.norm();
            if (n > 1e-3) return v / n;
        }
    }

    /// Vector with components uniform in [-scale, scale].
    Vec tangent(int dim, double scale = 1.0) {
        Vec v(dim);
        for (int i = 0; i < dim; ++i) v[i] = uniform(-scale, scale);
        return v;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace holonomy
