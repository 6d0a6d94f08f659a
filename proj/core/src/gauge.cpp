#include "holonomy/gauge.hpp"

#include "holonomy/curvature.hpp"
#include "holonomy/errors.hpp"
#include "holonomy/rng.hpp"
#include "holonomy/transport.hpp"

namespace holonomy {

Connection principal_to_connection(const PrincipalConnection& pc) {
    Connection conn;
    conn.bundle = trivial_bundle(pc.base, pc.group);
    LieGroupModel G = pc.group;
    auto A = pc.coeff;
    conn.gamma = [G, A](const Vec& x, const Vec& g) -> Mat {
        Mat a = A(x);
        Mat out(a.rows(), a.cols());
        for (int c = 0; c < a.cols(); ++c)
            out.col(c) = -right_translate_from_id(G, g, a.col(c));
        return out;
    };
    return conn;
}

Connection induce_gauge_connection(const PrincipalConnection& pc) {
    Connection conn;
    conn.bundle = trivial_bundle(pc.base, pc.group);
    LieGroupModel G = pc.group;
    auto A = pc.coeff;
    conn.gamma = [G, A](const Vec& x, const Vec& g) -> Mat {
        Mat a = A(x);
        Mat out(a.rows(), a.cols());
        for (int c = 0; c < a.cols(); ++c)
            out.col(c) =
                left_translate_from_id(G, g, a.col(c)) - right_translate_from_id(G, g, a.col(c));
        return out;
    };
    return conn;
}

double right_equivariance_residual(const PrincipalConnection& pc, const PathSpec& loop,
                                   int steps, int samples, std::uint64_t seed) {
    Connection conn = principal_to_connection(pc);
    const LieGroupModel& G = pc.group;
    SampleRng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        Vec g = rng.point_in(G.chart);
        Vec k = rng.point_in(G.chart);
        Vec lhs = lift_path(conn, loop, G.mul(g, k), steps).endpoint();
        Vec rhs = G.mul(lift_path(conn, loop, g, steps).endpoint(), k);
        worst = std::max(worst, sup_norm(lhs - rhs));
    }
    return worst;
}

double compare_holonomies(const PrincipalConnection& pc, const PathSpec& loop, int steps,
                          int samples, std::uint64_t seed) {
    if (!loop.is_closed(1e-9))
        throw PreconditionError("compare_holonomies: path is not a loop");
    Connection principal = principal_to_connection(pc);
    Connection gauge = induce_gauge_connection(pc);
    const LieGroupModel& G = pc.group;

    Vec k = lift_path(principal, loop, G.id, steps).endpoint();
    Vec k_inv = G.inv(k);

    SampleRng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        Vec g = rng.point_in(G.chart);
        Vec lhs = lift_path(gauge, loop, g, steps).endpoint();
        Vec rhs = G.mul(G.mul(k, g), k_inv);
        worst = std::max(worst, sup_norm(lhs - rhs));
    }
    return worst;
}

double compare_curvatures(const PrincipalConnection& pc, const Vec& x, int i, int j,
                          const Vec& g) {
    Connection principal = principal_to_connection(pc);
    Connection gauge = induce_gauge_connection(pc);
    const LieGroupModel& G = pc.group;

    Vec w = curvature(principal, x, i, j, G.id);
    Vec pushed = right_translate_from_id(G, g, w) - left_translate_from_id(G, g, w);
    Vec direct = curvature(gauge, x, i, j, g);
    return sup_norm(direct - pushed);
}

}  // namespace holonomy
