#include "holonomy/groupconn.hpp"

#include <cmath>

#include "holonomy/errors.hpp"
#include "holonomy/finite_diff.hpp"
#include "holonomy/rng.hpp"
#include "holonomy/transport.hpp"

namespace holonomy {

namespace {

void require_group_law(const GroupBundle& b, const char* who) {
    if (!b.has_group_law())
        throw PreconditionError(std::string(who) + ": bundle carries no group law");
}

/// d/dx of x -> mul(x, g, h), applied to v (central differences).
Vec base_diff_mul(const GroupBundle& b, const Vec& x, const Vec& g, const Vec& h, const Vec& v) {
    double step = fd_step(x);
    if (!b.base.box.contains(x, 2.0 * step))
        throw BoundaryProximityError("group_connection_residual: x too close to the base boundary");
    return central_diff([&](const Vec& xx) { return b.mul(xx, g, h); }, x, v, step);
}

Vec base_diff_inv(const GroupBundle& b, const Vec& x, const Vec& g, const Vec& v) {
    double step = fd_step(x);
    if (!b.base.box.contains(x, 2.0 * step))
        throw BoundaryProximityError("inversion_residual: x too close to the base boundary");
    return central_diff([&](const Vec& xx) { return b.inv(xx, g); }, x, v, step);
}

/// D_g of g -> mul(x, g, h), applied to w.
Vec fiber_diff_mul_left_slot(const GroupBundle& b, const Vec& x, const Vec& g, const Vec& h,
                             const Vec& w) {
    if (b.fiber_model) return dmul_right(b.fiber_model(x), g, h, w);
    return central_diff([&](const Vec& gg) { return b.mul(x, gg, h); }, g, w, fd_step(g));
}

/// D_h of h -> mul(x, g, h), applied to w.
Vec fiber_diff_mul_right_slot(const GroupBundle& b, const Vec& x, const Vec& g, const Vec& h,
                              const Vec& w) {
    if (b.fiber_model) return dmul_left(b.fiber_model(x), g, h, w);
    return central_diff([&](const Vec& hh) { return b.mul(x, g, hh); }, h, w, fd_step(h));
}

Vec fiber_diff_inv(const GroupBundle& b, const Vec& x, const Vec& g, const Vec& w) {
    if (b.fiber_model) {
        const LieGroupModel G = b.fiber_model(x);
        // d inv = -dL_{g^{-1}} o dR_{g^{-1}}-to-id; differentiate directly
        // only when no closed-form mul differentials exist.
        if (G.dmul_left && G.dmul_right) {
            Vec at_id = dmul_right(G, g, G.inv(g), w);      // dR_{g^{-1}}: T_g -> T_id
            return -dmul_left(G, G.inv(g), G.id, at_id);    // -dL_{g^{-1}}: T_id -> T_{g^{-1}}
        }
    }
    return central_diff([&](const Vec& gg) { return b.inv(x, gg); }, g, w, fd_step(g));
}

}  // namespace

Vec group_connection_residual(const Connection& conn, const Vec& x, const Vec& g, const Vec& h,
                              const Vec& v) {
    const GroupBundle& b = conn.bundle;
    require_group_law(b, "group_connection_residual");
    Vec gh = b.mul(x, g, h);
    Vec lifted = base_diff_mul(b, x, g, h, v);
    lifted += fiber_diff_mul_left_slot(b, x, g, h, conn.gamma(x, g) * v);
    lifted += fiber_diff_mul_right_slot(b, x, g, h, conn.gamma(x, h) * v);
    return conn.gamma(x, gh) * v - lifted;
}

Vec inversion_residual(const Connection& conn, const Vec& x, const Vec& g, const Vec& v) {
    const GroupBundle& b = conn.bundle;
    require_group_law(b, "inversion_residual");
    Vec ginv = b.inv(x, g);
    Vec lifted = base_diff_inv(b, x, g, v) + fiber_diff_inv(b, x, g, conn.gamma(x, g) * v);
    return conn.gamma(x, ginv) * v - lifted;
}

GroupConnectionReport check_group_connection(const Connection& conn, int samples,
                                             std::uint64_t seed, double tol) {
    require_group_law(conn.bundle, "check_group_connection");
    GroupConnectionReport rep;
    rep.tol = tol;
    rep.samples = samples;
    SampleRng rng(seed);
    const Box& fc = conn.bundle.fiber_chart;
    for (int k = 0; k < samples; ++k) {
        ResidualSample s;
        s.x = sample_chart_point(rng, conn.bundle.base);
        s.g = rng.point_in(fc);
        s.h = rng.point_in(fc);
        s.v = rng.direction(conn.base_dim());
        double r_mul = sup_norm(group_connection_residual(conn, s.x, s.g, s.h, s.v));
        double r_inv = sup_norm(inversion_residual(conn, s.x, s.g, s.v));
        s.residual = r_mul;
        s.kind = "mul";
        if (r_inv > r_mul) {
            s.residual = r_inv;
            s.kind = "inv";
        }
        if (s.residual > rep.max_residual) {
            rep.max_residual = s.residual;
            rep.worst = s;
        }
        rep.rows.push_back(std::move(s));
    }
    rep.pass = rep.max_residual < tol;
    return rep;
}

Vec cocycle_identity_residual(const CocycleForm& form, const Vec& x, const Vec& g, const Vec& h,
                              const Vec& v) {
    const GroupBundle& b = form.bundle;
    require_group_law(b, "cocycle_identity_residual");
    LieGroupModel G = b.model_at(x);
    Vec gh = b.mul(x, g, h);
    Vec lhs = form.theta(x, gh) * v;
    Vec rhs = form.theta(x, g) * v + adjoint(G, g, form.theta(x, h) * v);
    return lhs - rhs;
}

CocycleReport check_cocycle(const CocycleForm& form, int samples, std::uint64_t seed,
                            double tol) {
    CocycleReport rep;
    rep.tol = tol;
    rep.samples = samples;
    SampleRng rng(seed);
    for (int k = 0; k < samples; ++k) {
        Vec x = sample_chart_point(rng, form.bundle.base);
        Vec g = rng.point_in(form.bundle.fiber_chart);
        Vec h = rng.point_in(form.bundle.fiber_chart);
        Vec v = rng.direction(form.bundle.base.dim());
        rep.max_residual = std::max(
            rep.max_residual, sup_norm(cocycle_identity_residual(form, x, g, h, v)));
    }
    rep.pass = rep.max_residual < tol;
    return rep;
}

CocycleForm connection_difference(const Connection& a, const Connection& b, int gate_samples,
                                  std::uint64_t gate_seed, double gate_tol) {
    require_group_law(a.bundle, "connection_difference");
    if (a.base_dim() != b.base_dim() || a.fiber_dim() != b.fiber_dim())
        throw PreconditionError("connection_difference: connections live on different bundles");
    GroupConnectionReport ga = check_group_connection(a, gate_samples, gate_seed, gate_tol);
    if (!ga.pass)
        throw PreconditionError("connection_difference: first input failed the group gate "
                                "(max residual " + std::to_string(ga.max_residual) + ")");
    GroupConnectionReport gb = check_group_connection(b, gate_samples, gate_seed, gate_tol);
    if (!gb.pass)
        throw PreconditionError("connection_difference: second input failed the group gate "
                                "(max residual " + std::to_string(gb.max_residual) + ")");

    CocycleForm form;
    form.bundle = a.bundle;
    auto bundle = a.bundle;
    auto ga_fn = a.gamma;
    auto gb_fn = b.gamma;
    form.theta = [bundle, ga_fn, gb_fn](const Vec& x, const Vec& g) -> Mat {
        LieGroupModel G = bundle.model_at(x);
        Mat diff = ga_fn(x, g) - gb_fn(x, g);
        Mat out(diff.rows(), diff.cols());
        for (int c = 0; c < diff.cols(); ++c)
            out.col(c) = right_translate_to_id(G, g, diff.col(c));
        return out;
    };
    return form;
}

Connection add_cocycle(const Connection& conn, const CocycleForm& form) {
    require_group_law(conn.bundle, "add_cocycle");
    Connection out;
    out.bundle = conn.bundle;
    auto bundle = conn.bundle;
    auto g0 = conn.gamma;
    auto th = form.theta;
    out.gamma = [bundle, g0, th](const Vec& x, const Vec& g) -> Mat {
        LieGroupModel G = bundle.model_at(x);
        Mat shift = th(x, g);
        Mat out_m = g0(x, g);
        for (int c = 0; c < shift.cols(); ++c)
            out_m.col(c) += right_translate_from_id(G, g, shift.col(c));
        return out_m;
    };
    return out;
}

double holonomy_morphism_residual(const Connection& conn, const PathSpec& loop, const Vec& g,
                                  const Vec& h, int steps) {
    require_group_law(conn.bundle, "holonomy_morphism_residual");
    if (!loop.is_closed(1e-9))
        throw PreconditionError("holonomy_morphism_residual: path is not a loop");
    Vec x0 = loop.start();
    const GroupBundle& b = conn.bundle;
    Vec tg = lift_path(conn, loop, g, steps).endpoint();
    Vec th = lift_path(conn, loop, h, steps).endpoint();
    Vec tgh = lift_path(conn, loop, b.mul(x0, g, h), steps).endpoint();
    return sup_norm(tgh - b.mul(x0, tg, th));
}

TrivializationMap flow_trivialization(const Connection& conn, const Box& cube, int steps) {
    if (cube.dim() != conn.base_dim())
        throw GeometryError("flow_trivialization: cube dimension mismatch");
    for (int i = 0; i < cube.dim(); ++i) {
        if (!std::isfinite(cube[i].lo) || !std::isfinite(cube[i].hi))
            throw GeometryError("flow_trivialization: cube must be bounded");
    }
    Vec lo(cube.dim()), hi(cube.dim());
    for (int i = 0; i < cube.dim(); ++i) {
        lo[i] = cube[i].lo;
        hi[i] = cube[i].hi;
    }
    if (!conn.bundle.base.contains(lo, 0.0) || !conn.bundle.base.contains(hi, 0.0))
        throw GeometryError("flow_trivialization: cube leaves the base chart");

    TrivializationMap tm;
    tm.cube = cube;
    tm.anchor = cube.center();
    tm.steps = steps;
    Vec anchor = tm.anchor;

    // Axis-ordered polyline from x to the anchor: coordinate 1 is flattened
    // first, then coordinate 2, and so on.  Zero-length pieces are skipped.
    auto descent_points = [anchor](const Vec& x) {
        std::vector<Vec> pts = {x};
        Vec cur = x;
        for (int i = 0; i < anchor.size(); ++i) {
            if (cur[i] != anchor[i]) {
                Vec nxt = cur;
                nxt[i] = anchor[i];
                pts.push_back(nxt);
                cur = nxt;
            }
        }
        return pts;
    };

    tm.to_anchor = [conn, cube, descent_points, steps](const Vec& x, const Vec& g) -> Vec {
        if (!cube.contains(x)) throw DomainError("trivialization: x outside the cube");
        auto pts = descent_points(x);
        if (pts.size() < 2) return g;  // already at the anchor
        return lift_path(conn, polyline_path(pts), g, steps).endpoint();
    };
    tm.from_anchor = [conn, cube, descent_points, steps](const Vec& x, const Vec& ga) -> Vec {
        if (!cube.contains(x)) throw DomainError("trivialization: x outside the cube");
        auto pts = descent_points(x);
        if (pts.size() < 2) return ga;
        std::vector<Vec> up(pts.rbegin(), pts.rend());
        return lift_path(conn, polyline_path(up), ga, steps).endpoint();
    };
    return tm;
}

}  // namespace holonomy
