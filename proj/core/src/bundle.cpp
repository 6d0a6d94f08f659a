#include "holonomy/bundle.hpp"

#include "holonomy/errors.hpp"
#include "holonomy/finite_diff.hpp"

namespace holonomy {

Vec sample_chart_point(SampleRng& rng, const BaseChart& chart) {
    for (int tries = 0; tries < 10000; ++tries) {
        Vec x = rng.point_in(chart.box);
        if (!chart.member || chart.member(x)) return x;
    }
    throw DomainError("sample_chart_point: membership predicate rejected every draw");
}

LieGroupModel GroupBundle::model_at(const Vec& x) const {
    if (!has_group_law())
        throw PreconditionError("GroupBundle: fiber over x carries no group law");
    if (!base.contains(x)) throw DomainError("GroupBundle::model_at: x outside base chart");
    if (fiber_model) return fiber_model(x);
    LieGroupModel G;
    G.dim = fiber_dim;
    G.chart = fiber_chart;
    G.name = "fiber";
    auto m = mul;
    auto i = inv;
    G.mul = [m, x](const Vec& g, const Vec& h) { return m(x, g, h); };
    G.inv = [i, x](const Vec& g) { return i(x, g); };
    G.id = id(x);
    return G;
}

GroupBundle trivial_bundle(BaseChart base, const LieGroupModel& fiber) {
    GroupBundle B;
    B.base = std::move(base);
    B.fiber_dim = fiber.dim;
    B.fiber_chart = fiber.chart;
    B.mul = [fiber](const Vec&, const Vec& g, const Vec& h) { return fiber.mul(g, h); };
    B.inv = [fiber](const Vec&, const Vec& g) { return fiber.inv(g); };
    B.id = [fiber](const Vec&) { return fiber.id; };
    B.fiber_model = [fiber](const Vec&) { return fiber; };
    return B;
}

GroupBundle plain_bundle(BaseChart base, int fiber_dim, Box fiber_chart) {
    GroupBundle B;
    B.base = std::move(base);
    B.fiber_dim = fiber_dim;
    B.fiber_chart = std::move(fiber_chart);
    return B;
}

GroupBundle semidirect_family_bundle(BaseChart base) {
    if (base.dim() != 2)
        throw DomainError("semidirect_family_bundle: base must be 2-dimensional (lambda, mu)");
    GroupBundle B;
    B.base = std::move(base);
    B.fiber_dim = 3;
    B.fiber_chart = semidirect_group(0.0, 0.0).chart;
    B.mul = [](const Vec& x, const Vec& g, const Vec& h) {
        return semidirect_group(x[0], x[1]).mul(g, h);
    };
    B.inv = [](const Vec& x, const Vec& g) { return semidirect_group(x[0], x[1]).inv(g); };
    B.id = [](const Vec&) { return make_vec({1.0, 0.0, 0.0}); };
    B.fiber_model = [](const Vec& x) { return semidirect_group(x[0], x[1]); };
    return B;
}

Connection trivial_connection(GroupBundle bundle) {
    Connection c;
    int n = bundle.fiber_dim;
    int m = bundle.base.dim();
    c.bundle = std::move(bundle);
    c.gamma = [n, m](const Vec&, const Vec&) { return Mat::Zero(n, m); };
    return c;
}

Mat section_derivative(const SectionSpec& s, const Vec& x) {
    if (!s.domain.contains(x)) throw DomainError("section_derivative: x outside section domain");
    if (s.deriv) return s.deriv(x);
    Vec g = s.eval(x);
    return central_jacobian(s.eval, x, static_cast<int>(g.size()), 1e-5);
}

Vec vertical_project(const Connection& conn, const Vec& x, const Vec& g, const Vec& v_base,
                     const Vec& v_fiber) {
    if (!conn.bundle.base.contains(x))
        throw DomainError("vertical_project: x outside base chart");
    if (!conn.bundle.fiber_chart.contains(g))
        throw DomainError("vertical_project: g outside fiber chart");
    return v_fiber - conn.gamma(x, g) * v_base;
}

Vec covariant_derivative(const Connection& conn, const SectionSpec& s, const Vec& x,
                         const Vec& v) {
    Vec g = s.eval(x);
    Mat dg = section_derivative(s, x);
    return vertical_project(conn, x, g, v, dg * v);
}

std::pair<Vec, Vec> lift_vector(const Connection& conn,
                                const std::function<Vec(const Vec&)>& field, const Vec& x,
                                const Vec& g) {
    if (!conn.bundle.base.contains(x)) throw DomainError("lift_vector: x outside base chart");
    if (!conn.bundle.fiber_chart.contains(g))
        throw DomainError("lift_vector: g outside fiber chart");
    Vec v = field(x);
    return {v, conn.gamma(x, g) * v};
}

}  // namespace holonomy
