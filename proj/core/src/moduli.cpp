#include "holonomy/moduli.hpp"

#include <cmath>
#include <limits>

#include "holonomy/curvature.hpp"
#include "holonomy/errors.hpp"
#include "holonomy/finite_diff.hpp"
#include "holonomy/groups.hpp"
#include "holonomy/rng.hpp"
#include "holonomy/transport.hpp"

namespace holonomy {

namespace {

/// Seeded polar sample of the open annulus, kept away from both radii.
Vec annulus_point(SampleRng& rng, const AnnulusBase& an) {
    double w = an.r1 - an.r0;
    double r = rng.uniform(an.r0 + 0.1 * w, an.r1 - 0.1 * w);
    double th = rng.uniform(0.0, 2.0 * M_PI);
    return make_vec({r * std::cos(th), r * std::sin(th)});
}

}  // namespace

BaseChart AnnulusBase::chart() const {
    if (!(0.0 < r0 && r0 < r1)) throw DomainError("AnnulusBase: need 0 < r0 < r1");
    BaseChart c;
    c.box = Box::cube(2, -r1, r1);
    double lo = r0, hi = r1;
    c.member = [lo, hi](const Vec& x) {
        double r = std::hypot(x[0], x[1]);
        return r > lo && r < hi;
    };
    return c;
}

Eigen::RowVector2d AnnulusBase::angle_form(const Vec& x) const {
    double r2 = x[0] * x[0] + x[1] * x[1];
    Eigen::RowVector2d row;
    row << -x[1] / r2, x[0] / r2;
    return row;
}

double AnnulusBase::circulation(int panels) const {
    // 4-point Gauss-Legendre on each panel of the unit circle.
    static const double nodes[4] = {-0.8611363115940526, -0.3399810435848563,
                                    0.3399810435848563, 0.8611363115940526};
    static const double weights[4] = {0.3478548451374538, 0.6521451548625461,
                                      0.6521451548625461, 0.3478548451374538};
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        double a = static_cast<double>(p) / panels;
        double b = static_cast<double>(p + 1) / panels;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int q = 0; q < 4; ++q) {
            double t = mid + half * nodes[q];
            double ang = 2.0 * M_PI * t;
            Vec x = make_vec({std::cos(ang), std::sin(ang)});
            Vec dx = make_vec({-2.0 * M_PI * std::sin(ang), 2.0 * M_PI * std::cos(ang)});
            total += half * weights[q] * (angle_form(x) * dx)(0);
        }
    }
    return total;
}

Vec flow_time(const RepresentationSpec& rep, const Vec& g, double T, int steps) {
    if (steps < 1) throw DomainError("flow_time: steps must be >= 1");
    double h = T / steps;
    Vec cur = g;
    for (int k = 0; k < steps; ++k) {
        Vec k1 = rep.flow_field(cur);
        Vec k2 = rep.flow_field(cur + 0.5 * h * k1);
        Vec k3 = rep.flow_field(cur + 0.5 * h * k2);
        Vec k4 = rep.flow_field(cur + h * k3);
        cur += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!rep.group.chart.contains(cur))
            throw ChartEscapeError("flow_time: flow left the group chart",
                                   (k + 1) * h);
    }
    return cur;
}

double representation_cocycle_residual(const RepresentationSpec& rep, int samples,
                                       std::uint64_t seed) {
    const LieGroupModel& G = rep.group;
    auto log_deriv = [&](const Vec& g) {
        return right_translate_to_id(G, g, rep.flow_field(g));
    };
    SampleRng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        Vec g = rng.point_in(G.chart);
        Vec h = rng.point_in(G.chart);
        Vec lhs = log_deriv(G.mul(g, h));
        Vec rhs = log_deriv(g) + adjoint(G, g, log_deriv(h));
        worst = std::max(worst, sup_norm(lhs - rhs));
    }
    return worst;
}

void validate_representation(const RepresentationSpec& rep, std::uint64_t seed, double tol) {
    double r = representation_cocycle_residual(rep, 100, seed);
    if (!(r < tol))
        throw PreconditionError(
            "representation field's log-derivative fails twisted additivity (residual " +
            std::to_string(r) + ")");
}

Connection build_from_representation(const RepresentationSpec& rep, const AnnulusBase& annulus) {
    Connection conn;
    conn.bundle = trivial_bundle(annulus.chart(), rep.group);
    AnnulusBase an = annulus;
    auto w = rep.flow_field;
    conn.gamma = [an, w](const Vec& x, const Vec& g) -> Mat {
        return w(g) * (an.angle_form(x) / (2.0 * M_PI));
    };
    return conn;
}

AutomorphismEstimate monodromy(const Connection& conn, const AnnulusBase& annulus, int steps,
                               std::uint64_t seed) {
    if (!conn.bundle.has_group_law())
        throw PreconditionError("monodromy: bundle carries no group law");
    if (!(annulus.r0 < 1.0 && annulus.r1 > 1.5))
        throw GeometryError("monodromy: annulus must contain the probe loops");

    // Flatness gate on seeded samples.
    SampleRng rng(seed);
    double curv = 0.0;
    for (int s = 0; s < 40; ++s) {
        Vec x = annulus_point(rng, annulus);
        Vec g = rng.point_in(conn.bundle.fiber_chart);
        curv = std::max(curv, sup_norm(curvature(conn, x, 0, 1, g)));
    }
    if (!(curv < 1e-6))
        throw NotFlatError("monodromy: connection is not flat (max curvature sample " +
                           std::to_string(curv) + ")");

    Vec c0 = make_vec({0.0, 0.0});
    PathSpec gen = circle_loop(c0, 1.0);
    PathSpec probe_circle = circle_loop(c0, 1.5);
    PathSpec probe_ellipse = ellipse_loop(c0, 1.2, 0.8);

    AutomorphismEstimate est;
    est.map = [conn, gen, steps](const Vec& g) {
        return lift_path(conn, gen, g, steps).endpoint();
    };

    const LieGroupModel fiber = conn.bundle.model_at(gen.start());
    est.grid.push_back(fiber.id);
    for (int s = 0; s < 11; ++s) est.grid.push_back(rng.point_in(conn.bundle.fiber_chart));

    est.id_residual = sup_norm(est.map(fiber.id) - fiber.id);
    for (size_t a = 0; a < est.grid.size(); ++a) {
        const Vec& g = est.grid[a];
        const Vec& h = est.grid[(a + 5) % est.grid.size()];
        Vec lhs = est.map(fiber.mul(g, h));
        Vec rhs = fiber.mul(est.map(g), est.map(h));
        est.hom_residual = std::max(est.hom_residual, sup_norm(lhs - rhs));
    }

    est.d_id = central_jacobian(est.map, fiber.id, fiber.dim, 1e-5);
    Eigen::JacobiSVD<Mat> svd(est.d_id);
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    est.condition_number = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();

    for (const PathSpec& probe : {probe_circle, probe_ellipse}) {
        for (const Vec& g : est.grid) {
            Vec alt = lift_path(conn, probe, g, steps).endpoint();
            est.homotopy_discrepancy =
                std::max(est.homotopy_discrepancy, sup_norm(alt - est.map(g)));
        }
    }
    if (!(est.homotopy_discrepancy < 1e-5))
        throw Error("monodromy: probe loops in the generator's class disagree (sup " +
                    std::to_string(est.homotopy_discrepancy) + ")");
    return est;
}

double roundtrip_check(const RepresentationSpec& rep, const AnnulusBase& annulus, int steps,
                       std::uint64_t seed) {
    validate_representation(rep, seed);
    Connection conn = build_from_representation(rep, annulus);
    AutomorphismEstimate est = monodromy(conn, annulus, steps, seed);
    double worst = 0.0;
    for (const Vec& g : est.grid)
        worst = std::max(worst, sup_norm(est.map(g) - flow_time(rep, g, 1.0, steps)));
    return worst;
}

double compare_automorphisms(const AutomorphismEstimate& a, const AutomorphismEstimate& b,
                             const std::optional<AutomorphismWitness>& conj) {
    double worst = 0.0;
    for (const Vec& g : a.grid) {
        Vec rhs = conj ? conj->fwd(b.map(conj->inv(g))) : b.map(g);
        worst = std::max(worst, sup_norm(a.map(g) - rhs));
    }
    return worst;
}

}  // namespace holonomy
