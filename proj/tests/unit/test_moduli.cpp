#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "holonomy/errors.hpp"
#include "holonomy/groups.hpp"
#include "holonomy/moduli.hpp"
#include "holonomy/rng.hpp"
#include "holonomy/transport.hpp"
#include "test_helpers.hpp"

using namespace holonomy;
using holab_test::v1;
using holab_test::v2;

namespace {

RepresentationSpec doubling_rep() {
    // Flow field w(g) = g ln 2: the time-1 flow multiplies by 2.
    RepresentationSpec rep;
    rep.group = additive_group(1);
    rep.flow_field = [](const Vec& g) { return holab_test::v1(std::log(2.0) * g[0]); };
    return rep;
}

RepresentationSpec affine_rep() {
    // w(a, b) = (0, b): the time-1 flow sends (a, b) to (a, e b).
    RepresentationSpec rep;
    rep.group = aff1_group();
    rep.flow_field = [](const Vec& g) { return holab_test::v2(0.0, g[1]); };
    return rep;
}

}  // namespace

TEST_CASE("annulus chart and angle form") {
    AnnulusBase ann;  // defaults r0 = 0.5, r1 = 2.5
    BaseChart chart = ann.chart();
    CHECK(chart.contains(v2(1.0, 0.0)));
    CHECK(chart.contains(v2(-1.5, 1.2)));
    CHECK_FALSE(chart.contains(v2(0.1, 0.1)));   // inside the hole
    CHECK_FALSE(chart.contains(v2(2.6, 0.0)));   // outside the rim
    CHECK(ann.angle_form(v2(1.0, 0.0))(0, 0) == doctest::Approx(0.0));
    CHECK(ann.angle_form(v2(1.0, 0.0))(0, 1) == doctest::Approx(1.0));
    CHECK(ann.angle_form(v2(0.0, 2.0))(0, 0) == doctest::Approx(-0.5));
    // Quadrature winding integral: the unit circle turns once.
    CHECK(ann.circulation() == doctest::Approx(2.0 * M_PI).epsilon(1e-13));
}

TEST_CASE("flow field validation accepts compatible fields and rejects others") {
    CHECK(representation_cocycle_residual(doubling_rep()) < 1e-8);
    CHECK(representation_cocycle_residual(affine_rep()) < 1e-8);
    CHECK_NOTHROW(validate_representation(doubling_rep()));
    CHECK_NOTHROW(validate_representation(affine_rep()));

    RepresentationSpec quad;
    quad.group = aff1_group();
    quad.flow_field = [](const Vec& g) { return holab_test::v2(0.0, g[1] * g[1]); };
    CHECK(representation_cocycle_residual(quad) > 1e-3);
    CHECK_THROWS_AS(validate_representation(quad), PreconditionError);
}

TEST_CASE("time flows integrate the field") {
    // Doubling field: flow_time(g, t) = g 2^t.
    CHECK(flow_time(doubling_rep(), v1(3.0), 1.0, 4096)[0] ==
          doctest::Approx(6.0).epsilon(1e-12));
    CHECK(flow_time(doubling_rep(), v1(3.0), -1.0, 4096)[0] ==
          doctest::Approx(1.5).epsilon(1e-12));
    // Affine field: (a, b) -> (a, e^t b).
    Vec out = flow_time(affine_rep(), v2(2.0, 0.7), 1.0, 4096);
    CHECK(out[0] == doctest::Approx(2.0));
    CHECK(out[1] == doctest::Approx(0.7 * 2.718281828459045).epsilon(1e-12));
}

TEST_CASE("induced annulus rule is flat and winds the representation") {
    AnnulusBase ann;
    RepresentationSpec rep = doubling_rep();
    Connection c = build_from_representation(rep, ann);
    // Frozen coefficient: at x = (1, 0), g = 3 the row is 3 ln 2 / (2 pi)
    // times (0, 1).
    Mat m = c.gamma(v2(1.0, 0.0), v1(3.0));
    CHECK(m(0, 0) == doctest::Approx(0.0));
    CHECK(m(0, 1) == doctest::Approx(0.3309534002289774).epsilon(1e-12));

    AutomorphismEstimate est = monodromy(c, ann, 10000);
    for (const Vec& g : est.grid) {
        CHECK(sup_norm(est.map(g) - 2.0 * g) < 1e-9);
    }
    CHECK(est.id_residual < 1e-12);
    CHECK(est.hom_residual < 1e-9);
    CHECK(est.homotopy_discrepancy < 1e-5);
    CHECK(est.d_id(0, 0) == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(est.condition_number == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("affine representation: monodromy scales the translation part") {
    AnnulusBase ann;
    RepresentationSpec rep = affine_rep();
    Connection c = build_from_representation(rep, ann);
    AutomorphismEstimate est = monodromy(c, ann, 10000);
    for (const Vec& g : est.grid) {
        Vec want = v2(g[0], 2.718281828459045 * g[1]);
        CHECK(sup_norm(est.map(g) - want) < 1e-5);
    }
    CHECK(est.hom_residual < 1e-8);
    // d_id is diag(1, e), so the condition number is e.
    CHECK(est.condition_number == doctest::Approx(2.718281828459045).epsilon(1e-4));
    CHECK(roundtrip_check(rep, ann, 10000) < 1e-5);
    CHECK(roundtrip_check(doubling_rep(), ann, 10000) < 1e-9);
}

TEST_CASE("contractible loops act trivially under a flat rule") {
    AnnulusBase ann;
    Connection c = build_from_representation(doubling_rep(), ann);
    // A small circle around (1.5, 0) stays inside the annulus and encloses
    // no part of the hole.
    HolonomyMap h = holonomy::holonomy(c, circle_loop(v2(1.5, 0.0), 0.3), 4000);
    for (double g0 : {1.0, -0.7, 2.3}) {
        CHECK(h.transport(v1(g0))[0] == doctest::Approx(g0).epsilon(1e-6));
    }
}

TEST_CASE("curvature gate rejects non-flat rules") {
    AnnulusBase ann;
    Connection c;
    c.bundle = trivial_bundle(ann.chart(), additive_group(1));
    c.gamma = [](const Vec& x, const Vec&) {
        Mat m(1, 2);
        m << 0.0, x[0];
        return m;
    };
    CHECK_THROWS_AS(monodromy(c, ann, 2000), NotFlatError);
}

TEST_CASE("monodromy requires the probe loops to fit in the annulus") {
    RepresentationSpec rep = doubling_rep();
    AnnulusBase tight{1.1, 2.5};  // unit circle falls into the hole
    Connection c = build_from_representation(rep, AnnulusBase{0.5, 2.5});
    c.bundle = trivial_bundle(tight.chart(), additive_group(1));
    CHECK_THROWS_AS(monodromy(c, tight, 2000), GeometryError);
}

TEST_CASE("automorphism comparison with and without a change of marking") {
    AnnulusBase ann;
    AutomorphismEstimate a = monodromy(build_from_representation(doubling_rep(), ann), ann, 8000);
    AutomorphismEstimate b = monodromy(build_from_representation(doubling_rep(), ann), ann, 8000);
    CHECK(compare_automorphisms(a, b) < 1e-12);

    RepresentationSpec tripling;
    tripling.group = additive_group(1);
    tripling.flow_field = [](const Vec& g) { return holab_test::v1(std::log(3.0) * g[0]); };
    AutomorphismEstimate t = monodromy(build_from_representation(tripling, ann), ann, 8000);
    CHECK(compare_automorphisms(a, t) > 0.1);

    // Conjugating by the scaling map g -> 5 g fixes the doubling map, so the
    // witness comparison still reports a match.
    AutomorphismWitness scale5;
    scale5.fwd = [](const Vec& g) { return Vec(5.0 * g); };
    scale5.inv = [](const Vec& g) { return Vec(0.2 * g); };
    CHECK(compare_automorphisms(a, b, scale5) < 1e-9);
}
