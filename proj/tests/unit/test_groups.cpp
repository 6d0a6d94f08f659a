#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "holonomy/errors.hpp"
#include "holonomy/groups.hpp"
#include "holonomy/rng.hpp"
#include "test_helpers.hpp"

using namespace holonomy;
using holab_test::diff4;
using holab_test::v1;
using holab_test::v2;
using holab_test::v3;

namespace {

// Independent re-statement of the affine law, used as the oracle against the
// catalog implementation.
Vec oracle_aff_mul(const Vec& g, const Vec& h) { return v2(g[0] * h[0], g[1] + g[0] * h[1]); }
Vec oracle_aff_inv(const Vec& g) { return v2(1.0 / g[0], -g[1] / g[0]); }
Vec oracle_aff_exp(const Vec& A, double t) {
    if (A[0] == 0.0) return v2(1.0, t * A[1]);
    return v2(std::exp(t * A[0]), A[1] * std::expm1(t * A[0]) / A[0]);
}

Vec oracle_semi_mul(double lam, double mu, const Vec& g, const Vec& h) {
    return v3(g[0] * h[0], g[1] + std::pow(g[0], lam) * h[1], g[2] + std::pow(g[0], mu) * h[2]);
}

}  // namespace

TEST_CASE("affine law matches the independent oracle on seeded samples") {
    LieGroupModel G = aff1_group();
    SampleRng rng(7);
    for (int k = 0; k < 100; ++k) {
        Vec g = v2(rng.uniform(0.2, 3.0), rng.uniform(-2.0, 2.0));
        Vec h = v2(rng.uniform(0.2, 3.0), rng.uniform(-2.0, 2.0));
        CHECK((G.mul(g, h) - oracle_aff_mul(g, h)).norm() == doctest::Approx(0.0).epsilon(1e-14));
        CHECK((G.inv(g) - oracle_aff_inv(g)).norm() == doctest::Approx(0.0).epsilon(1e-14));
    }
}

TEST_CASE("group axioms hold on every catalog model") {
    std::vector<LieGroupModel> models = {additive_group(1), additive_group(3), aff1_group(),
                                         semidirect_group(0.5, -1.0), semidirect_group(2.0, 2.0)};
    for (const auto& G : models) {
        CAPTURE(G.name);
        SampleRng rng(11);
        for (int k = 0; k < 100; ++k) {
            Vec g = rng.point_in(G.chart);
            Vec h = rng.point_in(G.chart);
            Vec w = rng.point_in(G.chart);
            CHECK(sup_norm(G.mul(g, G.id) - g) < 1e-12);
            CHECK(sup_norm(G.mul(G.id, g) - g) < 1e-12);
            CHECK(sup_norm(G.mul(g, G.inv(g)) - G.id) < 1e-12);
            CHECK(sup_norm(G.mul(G.inv(g), g) - G.id) < 1e-12);
            CHECK(sup_norm(G.mul(G.mul(g, h), w) - G.mul(g, G.mul(h, w))) < 1e-8);
            CHECK(G.chart.contains(G.mul(g, h)));
            CHECK(G.chart.contains(G.inv(g)));
        }
    }
}

TEST_CASE("affine adjoint: frozen values and agreement with the difference oracle") {
    LieGroupModel G = aff1_group();
    Vec g = v2(2.0, 5.0);

    // Frozen: Adj_(2,5)(1,0) = (1,-5) and Adj_(2,5)(0,1) = (0,2).
    CHECK(sup_norm(adjoint(G, g, v2(1.0, 0.0)) - v2(1.0, -5.0)) < 1e-12);
    CHECK(sup_norm(adjoint(G, g, v2(0.0, 1.0)) - v2(0.0, 2.0)) < 1e-12);

    // Oracle: d/dt|_0 of g exp(tA) g^{-1} by 4th-order differences over the
    // independent law.
    SampleRng rng(3);
    for (int k = 0; k < 25; ++k) {
        Vec gg = v2(rng.uniform(0.3, 2.5), rng.uniform(-1.5, 1.5));
        Vec A = rng.tangent(2, 1.0);
        Vec want = diff4(
            [&](double t) {
                return oracle_aff_mul(oracle_aff_mul(gg, oracle_aff_exp(A, t)),
                                      oracle_aff_inv(gg));
            },
            1e-3);
        CHECK(sup_norm(adjoint(G, gg, A) - want) < 1e-8);
        CHECK(sup_norm(numeric_adj(G, gg, A) - want) < 1e-6);
    }
}

TEST_CASE("semidirect adjoint closed form agrees with numeric_adj") {
    LieGroupModel G = semidirect_group(1.5, -0.5);
    SampleRng rng(5);
    for (int k = 0; k < 25; ++k) {
        Vec g = rng.point_in(G.chart);
        Vec A = rng.tangent(3, 1.0);
        CHECK(sup_norm(adjoint(G, g, A) - numeric_adj(G, g, A)) < 1e-6);
    }
}

TEST_CASE("brackets: frozen value, antisymmetry, Jacobi identity") {
    LieGroupModel G = aff1_group();
    // Frozen: [(1,0), (0,1)] = (0,1) for the affine algebra.
    CHECK(sup_norm(lie_bracket(G, v2(1, 0), v2(0, 1)) - v2(0, 1)) < 1e-12);

    for (const auto& M : {aff1_group(), semidirect_group(0.7, 2.0)}) {
        SampleRng rng(13);
        for (int k = 0; k < 30; ++k) {
            Vec A = rng.tangent(M.dim, 1.0);
            Vec B = rng.tangent(M.dim, 1.0);
            Vec C = rng.tangent(M.dim, 1.0);
            CHECK(sup_norm(lie_bracket(M, A, B) + lie_bracket(M, B, A)) < 1e-12);
            Vec jac = lie_bracket(M, A, lie_bracket(M, B, C)) +
                      lie_bracket(M, B, lie_bracket(M, C, A)) +
                      lie_bracket(M, C, lie_bracket(M, A, B));
            CHECK(sup_norm(jac) < 1e-10);
            // numeric fallback stays close to the closed form
            CHECK(sup_norm(numeric_bracket(M, A, B) - lie_bracket(M, A, B)) < 1e-5);
        }
    }
}

TEST_CASE("exponential: one-parameter property and RK4 fallback") {
    for (const auto& G : {aff1_group(), semidirect_group(1.2, -0.8)}) {
        SampleRng rng(17);
        for (int k = 0; k < 20; ++k) {
            Vec A = rng.tangent(G.dim, 1.0);
            double s = rng.uniform(-1.0, 1.0), t = rng.uniform(-1.0, 1.0);
            Vec lhs = group_exp(G, A, s + t);
            Vec rhs = G.mul(group_exp(G, A, s), group_exp(G, A, t));
            CHECK(sup_norm(lhs - rhs) < 1e-10);
        }
        // Strip the closed form; the integrator must reproduce it.
        LieGroupModel N = G;
        N.exp = nullptr;
        SampleRng rng2(19);
        for (int k = 0; k < 10; ++k) {
            Vec A = rng2.tangent(G.dim, 1.0);
            double t = rng2.uniform(-1.5, 1.5);
            CHECK(sup_norm(group_exp(N, A, t) - group_exp(G, A, t)) < 1e-8);
        }
    }
}

TEST_CASE("product differentials match finite differences of the law") {
    for (const auto& G : {aff1_group(), semidirect_group(0.5, 1.5)}) {
        SampleRng rng(23);
        for (int k = 0; k < 20; ++k) {
            Vec g = rng.point_in(G.chart);
            Vec h = rng.point_in(G.chart);
            Vec w = rng.tangent(G.dim, 1.0);
            Vec dl = diff4([&](double t) { return G.mul(g, h + t * w); }, 1e-3);
            Vec dr = diff4([&](double t) { return G.mul(g + t * w, h); }, 1e-3);
            CHECK(sup_norm(dmul_left(G, g, h, w) - dl) < 1e-8);
            CHECK(sup_norm(dmul_right(G, g, h, w) - dr) < 1e-8);
        }
    }
}

TEST_CASE("translation helpers invert each other") {
    LieGroupModel G = semidirect_group(2.0, 0.3);
    SampleRng rng(29);
    for (int k = 0; k < 20; ++k) {
        Vec g = rng.point_in(G.chart);
        Vec w = rng.tangent(G.dim, 1.0);
        Vec up = right_translate_from_id(G, g, w);
        CHECK(sup_norm(right_translate_to_id(G, g, up) - w) < 1e-9);
    }
}

TEST_CASE("numeric_adj raises BoundaryProximityError near the chart edge") {
    // Truncate the affine chart so g sits close to the a = 2 wall.
    LieGroupModel G = aff1_group();
    G.chart = Box({Interval{0.0, 2.0}, Interval{}});
    G.adj = nullptr;
    Vec g = v2(1.9999999, 0.0);
    CHECK_THROWS_AS(numeric_adj(G, g, v2(1.0, 0.0)), BoundaryProximityError);
}

TEST_CASE("catalog dispatch by name") {
    CHECK(make_group({"AdditiveR", {4}}).dim == 4);
    CHECK(make_group({"Aff1", {}}).dim == 2);
    LieGroupModel S = make_group({"SemidirectRplusR2", {0.5, 0.25}});
    CHECK(S.dim == 3);
    Vec g = v3(4.0, 1.0, 1.0);
    Vec h = v3(1.0, 1.0, 1.0);
    CHECK(sup_norm(S.mul(g, h) - oracle_semi_mul(0.5, 0.25, g, h)) < 1e-12);
    // 4^{0.5} = 2, 4^{0.25} = sqrt(2)
    CHECK(S.mul(g, h)[1] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(S.mul(g, h)[2] == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(make_group({"NoSuchGroup", {}}), Error);
}
