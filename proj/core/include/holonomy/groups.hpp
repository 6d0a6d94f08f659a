#pragma once

#include <functional>
#include <string>
#include <vector>

#include "holonomy/box.hpp"
#include "holonomy/types.hpp"

namespace holonomy {

/// A Lie group presented in a single global chart.  Elements are coordinate
/// vectors living in `chart`; tangent vectors share those coordinates.
///
/// `bracket`, `adj` and `exp` are optional closed forms; the free functions
/// below fall back to finite differences / integration when they are absent.
/// `dmul_left`/`dmul_right` are optional closed-form differentials of the
/// product; when present, translation helpers are exact at formula level.
struct LieGroupModel {
    int dim = 0;
    Box chart;
    std::string name;

    std::function<Vec(const Vec&, const Vec&)> mul;  ///< (g, h) -> g*h
    std::function<Vec(const Vec&)> inv;              ///< g -> g^{-1}
    Vec id;

    std::function<Vec(const Vec&, const Vec&)> bracket;  ///< (A, B) -> [A, B]
    std::function<Vec(const Vec&, const Vec&)> adj;      ///< (g, A) -> Adj_g A
    std::function<Vec(const Vec&, double)> exp;          ///< (A, t) -> exp(tA)

    /// d/dh mul(g, h) at (g, h), applied to a tangent w at h.
    std::function<Vec(const Vec&, const Vec&, const Vec&)> dmul_left;
    /// d/dg mul(g, h) at (g, h), applied to a tangent w at g.
    std::function<Vec(const Vec&, const Vec&, const Vec&)> dmul_right;
};

/// Closed form if available, otherwise RK4 on gdot = dL_g(A) with 256 steps
/// per unit of |t|.
Vec group_exp(const LieGroupModel& G, const Vec& A, double t = 1.0);

/// Central-difference d/dt|_0 of the conjugation curve mul(mul(g, exp(tA)), inv(g)).
/// Throws BoundaryProximityError if an intermediate point leaves the chart.
Vec numeric_adj(const LieGroupModel& G, const Vec& g, const Vec& A);

/// Central-difference d/dt|_0 of adj(exp(tA), B); uses the closed-form adj
/// when present (step 1e-5), otherwise numeric_adj with a wider step (1e-4)
/// to keep the nested-difference noise small.
Vec numeric_bracket(const LieGroupModel& G, const Vec& A, const Vec& B);

/// Closed form if available, else the numeric fallback.
Vec adjoint(const LieGroupModel& G, const Vec& g, const Vec& A);
Vec lie_bracket(const LieGroupModel& G, const Vec& A, const Vec& B);

/// Differentials of the product (closed form when the model carries one).
Vec dmul_left(const LieGroupModel& G, const Vec& g, const Vec& h, const Vec& w);
Vec dmul_right(const LieGroupModel& G, const Vec& g, const Vec& h, const Vec& w);

/// dL_g at the identity: tangent at id -> tangent at g.
Vec left_translate_from_id(const LieGroupModel& G, const Vec& g, const Vec& w);
/// dR_g at the identity: tangent at id -> tangent at g.
Vec right_translate_from_id(const LieGroupModel& G, const Vec& g, const Vec& w);
/// dR_{g^{-1}} at g: tangent at g -> tangent at id.
Vec right_translate_to_id(const LieGroupModel& G, const Vec& g, const Vec& w);

// ---- catalog -------------------------------------------------------------

/// (R^n, +).
LieGroupModel additive_group(int n);

/// Affine maps x -> a x + b of the line, coordinates (a, b) with a > 0.
/// mul((a,b),(a',b')) = (a a', b + a b').
LieGroupModel aff1_group();

/// Solvable semidirect product R+ x R^2, coordinates (a, b, c) with a > 0.
/// mul((a,b,c),(a',b',c')) = (a a', b + a^lambda b', c + a^mu c').
LieGroupModel semidirect_group(double lambda, double mu);

/// Named catalog entry, as it appears in scenario files.
struct GroupCatalogEntry {
    std::string name;            ///< "AdditiveR" | "Aff1" | "SemidirectRplusR2"
    std::vector<double> params;  ///< AdditiveR: {n}; SemidirectRplusR2: {lambda, mu}
};

LieGroupModel make_group(const GroupCatalogEntry& entry);

}  // namespace holonomy
