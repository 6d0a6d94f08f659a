#pragma once

#include <functional>
#include <utility>

#include "holonomy/box.hpp"
#include "holonomy/groups.hpp"
#include "holonomy/rng.hpp"
#include "holonomy/types.hpp"

namespace holonomy {

/// Base manifold chart: a box, optionally cut down by an extra membership
/// predicate (used for the annulus).
struct BaseChart {
    Box box;
    std::function<bool(const Vec&)> member;  ///< null -> plain box membership

    int dim() const { return box.dim(); }
    bool contains(const Vec& x, double margin = 1e-9) const {
        if (!box.contains(x, margin)) return false;
        return !member || member(x);
    }
};

/// Seeded interior sample of a chart; rejection-samples the membership
/// predicate when one is present.
Vec sample_chart_point(SampleRng& rng, const BaseChart& chart);

/// A bundle of groups over a base chart, trivialized as base x fiber-chart.
/// When `mul` is absent the record describes a plain fiber bundle with no
/// group structure (e.g. the total space of a principal bundle).
///
/// The group law may vary with the base point; `fiber_model`, when present,
/// supplies closed-form per-fiber data (adjoint, product differentials).
struct GroupBundle {
    BaseChart base;
    int fiber_dim = 0;
    Box fiber_chart;

    std::function<Vec(const Vec& x, const Vec& g, const Vec& h)> mul;
    std::function<Vec(const Vec& x, const Vec& g)> inv;
    std::function<Vec(const Vec& x)> id;
    std::function<LieGroupModel(const Vec& x)> fiber_model;

    bool has_group_law() const { return static_cast<bool>(mul); }

    /// Group model of the fiber over x (closed-form when available, else a
    /// wrapper around mul/inv/id with finite-difference fallbacks).
    LieGroupModel model_at(const Vec& x) const;
};

/// base x G with the base-independent law of G.
GroupBundle trivial_bundle(BaseChart base, const LieGroupModel& fiber);

/// Fiber bundle with no group law.
GroupBundle plain_bundle(BaseChart base, int fiber_dim, Box fiber_chart);

/// Family of SemidirectRplusR2 groups whose parameters are the base point:
/// over x = (lambda, mu) the fiber carries semidirect_group(lambda, mu).
/// The law genuinely varies with x, so only connections that compensate the
/// variation can pass the group-connection gate.
GroupBundle semidirect_family_bundle(BaseChart base);

/// Ehresmann connection in Christoffel form: gamma(x, g) is the n x m matrix
/// taking a base tangent v to the fiber component of the horizontal lift.
struct Connection {
    GroupBundle bundle;
    std::function<Mat(const Vec& x, const Vec& g)> gamma;

    int base_dim() const { return bundle.base.dim(); }
    int fiber_dim() const { return bundle.fiber_dim; }
};

/// Connection with gamma == 0 (horizontal = chart-horizontal).
Connection trivial_connection(GroupBundle bundle);

/// Local section of the bundle: x -> g(x).  `deriv` is an optional closed
/// form; central finite differences (step 1e-5) are used when it is absent.
struct SectionSpec {
    Box domain;
    std::function<Vec(const Vec&)> eval;
    std::function<Mat(const Vec&)> deriv;
};

/// Full derivative matrix of the section at x (closed form or central FD).
Mat section_derivative(const SectionSpec& s, const Vec& x);

/// Vertical component of a total-space tangent (v_base, v_fiber) at (x, g):
/// v_fiber - gamma(x, g) v_base.
Vec vertical_project(const Connection& conn, const Vec& x, const Vec& g, const Vec& v_base,
                     const Vec& v_fiber);

/// Covariant derivative of a section along v: vertical part of its jet.
Vec covariant_derivative(const Connection& conn, const SectionSpec& s, const Vec& x,
                         const Vec& v);

/// Horizontal lift of the base vector field `field` at the point (x, g):
/// returns (v, gamma(x, g) v) with v = field(x).
std::pair<Vec, Vec> lift_vector(const Connection& conn,
                                const std::function<Vec(const Vec&)>& field, const Vec& x,
                                const Vec& g);

}  // namespace holonomy
