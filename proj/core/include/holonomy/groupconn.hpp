#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "holonomy/bundle.hpp"
#include "holonomy/path.hpp"
#include "holonomy/types.hpp"

namespace holonomy {

/// Defect of multiplicativity of the horizontal distribution at (x, g, h)
/// along the base direction v:
///   gamma(x, g*h) v  -  [ d_x mul . v + (D_g mul) gamma(x, g) v
///                                     + (D_h mul) gamma(x, h) v ].
/// Zero for all inputs exactly when the product map sends horizontal pairs
/// to horizontal vectors.
Vec group_connection_residual(const Connection& conn, const Vec& x, const Vec& g, const Vec& h,
                              const Vec& v);

/// Defect of the inversion map sending horizontal to horizontal:
///   gamma(x, g^{-1}) v - [ d_x inv . v + (D_g inv) gamma(x, g) v ].
Vec inversion_residual(const Connection& conn, const Vec& x, const Vec& g, const Vec& v);

struct ResidualSample {
    Vec x, g, h, v;
    double residual = 0.0;
    const char* kind = "mul";  ///< "mul" or "inv"
};

struct GroupConnectionReport {
    bool pass = false;
    double max_residual = 0.0;
    double tol = 1e-6;
    int samples = 0;
    ResidualSample worst;
    std::vector<ResidualSample> rows;
};

/// Acceptance gate: sup of the multiplication and inversion residuals over a
/// seeded grid of (x, g, h, v) tuples.  Default grid size 200, tol 1e-6.
GroupConnectionReport check_group_connection(const Connection& conn, int samples = 200,
                                             std::uint64_t seed = 42, double tol = 1e-6);

/// Lie-algebra-valued 1-form on the base, fiberwise a crossed-homomorphism
/// datum: theta(x, g) maps base tangents to fiber tangents at the identity.
struct CocycleForm {
    GroupBundle bundle;
    std::function<Mat(const Vec& x, const Vec& g)> theta;
};

/// Defect of the twisted additivity law along v:
///   theta(x, g*h) v - theta(x, g) v - Adj_g( theta(x, h) v ).
Vec cocycle_identity_residual(const CocycleForm& form, const Vec& x, const Vec& g, const Vec& h,
                              const Vec& v);

struct CocycleReport {
    bool pass = false;
    double max_residual = 0.0;
    double tol = 1e-6;
    int samples = 0;
};

CocycleReport check_cocycle(const CocycleForm& form, int samples = 200, std::uint64_t seed = 42,
                            double tol = 1e-6);

/// Pointwise difference of two group connections on the same bundle,
/// right-translated to the identity:
///   theta(x, g) v = dR_{g^{-1}} ( gamma1(x, g) v - gamma2(x, g) v ).
/// Both inputs must pass the group-connection gate (PreconditionError).
CocycleForm connection_difference(const Connection& a, const Connection& b, int gate_samples = 200,
                                  std::uint64_t gate_seed = 42, double gate_tol = 1e-6);

/// Shifts a group connection by a cocycle form:
///   gamma'(x, g) v = gamma(x, g) v + dR_g( theta(x, g) v ).
/// Inverse of connection_difference in the second argument.
Connection add_cocycle(const Connection& conn, const CocycleForm& form);

/// | transport(g*h) - transport(g)*transport(h) |_sup for the holonomy of a
/// loop; zero for group connections.  The products use the fiber law at the
/// loop's base point.
double holonomy_morphism_residual(const Connection& conn, const PathSpec& loop, const Vec& g,
                                  const Vec& h, int steps);

/// Local trivialization of a group connection over a sub-box (cube): each
/// fiber is carried to the fiber over the cube's center anchor point by
/// transport along an axis-ordered polyline (coordinate 1 first).
struct TrivializationMap {
    Box cube;
    Vec anchor;
    int steps = 0;
    /// Fiber component of psi: transports g from over x to over the anchor.
    std::function<Vec(const Vec& x, const Vec& g)> to_anchor;
    /// Fiber component of psi^{-1}: transports back from the anchor to x.
    std::function<Vec(const Vec& x, const Vec& g_anchor)> from_anchor;

    /// psi itself: total-space point (x, g) -> (anchor fiber point, x).
    std::pair<Vec, Vec> psi(const Vec& x, const Vec& g) const { return {to_anchor(x, g), x}; }
};

/// The cube must lie inside the base chart (GeometryError otherwise).
TrivializationMap flow_trivialization(const Connection& conn, const Box& cube, int steps);

}  // namespace holonomy
