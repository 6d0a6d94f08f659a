#pragma once

#include <cstdint>
#include <functional>

#include "holonomy/bundle.hpp"
#include "holonomy/path.hpp"
#include "holonomy/types.hpp"

namespace holonomy {

/// Connection 1-form of a trivialized principal bundle base x G: `coeff(x)`
/// is the (dim G) x m matrix of an algebra-valued 1-form A, so A(x) v is a
/// tangent at the identity.
struct PrincipalConnection {
    BaseChart base;
    LieGroupModel group;
    std::function<Mat(const Vec& x)> coeff;
};

/// The induced Ehresmann connection on the total space:
///   gamma_P(x, g) v = -dR_g( A(x) v ).
/// (Sign convention: the horizontal lift compensates the right-translated
/// form value.)  Transport commutes with right translation exactly.
Connection principal_to_connection(const PrincipalConnection& pc);

/// Connection induced on the gauge group bundle.  Fibers are identified with
/// G through the identity frame; under that identification
///   gamma_Gau(x, g) v = ( dL_g - dR_g )( A(x) v ),
/// which vanishes identically (at formula level) for abelian G.
Connection induce_gauge_connection(const PrincipalConnection& pc);

/// Sampled defect of right-equivariance of the principal transport:
/// sup over seeded (g, k) of | transport(g*k) - transport(g)*k |.
double right_equivariance_residual(const PrincipalConnection& pc, const PathSpec& loop,
                                   int steps, int samples = 10, std::uint64_t seed = 42);

/// Sampled sup of | hol_gauge(loop)(g) - k g k^{-1} | where k is the
/// principal holonomy of the loop at the identity frame.
double compare_holonomies(const PrincipalConnection& pc, const PathSpec& loop, int steps,
                          int samples = 20, std::uint64_t seed = 42);

/// | curvature_gauge(x, i, j, g) - pushforward of curvature_P(x, i, j, id) |
/// where the pushforward of an identity-frame vertical vector w to the gauge
/// fiber at g is dR_g(w) - dL_g(w).
double compare_curvatures(const PrincipalConnection& pc, const Vec& x, int i, int j,
                          const Vec& g);

}  // namespace holonomy
