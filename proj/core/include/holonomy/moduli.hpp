#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "holonomy/bundle.hpp"
#include "holonomy/types.hpp"

namespace holonomy {

/// Planar annulus r0 < |x| < r1 in Cartesian coordinates.  Its fundamental
/// group is generated by the counterclockwise unit circle (which must fit:
/// r0 < 1 < r1 for the standard probe loops).
struct AnnulusBase {
    double r0 = 0.5;
    double r1 = 2.5;

    BaseChart chart() const;

    /// Coefficients of the closed angular 1-form (-y dx + x dy) / (x^2+y^2)
    /// as a 1 x 2 row.
    Eigen::RowVector2d angle_form(const Vec& x) const;

    /// Winding integral of the angle form over the unit circle, computed by
    /// composite Gauss-Legendre quadrature (independently of any transport).
    double circulation(int panels = 256) const;
};

/// Finite presentation of a fiber automorphism: a sampled chart map together
/// with its differential at the identity and diagnostic residuals.
struct AutomorphismEstimate {
    std::function<Vec(const Vec&)> map;
    std::vector<Vec> grid;               ///< seeded fiber sample points
    Mat d_id;                            ///< finite-difference differential at id
    double id_residual = 0.0;            ///< | map(id) - id |
    double hom_residual = 0.0;           ///< sup | map(g h) - map(g) map(h) | on the grid
    double condition_number = 0.0;       ///< of d_id
    double homotopy_discrepancy = 0.0;   ///< filled by monodromy()
};

/// Holonomy representation datum: a complete vector field w on the group
/// whose time-t flows are automorphisms (equivalently, whose right logarithmic
/// derivative satisfies the twisted additivity law).
struct RepresentationSpec {
    LieGroupModel group;
    std::function<Vec(const Vec& g)> flow_field;
};

/// Time-T flow of the representation field, fixed-step RK4.
Vec flow_time(const RepresentationSpec& rep, const Vec& g, double T, int steps);

/// sup over seeded (g, h) of the twisted additivity defect of the right
/// logarithmic derivative of the flow field.
double representation_cocycle_residual(const RepresentationSpec& rep, int samples = 100,
                                       std::uint64_t seed = 42);

/// Throws PreconditionError when the field's log-derivative fails the
/// twisted additivity law (tolerance 1e-6 on seeded samples).
void validate_representation(const RepresentationSpec& rep, std::uint64_t seed = 42,
                             double tol = 1e-6);

/// Flat connection on annulus x G whose transport along a loop winding once
/// counterclockwise is the time-1 flow of the representation field:
///   gamma(x, g) = w(g) * angle_form(x) / (2 pi).
Connection build_from_representation(const RepresentationSpec& rep, const AnnulusBase& annulus);

/// Monodromy of a flat group connection over the annulus: the holonomy of
/// the counterclockwise unit circle, packaged as an AutomorphismEstimate.
///
/// Gate: seeded curvature samples must stay below 1e-6 (NotFlatError).
/// The map is cross-checked against the radius-1.5 circle and the (1.2, 0.8)
/// ellipse; a sup discrepancy >= 1e-5 raises Error, and the achieved value
/// is stored in `homotopy_discrepancy`.
AutomorphismEstimate monodromy(const Connection& conn, const AnnulusBase& annulus, int steps,
                               std::uint64_t seed = 42);

/// sup over the sampled grid of | monodromy map - time-1 flow |.
double roundtrip_check(const RepresentationSpec& rep, const AnnulusBase& annulus, int steps,
                       std::uint64_t seed = 42);

/// Invertible chart map used as a change-of-marking witness.
struct AutomorphismWitness {
    std::function<Vec(const Vec&)> fwd;
    std::function<Vec(const Vec&)> inv;
};

/// sup-grid distance between a and conj . b . conj^{-1} (or plain a vs b
/// when no witness is given).  Evaluated over a's sample grid.
double compare_automorphisms(const AutomorphismEstimate& a, const AutomorphismEstimate& b,
                             const std::optional<AutomorphismWitness>& conj = std::nullopt);

}  // namespace holonomy
