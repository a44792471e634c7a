#pragma once

// Region descriptions for matrix and inclusion phases, their exact moments
// (volume, static moment, Euler tensor of inertia) and the geometric
// preconditions under which the dilute homogenization result holds.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "sgehom/tensor.hpp"

namespace sgehom {

struct Ball {
    double radius = 0.0;
    Eigen::VectorXd center;
};

/// Ellipsoid (ellipse in 2D). Column k of `rotation` is the direction of semi-axis k.
struct Ellipsoid {
    Eigen::VectorXd semi_axes;
    Eigen::VectorXd center;
    Eigen::MatrixXd rotation;
};

/// Simple counterclockwise polygon (2D only).
struct Polygon {
    std::vector<Eigen::Vector2d> vertices;
};

/// Closed polyhedron (3D only). Faces list vertex indices counterclockwise
/// when seen from outside.
struct Polyhedron {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::vector<int>> faces;
};

struct SignedPart;

/// Signed union: moments add with the given signs. A part with sign -1 must
/// lie inside the union of the +1 parts.
struct Composite {
    std::vector<SignedPart> parts;
};

struct ShapeSpec {
    Dim dim;
    std::variant<Ball, Ellipsoid, Polygon, Polyhedron, Composite> kind;

    /// True for polygons, polyhedra, and composites containing them.
    bool is_faceted() const;
};

struct SignedPart {
    ShapeSpec shape;
    int sign = 1;
};

ShapeSpec make_ball(Dim d, double radius, Eigen::VectorXd center);
ShapeSpec make_ball(Dim d, double radius);
ShapeSpec make_ellipsoid(Dim d, Eigen::VectorXd semi_axes, Eigen::VectorXd center, Eigen::MatrixXd rotation);
ShapeSpec make_polygon(std::vector<Eigen::Vector2d> vertices);
ShapeSpec make_polyhedron(std::vector<Eigen::Vector3d> vertices, std::vector<std::vector<int>> faces);
ShapeSpec make_composite(Dim d, std::vector<SignedPart> parts);
/// Axis-aligned box centred at `center` (square in 2D, built as a polygon or polyhedron).
ShapeSpec make_box(Dim d, const Eigen::VectorXd& half_widths, const Eigen::VectorXd& center);

/// Checks the invariants of a shape (positive sizes, orthonormal rotation,
/// simple counterclockwise polygons, closed outward polyhedra, composite
/// containment). Throws GeometryError.
void validate(const ShapeSpec& shape);

bool contains(const ShapeSpec& shape, const Eigen::VectorXd& x);

struct BoundingBox {
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
};
BoundingBox bounding_box(const ShapeSpec& shape);

/// Uniform scaling about the origin.
ShapeSpec scaled(const ShapeSpec& shape, double s);
ShapeSpec translated(const ShapeSpec& shape, const Eigen::VectorXd& d);

/// True when every sampled point of `inner` lies in `outer`.
bool contained_in(const ShapeSpec& inner, const ShapeSpec& outer, int samples = 4000);

struct MassProperties {
    explicit MassProperties(Dim d) : static_moment(Eigen::VectorXd::Zero(d.n())), euler(d) {}

    double volume = 0.0;
    Eigen::VectorXd static_moment;  ///< S_i = integral of x_i
    Tensor2Sym euler;               ///< E_ij = integral of x_i x_j
    std::optional<double> rho2;     ///< set when `euler` is spherical within tolerance

    /// tr(E) / (n volume); equals rho2 whenever rho2 is set.
    double mean_rho2() const;
    /// |E - tr(E)/n I| / |E|
    double deviatoric_ratio() const;
};

/// Exact moments: closed forms for balls and ellipsoids, divergence-theorem
/// (triangle/tetrahedron fan) formulas for polygons and polyhedra, signed sums
/// for composites. Throws GeometryError for zero or negative volume.
MassProperties mass_properties(const ShapeSpec& shape, double spherical_tol = 1e-9);

inline constexpr double kGpTolAnalytic = 1e-9;
inline constexpr double kGpTolFaceted = 1e-6;
double default_gp_tol(const ShapeSpec& rve, const ShapeSpec& inclusion);

struct GPReport {
    bool gp1_ok = false;
    double gp1_defect = 0.0;  ///< max |S| / (volume rho) over matrix and inclusion
    bool gp2_ok = false;
    double gp2_defect = 0.0;  ///< max deviatoric ratio of E over matrix and inclusion
    double rho_matrix = 0.0;
    double rho_inclusion = 0.0;
    double rho_rve = 0.0;
    double f = 0.0;
    double volume_rve = 0.0;
    double volume_inclusion = 0.0;
    /// |rho^2 - (1-f) rho1^2 - f rho2^2| / rho^2
    double rho_identity_residual = 0.0;
    /// rho_inclusion / rho_rve; must vanish along a dilution family.
    double gp3_ratio = 0.0;
    double tol = 0.0;
};

/// The matrix phase is composite(rve, +1; inclusion, -1). Throws GeometryError
/// when the inclusion is not contained in the RVE.
GPReport check_gp(const ShapeSpec& rve, const ShapeSpec& inclusion, double tol);

/// How an inclusion is modified to reach a smaller volume fraction.
enum class InclusionFamily {
    Scale,  ///< shrink uniformly about the origin; inertia radius vanishes with f
    Hollow, ///< keep the outer boundary, remove a concentric scaled core; it does not
};

/// Inclusion of the given family reaching volume fraction `f` in `rve`.
ShapeSpec inclusion_for_fraction(const ShapeSpec& rve, const ShapeSpec& inclusion, double f,
                                 InclusionFamily family);

inline constexpr double kGp3MinSlope = 0.1;

struct Gp3Point {
    double f = 0.0;
    double rho_inclusion = 0.0;
    double rho_rve = 0.0;
    double ratio = 0.0;
};

struct Gp3Sweep {
    std::vector<Gp3Point> points;
    /// Least-squares slope of log(ratio) against log(f).
    double slope = 0.0;
    /// slope >= kGp3MinSlope: the inclusion inertia radius vanishes with f.
    bool decays = false;
    std::vector<std::string> skipped;
};

Gp3Sweep gp3_sweep(const ShapeSpec& rve, const ShapeSpec& inclusion, std::span<const double> f_ladder,
                   InclusionFamily family);

/// Default dilution ladder used by the sweeps.
inline constexpr std::array<double, 4> kDilutionLadder{0.08, 0.04, 0.02, 0.01};

} // namespace sgehom
