#pragma once

// JSON interchange: tensors, shapes, problem files and reports.
//
// Full-component tensors are nested arrays in index order. Numbers are written
// in the shortest form that parses back to the same double, so a report
// survives write/read bit-exactly.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sgehom/energy.hpp"
#include "sgehom/geometry.hpp"
#include "sgehom/homog.hpp"
#include "sgehom/tensor.hpp"

namespace sgehom::io {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;
inline constexpr std::uint64_t kDefaultSeed = 20240601;
inline constexpr int kDefaultSamples = 20;
inline constexpr double kDefaultCertifyTol = 1e-10;
/// Relative tolerance for symmetry validation of loaded tensors.
inline constexpr double kLoadSymmetryRelTol = 1e-12;
/// Volume fractions above this are reported with a dilute-regime warning.
inline constexpr double kDiluteWarnFraction = 0.1;

// -- tensors -----------------------------------------------------------------------------

json nested_components(const Tensor4Elastic& C);
json nested_components(const Tensor6SGE& A);

/// {"isotropic": {"lambda", "mu"}} or {"components": n^4 nested array}.
Tensor4Elastic elastic_from_json(const json& j, Dim d, const std::string& where);
json elastic_to_json(const Tensor4Elastic& C);

/// {"isotropic_a": [a1..a5]} or {"components": n^6 nested array}.
Tensor6SGE sge_from_json(const json& j, Dim d, const std::string& where);
json sge_to_json(const Tensor6SGE& A);

// -- shapes ------------------------------------------------------------------------------

/// {"kind": "ball" | "ellipsoid" | "polygon" | "polyhedron" | "box" | "composite", ...}
ShapeSpec shape_from_json(const json& j, Dim d, const std::string& where);
json shape_to_json(const ShapeSpec& s);

InclusionFamily family_from_string(const std::string& s);
const char* to_string(InclusionFamily f);

// -- problem file ------------------------------------------------------------------------

struct GeometrySpec {
    ShapeSpec rve;
    ShapeSpec inclusion;
    InclusionFamily family = InclusionFamily::Scale;
};

struct ProblemOptions {
    std::optional<double> gp_tol;
    double certify_tol = kDefaultCertifyTol;
    std::uint64_t seed = kDefaultSeed;
    double omega = 1.0;
    std::optional<Tensor4Elastic> c_hat;
    int samples = kDefaultSamples;
};

struct ProblemFile {
    Dim dim;
    Tensor4Elastic C1;
    std::optional<Tensor4Elastic> C2{};
    std::optional<double> f{};
    std::optional<double> rho2{};
    std::optional<double> rho2_inclusion{};
    std::optional<GeometrySpec> geometry{};
    std::optional<Tensor4Elastic> C_eq{};
    std::optional<Tensor4Elastic> C_tilde{};
    std::optional<Tensor6SGE> A{};  ///< externally supplied nonlocal tensor
    ProblemOptions options{};
};

/// Schema and symmetry validation. Throws SchemaError or SymmetryError.
ProblemFile problem_from_json(const json& j);

/// Shapes file for the geometry command: {"dim", "rve", "inclusion", "family"?, "tol"?}.
struct ShapesFile {
    GeometrySpec geometry;
    std::optional<double> tol;
};
ShapesFile shapes_from_json(const json& j);

/// Tensor file for check-pd: {"dim", "tensor": {...}}; the tensor kind follows
/// from its encoding ("isotropic" or 4 levels: stiffness; "isotropic_a" or 6 levels: nonlocal).
struct TensorFile {
    Dim dim;
    std::optional<Tensor4Elastic> C{};
    std::optional<Tensor6SGE> A{};
    std::optional<std::array<double, 2>> lame{};
    std::optional<std::array<double, 5>> isotropic_a{};
};
TensorFile tensor_file_from_json(const json& j);

// -- report ------------------------------------------------------------------------------

struct Certificate {
    double tol = kDefaultCertifyTol;
    int samples = 0;
    double max_mismatch_rel = 0.0;
    bool sandwich_ok = true;
    bool passed = false;
};

struct PdVerdict {
    std::string kind;  ///< "stiffness" or "nonlocal"
    double eig_min = 0.0;
    double norm = 0.0;
    Definiteness definiteness = Definiteness::NotPositive;
    std::optional<bool> lame_positive_definite;
    std::optional<MindlinEshel> mindlin_eshel;
    std::optional<bool> routes_agree;
};

struct Report {
    std::string tool = "sgehom";
    std::string version;
    std::string command;
    std::uint64_t seed = kDefaultSeed;
    json input;
    std::optional<GPReport> gp;
    std::optional<HomogenizationResult> homogenization;
    std::vector<EnergyReport> energy;
    std::optional<Certificate> certificate;
    std::optional<Gp3Sweep> gp3;
    std::optional<DilutionSweep> dilution;
    std::optional<PdVerdict> pd;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;
};

json to_json(const GPReport& r);
GPReport gp_report_from_json(const json& j);
json to_json(const HomogenizationResult& r);
HomogenizationResult homogenization_from_json(const json& j, Dim d);
json to_json(const EnergyReport& r);
EnergyReport energy_report_from_json(const json& j);
json to_json(const MindlinEshel& m);
MindlinEshel mindlin_eshel_from_json(const json& j);

json to_json(const Report& r);
/// Inverse of to_json(Report); tensor dimensions follow from their nesting.
Report report_from_json(const json& j);

/// Pretty-printed JSON text with a trailing newline.
std::string dump(const json& j);

} // namespace sgehom::io
