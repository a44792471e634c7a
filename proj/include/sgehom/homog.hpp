#pragma once

// Nonlocal effective tensor of a dilute two-phase Cauchy composite.
//
// Given the matrix stiffness C1, the first-order effective stiffness
// C_eq = C1 + f C~ (from any standard homogenization scheme), the inclusion
// volume fraction f and the RVE inertia radius rho, the equivalent Mindlin
// material has
//
//   A_eq[i,j,h,l,m,n] = -f rho^2 / 4 (C~_ihln d_jm + C~_ihmn d_jl
//                                    + C~_jhln d_im + C~_jhmn d_il)
//
// to first order in f. A_eq is positive definite exactly when C~ is negative
// definite.

#include <array>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "sgehom/tensor.hpp"

namespace sgehom {

struct HomogenizationProblem {
    Dim dim;
    Tensor4Elastic C1;    ///< matrix phase
    Tensor4Elastic C_eq;  ///< first-order effective local stiffness
    double f = 0.0;       ///< inclusion volume fraction
    double rho2 = 0.0;    ///< squared inertia radius of the RVE
    std::optional<Tensor4Elastic> C2;  ///< inclusion phase (reporting and RVE bounds only)
    std::optional<double> rho2_inclusion;  ///< squared inertia radius of the inclusion (RVE bounds only)

    /// Checks 0 < f < 1, rho2 > 0, matching dimensions, and a positive definite
    /// matrix phase. Throws DomainError, DimensionError or NotPositiveDefiniteError.
    void validate() const;
};

/// Three-way outcome of a positive-definiteness test with a relative threshold.
enum class Definiteness {
    Positive,    ///< smallest eigenvalue > tol * norm
    Borderline,  ///< |smallest eigenvalue| <= tol * norm
    NotPositive, ///< smallest eigenvalue < -tol * norm
};

Definiteness classify(double eig_min, double norm, double rel_tol = kPdRelTol);
const char* to_string(Definiteness d);

struct IsotropicFit {
    double lambda = 0.0;
    double mu = 0.0;
    double residual = 0.0;  ///< |C - C_iso(lambda, mu)| / |C|
};

/// Least-squares projection of C onto the isotropic tensors.
IsotropicFit fit_isotropic(const Tensor4Elastic& C);

inline constexpr double kIsotropicRelTol = 1e-12;

struct HomogenizationResult {
    Tensor6SGE A_eq;
    Tensor4Elastic C_tilde;
    bool pd_A = false;
    Definiteness definiteness_A = Definiteness::NotPositive;
    double eig_min_A = 0.0;
    double eig_min_neg_C_tilde = 0.0;  ///< smallest eigenvalue of -C~; > 0 means C~ negative definite
    bool c_tilde_negative_definite = false;
    std::optional<IsotropicFit> isotropic_C_tilde{};
    std::optional<std::array<double, 5>> isotropic_a{};
};

/// (C_eq - C1) / f. Throws DomainError when f <= 0.
Tensor4Elastic c_tilde(const Tensor4Elastic& C1, const Tensor4Elastic& C_eq, double f);

/// Raw evaluation of the closed-form nonlocal tensor at one index tuple.
double effective_A_component(const Tensor4Elastic& C_tilde, double f, double rho2, const Index<6>& idx);

/// Nonlocal tensor for a given C~ (first-order term only).
Tensor6SGE effective_A(const Tensor4Elastic& C_tilde, double f, double rho2);

HomogenizationResult effective_A(const HomogenizationProblem& problem);

/// Isotropic constants a1..a5 reproducing effective_A for isotropic C~(lambda~, mu~).
std::array<double, 5> isotropic_a_from_sol(double lambda_t, double mu_t, double f, double rho2, Dim d);

/// Linear map beta -> (C_ijhk beta_hkj)_i, whose kernel holds the quadratic
/// displacement coefficients that are in equilibrium in a homogeneous body.
struct BetaConstraint {
    Dim dim;
    Eigen::MatrixXd matrix{};        ///< n x dim(BetaField), in beta_basis() coordinates
    Eigen::MatrixXd kernel_basis{};  ///< orthonormal columns spanning the kernel
    int rank = 0;
    int kernel_dim = 0;

    /// (C_ijhk beta_hkj)_i
    Eigen::VectorXd apply(const BetaField& beta) const;
    /// Orthogonal (Frobenius) projection onto the admissible set.
    BetaField project(const BetaField& beta) const;
};

inline constexpr double kRankRelTol = 1e-12;

BetaConstraint beta_constraint_matrix(const Tensor4Elastic& C);

/// Seeded random beta, symmetric in its last pair, in equilibrium for C.
BetaField sample_admissible_beta(const Tensor4Elastic& C, std::uint64_t seed);

/// Seeded random beta with only the symmetry beta_ijk = beta_ikj.
BetaField sample_beta(Dim d, std::uint64_t seed);

/// Mindlin-Eshel positive-definiteness conditions for the isotropic nonlocal
/// energy (three-dimensional).
struct MindlinEshel {
    double e1 = 0.0;
    double e2 = 0.0;
    double e3 = 0.0;
    bool a5_window = false;  ///< -a4 < a5 < 2 a4
    bool e1_positive = false;
    bool e2_positive = false;
    bool e3_bound = false;   ///< 5 e3^2 < 2 e1 e2
    bool positive_definite = false;
};

MindlinEshel mindlin_eshel(const std::array<double, 5>& a);

/// Positive definiteness of the isotropic local energy: n lambda + 2 mu > 0, mu > 0.
bool lame_positive_definite(double lambda, double mu, Dim d);

} // namespace sgehom
