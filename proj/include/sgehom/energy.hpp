#pragma once

// Fields and energies under quadratic boundary displacements
//   u_i = alpha_ij x_j + beta_ijk x_j x_k,
// the energy mismatch between the heterogeneous RVE and the equivalent
// second-gradient solid, and the bounds that bracket both energies.
// Every first-order formula omits its o(f) remainder.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sgehom/homog.hpp"
#include "sgehom/tensor.hpp"

namespace sgehom {

struct QuadraticBC {
    Eigen::MatrixXd alpha;  ///< n x n, not necessarily symmetric
    BetaField beta;
};

struct PointFields {
    Tensor2Sym eps;
    CurvatureTensor chi;
    Tensor2Sym sigma;
    CurvatureTensor tau;
};

/// eps_ij = (alpha_ij + alpha_ji)/2 + (beta_ijk + beta_jik) x_k, chi_ijk = 2 beta_kij,
/// sigma = C:eps, tau_ijk = 2 A_ijklmn beta_nlm.
PointFields fields_from_quadratic(const QuadraticBC& bc, const Tensor4Elastic& C, const Tensor6SGE& A,
                                  const Eigen::VectorXd& x);

/// 1/2 eps:C:eps + 1/2 chi:A:chi
double sge_energy_density(const Tensor2Sym& eps, const CurvatureTensor& chi, const Tensor4Elastic& C,
                          const Tensor6SGE& A);

/// (I1, ..., I5): chi_iik chi_jkj, chi_iki chi_jkj, chi_iik chi_jjk, chi_ijk chi_ijk, chi_ijk chi_kji.
std::array<double, 5> chi_invariants(const CurvatureTensor& chi);

/// Equivalent index patterns of each invariant, evaluated independently.
std::array<std::vector<double>, 5> chi_invariant_alternates(const CurvatureTensor& chi);

/// Largest |alternate - primary| over all invariants.
double chi_invariant_alternate_defect(const CurvatureTensor& chi);

/// X_ijhk beta_ijl beta_hkl
double beta_form(const Tensor4Elastic& X, const BetaField& beta);
/// A_jlikmh beta_ijl beta_hkm
double beta_form(const Tensor6SGE& A, const BetaField& beta);

/// 2 rho^2 Omega C1_ijhk beta_ijl beta_hkl
double rve_energy_beta(const Tensor4Elastic& C1, const BetaField& beta, double rho2, double omega);

/// 2 Omega (rho^2 C_eq_ijhk beta_ijl beta_hkl + A_jlikmh beta_ijl beta_hkm)
double sge_energy_beta(const Tensor4Elastic& C_eq, const Tensor6SGE& A, const BetaField& beta, double rho2,
                       double omega);

/// f rho^2 C~_ijhk beta_ijl beta_hkl + A_jlikmh beta_ijl beta_hkm; zero for every beta
/// with beta_ijk = beta_ikj when A is the effective nonlocal tensor.
double generic_gap_contraction(const Tensor4Elastic& C_tilde, const Tensor6SGE& A, double f, double rho2,
                               const BetaField& beta);

struct EnergyOptions {
    double omega = 1.0;
    /// Auxiliary stiffness defining C* = C1 + f C_hat; defaults to C~.
    std::optional<Tensor4Elastic> c_hat{};
    /// Sandwich tolerance: lb <= W <= ub within sandwich_rel_tol * max(|ub|, 1).
    double sandwich_rel_tol = 1e-10;
};

struct EnergyReport {
    double omega = 1.0;
    double W_rve_beta = 0.0;
    double W_sge_beta = 0.0;
    double mismatch_G = 0.0;
    double mismatch_rel = 0.0;
    double W_rve_per_omega = 0.0;
    double W_sge_per_omega = 0.0;
    double mismatch_G_per_omega = 0.0;

    /// Equivalent-solid bounds: ub is the energy of the kinematically admissible
    /// fields, lb is boundary work minus complementary energy. Absent when C_eq
    /// is not positive definite.
    std::optional<double> ub;
    std::optional<double> lb;
    /// True when lb <= W_sge_beta <= ub within tolerance.
    bool sandwich_ok = false;
    /// True when C_hat = C~, the case in which the sandwich is asserted.
    bool sandwich_asserted = false;

    /// Heterogeneous-RVE bounds, available when C2 and the inclusion inertia
    /// radius are known and both phases are positive definite.
    std::optional<double> rve_ub;
    std::optional<double> rve_lb;

    std::vector<std::string> notes;
};

/// Mismatch G = W_rve - W_sge and the bound fields for one beta. `beta` should
/// be admissible for C* = C1 + f C_hat.
EnergyReport mismatch(const HomogenizationProblem& problem, const Tensor6SGE& A, const BetaField& beta,
                      const EnergyOptions& options = {});

/// Difference between the uniform-strain energy of the effective local solid
/// and of the equivalent second-gradient solid under u_i = alpha_ij x_j.
double galpha_zero_check(const Tensor4Elastic& C_eq, const Eigen::MatrixXd& alpha, double rho2, double omega);

/// One point of a dilution ladder.
struct DilutionPoint {
    double f = 0.0;
    double rho2 = 0.0;            ///< RVE
    double rho2_inclusion = 0.0;  ///< inclusion
};

struct DilutionSweepPoint {
    DilutionPoint point;
    double max_mismatch_rel = 0.0;
    double rve_gap = 0.0;  ///< max over samples of (rve_ub - rve_lb) / |W_rve_beta|
    double rve_gap_over_f = 0.0;
    bool sandwich_ok = true;
};

struct DilutionSweep {
    std::vector<DilutionSweepPoint> points;
    /// Least-squares slope of log(rve_gap / f) against log(f); positive means
    /// the remainder vanishes faster than f.
    double gap_over_f_slope = 0.0;
    /// rve_gap / f decreases strictly as f decreases along the ladder.
    bool monotone = false;
};

/// Runs the mismatch and both bound pairs along a ladder of (f, rho^2,
/// rho2_inclusion) for fixed phases and fixed C~ (C_eq = C1 + f C~ at each point).
DilutionSweep dilution_sweep(const Tensor4Elastic& C1, const Tensor4Elastic& C2, const Tensor4Elastic& C_tilde,
                             std::span<const DilutionPoint> ladder, int samples, std::uint64_t seed,
                             double omega = 1.0);

} // namespace sgehom
