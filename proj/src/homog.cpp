#include "sgehom/homog.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace sgehom {

void HomogenizationProblem::validate() const {
    require_same_dim(dim, C1.dim(), "HomogenizationProblem C1");
    require_same_dim(dim, C_eq.dim(), "HomogenizationProblem C_eq");
    if (C2) require_same_dim(dim, C2->dim(), "HomogenizationProblem C2");
    if (!(f > 0.0 && f < 1.0)) throw DomainError("volume fraction f must lie in (0, 1), got " + std::to_string(f));
    if (!(rho2 > 0.0) || !std::isfinite(rho2)) {
        throw DomainError("rho2 must be positive and finite, got " + std::to_string(rho2));
    }
    if (rho2_inclusion && (!(*rho2_inclusion >= 0.0) || !std::isfinite(*rho2_inclusion))) {
        throw DomainError("rho2_inclusion must be non-negative and finite");
    }
    const double lo = eig_min_on_sym(C1);
    if (classify(lo, C1.norm()) != Definiteness::Positive) {
        std::ostringstream os;
        os.precision(17);
        os << "matrix stiffness C1 is not positive definite (smallest eigenvalue " << lo << ")";
        throw NotPositiveDefiniteError(os.str());
    }
}

Definiteness classify(double eig_min, double norm, double rel_tol) {
    const double band = rel_tol * norm;
    if (eig_min > band) return Definiteness::Positive;
    if (eig_min < -band) return Definiteness::NotPositive;
    return Definiteness::Borderline;
}

const char* to_string(Definiteness d) {
    switch (d) {
    case Definiteness::Positive: return "positive_definite";
    case Definiteness::Borderline: return "borderline";
    case Definiteness::NotPositive: return "not_positive_definite";
    }
    return "unknown";
}

IsotropicFit fit_isotropic(const Tensor4Elastic& C) {
    const Dim d = C.dim();
    const auto span_of = [](const Tensor4Elastic& t) {
        return Eigen::Map<const Eigen::VectorXd>(t.components().data(), static_cast<Eigen::Index>(t.size()));
    };
    const Tensor4Elastic L = make_isotropic_C(1.0, 0.0, d);
    const Tensor4Elastic M = make_isotropic_C(0.0, 1.0, d);
    Eigen::MatrixXd B(static_cast<Eigen::Index>(C.size()), 2);
    B.col(0) = span_of(L);
    B.col(1) = span_of(M);
    const Eigen::Vector2d x = (B.transpose() * B).ldlt().solve(B.transpose() * span_of(C));

    IsotropicFit fit;
    fit.lambda = x(0);
    fit.mu = x(1);
    const double nc = C.norm();
    const double nr = (C - make_isotropic_C(fit.lambda, fit.mu, d)).norm();
    fit.residual = nc > 0.0 ? nr / nc : 0.0;
    return fit;
}

Tensor4Elastic c_tilde(const Tensor4Elastic& C1, const Tensor4Elastic& C_eq, double f) {
    require_same_dim(C1.dim(), C_eq.dim(), "c_tilde");
    if (!(f > 0.0)) throw DomainError("c_tilde: volume fraction must be positive");
    return (1.0 / f) * (C_eq - C1);
}

double effective_A_component(const Tensor4Elastic& Ct, double f, double rho2, const Index<6>& x) {
    const auto [i, j, h, l, m, n] = x;
    const auto D = [](int p, int q) { return p == q ? 1.0 : 0.0; };
    const double s = Ct(i, h, l, n) * D(j, m) + Ct(i, h, m, n) * D(j, l) + Ct(j, h, l, n) * D(i, m) +
                     Ct(j, h, m, n) * D(i, l);
    return -f * rho2 / 4.0 * s;
}

Tensor6SGE effective_A(const Tensor4Elastic& Ct, double f, double rho2) {
    const Dim d = Ct.dim();
    Tensor6SGE A(d);
    // Evaluate once per symmetry orbit, at its smallest flat index.
    for (std::size_t p = 0; p < A.size(); ++p) {
        const Index<6> x = A.unflat(p);
        bool canonical = true;
        for (const auto& y : sge_orbit(x)) canonical = canonical && A.flat(y) >= p;
        if (!canonical) continue;
        A.set(x[0], x[1], x[2], x[3], x[4], x[5], effective_A_component(Ct, f, rho2, x));
    }
    // The closed form has the orbit symmetries whenever C~ has the elastic ones.
    double defect = 0.0;
    for (std::size_t p = 0; p < A.size(); ++p) {
        defect = std::max(defect, std::abs(A.components()[p] - effective_A_component(Ct, f, rho2, A.unflat(p))));
    }
    if (defect > 1e-13 * std::max(A.max_abs(), 1e-300)) {
        throw SymmetryError("effective_A: closed form lost the sixth-order symmetries (defect " +
                            std::to_string(defect) + ")");
    }
    return A;
}

std::array<double, 5> isotropic_a_from_sol(double lambda_t, double mu_t, double f, double rho2, Dim) {
    const double s = -f * rho2 / 2.0;
    return {0.0, s * lambda_t, 0.0, s * mu_t, s * mu_t};
}

HomogenizationResult effective_A(const HomogenizationProblem& problem) {
    problem.validate();
    Tensor4Elastic Ct = c_tilde(problem.C1, problem.C_eq, problem.f);
    Tensor6SGE A = effective_A(Ct, problem.f, problem.rho2);

    HomogenizationResult r{.A_eq = std::move(A), .C_tilde = std::move(Ct)};
    r.eig_min_A = eig_min_on_sym(r.A_eq);
    r.definiteness_A = classify(r.eig_min_A, r.A_eq.norm());
    r.pd_A = r.definiteness_A == Definiteness::Positive;
    r.eig_min_neg_C_tilde = eig_min_on_sym(-r.C_tilde);
    r.c_tilde_negative_definite = classify(r.eig_min_neg_C_tilde, r.C_tilde.norm()) == Definiteness::Positive;

    const IsotropicFit fit = fit_isotropic(r.C_tilde);
    if (fit.residual <= kIsotropicRelTol) {
        r.isotropic_C_tilde = fit;
        r.isotropic_a = isotropic_a_from_sol(fit.lambda, fit.mu, problem.f, problem.rho2, problem.dim);
    }
    return r;
}

// -- beta constraint ------------------------------------------------------------------

namespace {

Eigen::VectorXd constraint_of_full(const Tensor4Elastic& C, const Eigen::VectorXd& beta_full) {
    const int n = C.dim().n();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int h = 0; h < n; ++h)
                for (int k = 0; k < n; ++k) out(i) += C(i, j, h, k) * beta_full((h * n + k) * n + j);
    return out;
}

} // namespace

Eigen::VectorXd BetaConstraint::apply(const BetaField& beta) const {
    require_same_dim(dim, beta.dim(), "BetaConstraint::apply");
    return matrix * to_coordinates(beta);
}

BetaField BetaConstraint::project(const BetaField& beta) const {
    require_same_dim(dim, beta.dim(), "BetaConstraint::project");
    const Eigen::VectorXd c = to_coordinates(beta);
    return from_coordinates<PairSym::Last>(dim, kernel_basis * (kernel_basis.transpose() * c));
}

BetaConstraint beta_constraint_matrix(const Tensor4Elastic& C) {
    const Dim d = C.dim();
    const Eigen::MatrixXd B = beta_basis(d);
    BetaConstraint bc{.dim = d};
    bc.matrix.resize(d.n(), B.cols());
    for (Eigen::Index c = 0; c < B.cols(); ++c) bc.matrix.col(c) = constraint_of_full(C, B.col(c));

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(bc.matrix, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv.maxCoeff() : 0.0;
    bc.rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) > kRankRelTol * smax) ++bc.rank;
    bc.kernel_dim = static_cast<int>(B.cols()) - bc.rank;
    bc.kernel_basis = svd.matrixV().rightCols(bc.kernel_dim);
    return bc;
}

BetaField sample_beta(Dim d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int m = d.n() * d.n() * (d.n() + 1) / 2;
    Eigen::VectorXd c(m);
    for (int k = 0; k < m; ++k) c(k) = normal(rng);
    return from_coordinates<PairSym::Last>(d, c);
}

BetaField sample_admissible_beta(const Tensor4Elastic& C, std::uint64_t seed) {
    const BetaConstraint bc = beta_constraint_matrix(C);
    if (bc.kernel_dim == 0) throw DomainError("sample_admissible_beta: admissible set is trivial");
    return bc.project(sample_beta(bc.dim, seed));
}

// -- isotropic positive definiteness ----------------------------------------------------

MindlinEshel mindlin_eshel(const std::array<double, 5>& a) {
    const auto [a1, a2, a3, a4, a5] = a;
    MindlinEshel me;
    me.e1 = -4.0 * a1 + 2.0 * a2 + 8.0 * a3 + 6.0 * a4 - 3.0 * a5;
    me.e2 = 5.0 * (a1 + a2 + a3) + 3.0 * (a4 + a5);
    me.e3 = a1 - 2.0 * a2 + 4.0 * a3;
    me.a5_window = -a4 < a5 && a5 < 2.0 * a4;
    me.e1_positive = me.e1 > 0.0;
    me.e2_positive = me.e2 > 0.0;
    me.e3_bound = 5.0 * me.e3 * me.e3 < 2.0 * me.e1 * me.e2;
    me.positive_definite = me.a5_window && me.e1_positive && me.e2_positive && me.e3_bound;
    return me;
}

bool lame_positive_definite(double lambda, double mu, Dim d) { return d.n() * lambda + 2.0 * mu > 0.0 && mu > 0.0; }

} // namespace sgehom
