#include "sgehom/energy.hpp"

#include <algorithm>
#include <cmath>

#include "sgehom/numeric.hpp"

namespace sgehom {

PointFields fields_from_quadratic(const QuadraticBC& bc, const Tensor4Elastic& C, const Tensor6SGE& A,
                                  const Eigen::VectorXd& x) {
    const Dim d = bc.beta.dim();
    const int n = d.n();
    require_same_dim(d, C.dim(), "fields_from_quadratic C");
    require_same_dim(d, A.dim(), "fields_from_quadratic A");
    if (bc.alpha.rows() != n || bc.alpha.cols() != n || x.size() != n) {
        throw DimensionError("fields_from_quadratic: alpha must be n x n and x must have n entries");
    }
    const BetaField& b = bc.beta;

    Tensor2Sym eps(d);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double v = 0.5 * (bc.alpha(i, j) + bc.alpha(j, i));
            for (int k = 0; k < n; ++k) v += (b(i, j, k) + b(j, i, k)) * x(k);
            eps.set(i, j, v);
        }

    CurvatureTensor chi(d);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = 0; k < n; ++k) chi.set(i, j, k, 2.0 * b(k, i, j));

    Tensor2Sym sigma = contract(C, eps);
    CurvatureTensor tau = contract(A, chi);
    return PointFields{std::move(eps), std::move(chi), std::move(sigma), std::move(tau)};
}

double sge_energy_density(const Tensor2Sym& eps, const CurvatureTensor& chi, const Tensor4Elastic& C,
                          const Tensor6SGE& A) {
    return 0.5 * ddot(eps, contract(C, eps)) + 0.5 * ddot(chi, contract(A, chi));
}

// -- invariants -----------------------------------------------------------------------

namespace {

template <class F>
double sum_ijk(int n, F term) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) s += term(i, j, k);
    return s;
}

} // namespace

std::array<double, 5> chi_invariants(const CurvatureTensor& c) {
    const int n = c.dim().n();
    std::array<double, 5> I{};
    for (int k = 0; k < n; ++k) {
        double iik = 0.0, iki = 0.0, jkj = 0.0;
        for (int i = 0; i < n; ++i) {
            iik += c(i, i, k);
            iki += c(i, k, i);
            jkj += c(i, k, i);
        }
        I[0] += iik * jkj;
        I[1] += iki * jkj;
        I[2] += iik * iik;
    }
    I[3] = sum_ijk(n, [&](int i, int j, int k) { return c(i, j, k) * c(i, j, k); });
    I[4] = sum_ijk(n, [&](int i, int j, int k) { return c(i, j, k) * c(k, j, i); });
    return I;
}

std::array<std::vector<double>, 5> chi_invariant_alternates(const CurvatureTensor& c) {
    const int n = c.dim().n();
    // Contractions of the form (sum_i c[pattern_a]) (sum_j c[pattern_b]) over a free index k.
    const auto trace_product = [&](auto first, auto second) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) {
            double a = 0.0, b = 0.0;
            for (int i = 0; i < n; ++i) {
                a += first(i, k);
                b += second(i, k);
            }
            s += a * b;
        }
        return s;
    };
    const auto iik = [&](int i, int k) { return c(i, i, k); };
    const auto kjj = [&](int j, int k) { return c(k, j, j); };
    const auto kii = [&](int i, int k) { return c(k, i, i); };
    const auto jkj = [&](int j, int k) { return c(j, k, j); };

    std::array<std::vector<double>, 5> alt;
    alt[0] = {trace_product(iik, kjj)};
    alt[1] = {trace_product(kii, jkj), trace_product(kii, kjj), trace_product(jkj, kjj)};
    alt[3] = {sum_ijk(n, [&](int i, int j, int k) { return c(j, i, k) * c(i, j, k); }),
              sum_ijk(n, [&](int i, int j, int k) { return c(j, i, k) * c(j, i, k); }),
              sum_ijk(n, [&](int i, int j, int k) { return c(i, j, k) * c(j, i, k); })};
    alt[4] = {sum_ijk(n, [&](int i, int j, int k) { return c(j, i, k) * c(k, j, i); }),
              sum_ijk(n, [&](int i, int j, int k) { return c(j, i, k) * c(j, k, i); })};
    return alt;
}

double chi_invariant_alternate_defect(const CurvatureTensor& chi) {
    const auto I = chi_invariants(chi);
    const auto alt = chi_invariant_alternates(chi);
    double defect = 0.0;
    for (std::size_t k = 0; k < 5; ++k)
        for (double v : alt[k]) defect = std::max(defect, std::abs(v - I[k]));
    return defect;
}

// -- beta energies ----------------------------------------------------------------------

double beta_form(const Tensor4Elastic& X, const BetaField& b) {
    require_same_dim(X.dim(), b.dim(), "beta_form(C)");
    const int n = X.dim().n();
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int h = 0; h < n; ++h)
                for (int k = 0; k < n; ++k) {
                    double bb = 0.0;
                    for (int l = 0; l < n; ++l) bb += b(i, j, l) * b(h, k, l);
                    s += X(i, j, h, k) * bb;
                }
    return s;
}

double beta_form(const Tensor6SGE& A, const BetaField& b) {
    require_same_dim(A.dim(), b.dim(), "beta_form(A)");
    const int n = A.dim().n();
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                const double bijl = b(i, j, l);
                if (bijl == 0.0) continue;
                for (int h = 0; h < n; ++h)
                    for (int k = 0; k < n; ++k)
                        for (int m = 0; m < n; ++m) s += A(j, l, i, k, m, h) * bijl * b(h, k, m);
            }
    return s;
}

double rve_energy_beta(const Tensor4Elastic& C1, const BetaField& beta, double rho2, double omega) {
    return 2.0 * rho2 * omega * beta_form(C1, beta);
}

double sge_energy_beta(const Tensor4Elastic& C_eq, const Tensor6SGE& A, const BetaField& beta, double rho2,
                       double omega) {
    return 2.0 * omega * (rho2 * beta_form(C_eq, beta) + beta_form(A, beta));
}

double generic_gap_contraction(const Tensor4Elastic& C_tilde, const Tensor6SGE& A, double f, double rho2,
                               const BetaField& beta) {
    return f * rho2 * beta_form(C_tilde, beta) + beta_form(A, beta);
}

// -- mismatch and bounds ----------------------------------------------------------------

namespace {

bool is_pd(const Tensor4Elastic& C) { return classify(eig_min_on_sym(C), C.norm()) == Definiteness::Positive; }

} // namespace

EnergyReport mismatch(const HomogenizationProblem& problem, const Tensor6SGE& A, const BetaField& beta,
                      const EnergyOptions& options) {
    require_same_dim(problem.dim, A.dim(), "mismatch A");
    require_same_dim(problem.dim, beta.dim(), "mismatch beta");
    if (!(options.omega > 0.0)) throw DomainError("reference volume omega must be positive");
    const double f = problem.f;
    const double rho2 = problem.rho2;
    const double om = options.omega;

    EnergyReport r;
    r.omega = om;
    r.W_rve_beta = rve_energy_beta(problem.C1, beta, rho2, om);
    r.W_sge_beta = sge_energy_beta(problem.C_eq, A, beta, rho2, om);
    r.mismatch_G = r.W_rve_beta - r.W_sge_beta;
    const double scale = std::max(std::abs(r.W_rve_beta), std::abs(r.W_sge_beta));
    r.mismatch_rel = scale > 0.0 ? std::abs(r.mismatch_G) / scale : 0.0;
    r.W_rve_per_omega = r.W_rve_beta / om;
    r.W_sge_per_omega = r.W_sge_beta / om;
    r.mismatch_G_per_omega = r.mismatch_G / om;

    const Tensor4Elastic Ct = c_tilde(problem.C1, problem.C_eq, f);
    const Tensor4Elastic Chat = options.c_hat.value_or(Ct);
    require_same_dim(problem.dim, Chat.dim(), "mismatch c_hat");
    r.sandwich_asserted = (Chat - Ct).norm() <= 1e-14 * std::max(Ct.norm(), 1e-300);
    const Tensor4Elastic Cstar = problem.C1 + f * Chat;
    const double qA = beta_form(A, beta);

    if (is_pd(problem.C_eq)) {
        const Tensor4Elastic Ceq_inv = invert_on_sym(problem.C_eq);
        const double work = 4.0 * rho2 * om * beta_form(Cstar, beta) + 4.0 * om * qA;
        const double complementary = 2.0 * rho2 * om * beta_form(sandwich(Cstar, Ceq_inv), beta) + 2.0 * om * qA;
        r.ub = r.W_sge_beta;
        r.lb = work - complementary;
        const double tol = options.sandwich_rel_tol * std::max(std::abs(*r.ub), 1.0);
        r.sandwich_ok = *r.lb <= r.W_sge_beta + tol && r.W_sge_beta <= *r.ub + tol;
    } else {
        r.notes.emplace_back("C_eq is not positive definite; equivalent-solid bounds skipped");
    }

    if (problem.C2 && problem.rho2_inclusion) {
        const double r2 = f * *problem.rho2_inclusion;
        const double r1 = rho2 - r2;
        if (!(r1 >= 0.0)) {
            r.notes.emplace_back("rho2 < f * rho2_inclusion; RVE bounds skipped");
        } else if (!is_pd(problem.C1) || !is_pd(*problem.C2)) {
            r.notes.emplace_back("a phase is not positive definite; RVE bounds skipped");
        } else {
            const Tensor4Elastic& C1 = problem.C1;
            const Tensor4Elastic& C2 = *problem.C2;
            r.rve_ub = 2.0 * om * (r1 * beta_form(C1, beta) + r2 * beta_form(C2, beta));
            const double work = 4.0 * rho2 * om * beta_form(Cstar, beta);
            const double complementary = 2.0 * om *
                                         (r1 * beta_form(sandwich(Cstar, invert_on_sym(C1)), beta) +
                                          r2 * beta_form(sandwich(Cstar, invert_on_sym(C2)), beta));
            r.rve_lb = work - complementary;
        }
    }
    return r;
}

double galpha_zero_check(const Tensor4Elastic& C_eq, const Eigen::MatrixXd& alpha, double /*rho2*/,
                         double omega) {
    const Dim d = C_eq.dim();
    const int n = d.n();
    if (alpha.rows() != n || alpha.cols() != n) throw DimensionError("galpha_zero_check: alpha must be n x n");

    Tensor2Sym eps(d);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) eps.set(i, j, 0.5 * (alpha(i, j) + alpha(j, i)));
    const double local = omega * 0.5 * ddot(eps, contract(C_eq, eps));

    // The curvature of a linear displacement vanishes, so the nonlocal part does too.
    const QuadraticBC bc{alpha, BetaField(d)};
    const Tensor6SGE A0(d);
    const PointFields fields = fields_from_quadratic(bc, C_eq, A0, Eigen::VectorXd::Zero(n));
    const double sge = omega * sge_energy_density(fields.eps, fields.chi, C_eq, A0);
    return local - sge;
}

DilutionSweep dilution_sweep(const Tensor4Elastic& C1, const Tensor4Elastic& C2, const Tensor4Elastic& C_tilde,
                             std::span<const DilutionPoint> ladder, int samples, std::uint64_t seed,
                             double omega) {
    const Dim d = C1.dim();
    require_same_dim(d, C2.dim(), "dilution_sweep C2");
    require_same_dim(d, C_tilde.dim(), "dilution_sweep C_tilde");
    if (samples < 1) throw DomainError("dilution_sweep: samples must be positive");

    DilutionSweep sweep;
    for (const DilutionPoint& pt : ladder) {
        const HomogenizationProblem problem{.dim = d,
                                            .C1 = C1,
                                            .C_eq = C1 + pt.f * C_tilde,
                                            .f = pt.f,
                                            .rho2 = pt.rho2,
                                            .C2 = C2,
                                            .rho2_inclusion = pt.rho2_inclusion};
        problem.validate();
        const Tensor6SGE A = effective_A(C_tilde, pt.f, pt.rho2);

        DilutionSweepPoint out{.point = pt};
        for (int s = 0; s < samples; ++s) {
            const BetaField beta = sample_admissible_beta(problem.C_eq, seed + static_cast<std::uint64_t>(s));
            const EnergyReport rep = mismatch(problem, A, beta, EnergyOptions{.omega = omega});
            if (!rep.rve_ub || !rep.rve_lb) {
                throw NotPositiveDefiniteError("dilution_sweep: RVE bounds unavailable at f = " +
                                               std::to_string(pt.f));
            }
            out.max_mismatch_rel = std::max(out.max_mismatch_rel, rep.mismatch_rel);
            const double w = std::abs(rep.W_rve_beta);
            if (w > 0.0) out.rve_gap = std::max(out.rve_gap, (*rep.rve_ub - *rep.rve_lb) / w);
            out.sandwich_ok = out.sandwich_ok && rep.sandwich_ok;
        }
        out.rve_gap_over_f = out.rve_gap / pt.f;
        sweep.points.push_back(out);
    }

    std::vector<DilutionSweepPoint> by_f = sweep.points;
    std::sort(by_f.begin(), by_f.end(), [](const auto& a, const auto& b) { return a.point.f > b.point.f; });
    sweep.monotone = by_f.size() >= 2;
    for (std::size_t k = 1; k < by_f.size(); ++k)
        sweep.monotone = sweep.monotone && by_f[k].rve_gap_over_f < by_f[k - 1].rve_gap_over_f;

    std::vector<double> fs, gaps;
    for (const auto& p : sweep.points) {
        fs.push_back(p.point.f);
        gaps.push_back(p.rve_gap_over_f);
    }
    sweep.gap_over_f_slope = loglog_slope(fs, gaps);
    return sweep;
}

} // namespace sgehom
