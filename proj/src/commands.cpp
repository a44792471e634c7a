#include "sgehom/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sgehom::cli {

const char* const kVersion = SGEHOM_VERSION_STRING;

namespace {

using io::json;

constexpr const char* kFirstOrderNote = "first order only; o(f) remainder dropped";

std::string fmt_double(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

io::Report new_report(const char* command, const json& input, std::uint64_t seed) {
    io::Report r;
    r.version = kVersion;
    r.command = command;
    r.seed = seed;
    r.input = input;
    return r;
}

void gp_warnings(const GPReport& gp, std::vector<std::string>& warnings) {
    if (!gp.gp1_ok)
        warnings.push_back("static moments do not vanish (defect " + fmt_double(gp.gp1_defect) + " > tol " +
                           fmt_double(gp.tol) + ")");
    if (!gp.gp2_ok)
        warnings.push_back("Euler tensors are not spherical (defect " + fmt_double(gp.gp2_defect) + " > tol " +
                           fmt_double(gp.tol) + ")");
}

void gp3_warnings(const Gp3Sweep& s, std::vector<std::string>& warnings) {
    if (!s.decays)
        warnings.push_back("inclusion inertia radius does not vanish with f (log-log slope " + fmt_double(s.slope) +
                           "); the remainder is not controlled along this family");
    for (const auto& m : s.skipped) warnings.push_back("f-sweep point skipped: " + m);
}

struct Resolved {
    HomogenizationProblem problem;
    std::optional<GPReport> gp;
};

Resolved resolve(const io::ProblemFile& p, std::vector<std::string>& warnings) {
    double f = 0.0, rho2 = 0.0;
    std::optional<double> rho2_inclusion = p.rho2_inclusion;
    std::optional<GPReport> gp;
    if (p.geometry) {
        const double tol = p.options.gp_tol.value_or(default_gp_tol(p.geometry->rve, p.geometry->inclusion));
        gp = check_gp(p.geometry->rve, p.geometry->inclusion, tol);
        gp_warnings(*gp, warnings);
        f = gp->f;
        rho2 = gp->rho_rve * gp->rho_rve;
        rho2_inclusion = gp->rho_inclusion * gp->rho_inclusion;
    } else {
        f = *p.f;
        rho2 = *p.rho2;
    }
    HomogenizationProblem problem{.dim = p.dim,
                                  .C1 = p.C1,
                                  .C_eq = p.C_eq ? *p.C_eq : p.C1 + f * *p.C_tilde,
                                  .f = f,
                                  .rho2 = rho2,
                                  .C2 = p.C2,
                                  .rho2_inclusion = rho2_inclusion};
    problem.validate();
    if (f > io::kDiluteWarnFraction)
        warnings.push_back("f = " + fmt_double(f) + " exceeds " + fmt_double(io::kDiluteWarnFraction) +
                           "; first-order results may be inaccurate");
    return {std::move(problem), gp};
}

/// Mismatch over `samples` seeded beta admissible for C* = C1 + f C_hat.
io::Certificate certify(const HomogenizationProblem& problem, const Tensor6SGE& A, const io::ProblemFile& p, int samples,
                    std::uint64_t seed, double tol, std::vector<EnergyReport>& out) {
    const EnergyOptions options{.omega = p.options.omega, .c_hat = p.options.c_hat};
    const Tensor4Elastic Cstar = p.options.c_hat ? problem.C1 + problem.f * *p.options.c_hat : problem.C_eq;
    io::Certificate c{.tol = tol, .samples = samples};
    for (int s = 0; s < samples; ++s) {
        const BetaField beta = sample_admissible_beta(Cstar, seed + static_cast<std::uint64_t>(s));
        EnergyReport rep = mismatch(problem, A, beta, options);
        c.max_mismatch_rel = std::max(c.max_mismatch_rel, rep.mismatch_rel);
        if (rep.sandwich_asserted && rep.ub) c.sandwich_ok = c.sandwich_ok && rep.sandwich_ok;
        out.push_back(std::move(rep));
    }
    c.passed = c.max_mismatch_rel <= tol && c.sandwich_ok;
    return c;
}

ExitCode certificate_exit(const io::Certificate& c) { return c.passed ? ExitCode::Ok : ExitCode::Certification; }

void certificate_warnings(const io::Certificate& c, std::vector<std::string>& warnings) {
    if (c.max_mismatch_rel > c.tol)
        warnings.push_back("energy mismatch " + fmt_double(c.max_mismatch_rel) + " exceeds tol " + fmt_double(c.tol));
    if (!c.sandwich_ok) warnings.push_back("bound sandwich lb <= W <= ub violated");
}

} // namespace

using io::Certificate;

ExitCode exit_code_for(const std::exception& e) {
    if (dynamic_cast<const SymmetryError*>(&e)) return ExitCode::Symmetry;
    if (dynamic_cast<const NotPositiveDefiniteError*>(&e)) return ExitCode::NotPositive;
    if (dynamic_cast<const SchemaError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
        dynamic_cast<const GeometryError*>(&e) || dynamic_cast<const DimensionError*>(&e) ||
        dynamic_cast<const io::json::exception*>(&e))
        return ExitCode::Schema;
    return ExitCode::Usage;
}

Outcome cmd_homogenize(const json& input, const Overrides& o) {
    const io::ProblemFile p = io::problem_from_json(input);
    const std::uint64_t seed = o.seed.value_or(p.options.seed);
    Outcome out{new_report("homogenize", input, seed)};
    io::Report& r = out.report;

    const Resolved res = resolve(p, r.warnings);
    r.gp = res.gp;
    const HomogenizationResult h = effective_A(res.problem);
    if (!h.pd_A) r.warnings.push_back("A_eq is not positive definite (C_tilde is not negative definite)");
    if (p.A) r.warnings.push_back("external A ignored; homogenize always uses the effective tensor");

    r.certificate = certify(res.problem, h.A_eq, p, o.samples.value_or(p.options.samples), seed,
                            o.tol.value_or(p.options.certify_tol), r.energy);
    certificate_warnings(*r.certificate, r.warnings);
    r.homogenization = h;
    r.notes.emplace_back(kFirstOrderNote);
    out.exit_code = certificate_exit(*r.certificate);
    return out;
}

Outcome cmd_verify_energy(const json& input, const Overrides& o) {
    const io::ProblemFile p = io::problem_from_json(input);
    const std::uint64_t seed = o.seed.value_or(p.options.seed);
    const int samples = o.samples.value_or(p.options.samples);
    if (samples < 1) throw SchemaError("--samples must be at least 1");
    Outcome out{new_report("verify-energy", input, seed)};
    io::Report& r = out.report;

    if (o.fsweep && !p.geometry) throw SchemaError("--fsweep requires a \"geometry\" block");
    if (o.fsweep && !p.C2) throw SchemaError("--fsweep requires \"C2\" for the heterogeneous bounds");

    const Resolved res = resolve(p, r.warnings);
    r.gp = res.gp;
    const HomogenizationResult h = effective_A(res.problem);
    r.homogenization = h;
    if (p.A) r.notes.emplace_back("energies use the externally supplied A");
    const Tensor6SGE& A = p.A ? *p.A : h.A_eq;

    Certificate c = certify(res.problem, A, p, samples, seed, o.tol.value_or(p.options.certify_tol), r.energy);

    if (o.fsweep) {
        r.gp3 = gp3_sweep(p.geometry->rve, p.geometry->inclusion, kDilutionLadder, p.geometry->family);
        gp3_warnings(*r.gp3, r.warnings);
        std::vector<DilutionPoint> ladder;
        for (const auto& pt : r.gp3->points)
            ladder.push_back({pt.f, pt.rho_rve * pt.rho_rve, pt.rho_inclusion * pt.rho_inclusion});
        if (ladder.size() < 2) {
            r.warnings.push_back("f-sweep needs at least two ladder points; dilution check skipped");
        } else {
            r.dilution = dilution_sweep(res.problem.C1, *res.problem.C2, h.C_tilde, ladder, samples, seed,
                                        p.options.omega);
            if (!r.dilution->monotone)
                r.warnings.push_back("(rve_ub - rve_lb) / f does not decrease along the ladder (slope " +
                                     fmt_double(r.dilution->gap_over_f_slope) + ")");
            for (const auto& pt : r.dilution->points) {
                c.max_mismatch_rel = std::max(c.max_mismatch_rel, pt.max_mismatch_rel);
                c.sandwich_ok = c.sandwich_ok && pt.sandwich_ok;
            }
            r.notes.emplace_back("f-sweep keeps C_tilde fixed and sets C_eq = C1 + f C_tilde at each point");
            c.passed = c.max_mismatch_rel <= c.tol && c.sandwich_ok;
        }
    }
    certificate_warnings(c, r.warnings);
    r.certificate = c;
    r.notes.emplace_back(kFirstOrderNote);
    out.exit_code = certificate_exit(c);
    return out;
}

Outcome cmd_geometry(const json& input, const Overrides& o) {
    const io::ShapesFile s = io::shapes_from_json(input);
    Outcome out{new_report("geometry", input, o.seed.value_or(io::kDefaultSeed))};
    io::Report& r = out.report;
    const double tol =
        o.tol.value_or(s.tol.value_or(default_gp_tol(s.geometry.rve, s.geometry.inclusion)));
    r.gp = check_gp(s.geometry.rve, s.geometry.inclusion, tol);
    gp_warnings(*r.gp, r.warnings);
    if (r.gp->f > io::kDiluteWarnFraction)
        r.warnings.push_back("f = " + fmt_double(r.gp->f) + " exceeds " + fmt_double(io::kDiluteWarnFraction));
    if (o.fsweep) {
        r.gp3 = gp3_sweep(s.geometry.rve, s.geometry.inclusion, kDilutionLadder, s.geometry.family);
        gp3_warnings(*r.gp3, r.warnings);
    }
    return out;
}

Outcome cmd_check_pd(const json& input, const Overrides& o) {
    const io::TensorFile t = io::tensor_file_from_json(input);
    Outcome out{new_report("check-pd", input, o.seed.value_or(io::kDefaultSeed))};
    io::Report& r = out.report;
    const double rel_tol = o.tol.value_or(kPdRelTol);

    io::PdVerdict v;
    bool closed_form = false;
    std::optional<bool> closed_form_pd;
    if (t.C) {
        v.kind = "stiffness";
        v.eig_min = eig_min_on_sym(*t.C);
        v.norm = t.C->norm();
        if (t.lame) {
            v.lame_positive_definite = lame_positive_definite((*t.lame)[0], (*t.lame)[1], t.dim);
            closed_form = true;
            closed_form_pd = v.lame_positive_definite;
        }
    } else {
        v.kind = "nonlocal";
        v.eig_min = eig_min_on_sym(*t.A);
        v.norm = t.A->norm();
        if (t.isotropic_a) {
            if (t.dim.n() == 3) {
                v.mindlin_eshel = mindlin_eshel(*t.isotropic_a);
                closed_form = true;
                closed_form_pd = v.mindlin_eshel->positive_definite;
            } else {
                r.notes.emplace_back("closed-form isotropic conditions are three-dimensional; eigenvalue route only");
            }
        }
    }
    v.definiteness = classify(v.eig_min, v.norm, rel_tol);
    if (closed_form) {
        if (v.definiteness == Definiteness::Borderline) {
            r.warnings.push_back("eigenvalue verdict is borderline; routes not compared");
        } else {
            v.routes_agree = *closed_form_pd == (v.definiteness == Definiteness::Positive);
            if (!*v.routes_agree) {
                r.warnings.push_back("closed-form and eigenvalue verdicts disagree");
                out.exit_code = ExitCode::Certification;
            }
        }
    }
    r.pd = v;
    return out;
}

} // namespace sgehom::cli
