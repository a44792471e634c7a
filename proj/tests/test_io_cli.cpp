#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sgehom/commands.hpp"

using namespace sgehom;
using cli::ExitCode;
using io::json;

namespace {

const std::filesystem::path kExamples = SGEHOM_EXAMPLES_DIR;

json load(const std::string& name) {
    std::ifstream in(kExamples / name);
    REQUIRE(in.good());
    return json::parse(in);
}

json base_problem() {
    return json::parse(R"({
        "version": 1, "dim": 3,
        "C1": {"isotropic": {"lambda": 1.0, "mu": 1.0}},
        "f": 0.05, "rho2": 1.0,
        "C_tilde": {"isotropic": {"lambda": -0.5, "mu": -0.4}}
    })");
}

template <class E>
std::string thrown_message(const std::function<void()>& f) {
    try {
        f();
    } catch (const E& e) {
        return e.what();
    }
    FAIL("expected exception");
    return {};
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SGEHOM_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("tensor JSON round trip is bit-exact") {
    std::mt19937_64 rng(71);
    for (int n : {2, 3}) {
        const Dim d(n);
        const Tensor4Elastic C = oracle::random_C(d, rng);
        const Tensor4Elastic C2 = io::elastic_from_json(json::parse(io::elastic_to_json(C).dump()), d, "C");
        CHECK(std::equal(C.components().begin(), C.components().end(), C2.components().begin()));
        const Tensor6SGE A = oracle::random_A(d, rng);
        const Tensor6SGE A2 = io::sge_from_json(json::parse(io::sge_to_json(A).dump()), d, "A");
        CHECK(std::equal(A.components().begin(), A.components().end(), A2.components().begin()));
    }
}

TEST_CASE("isotropic encodings") {
    const Tensor4Elastic C = io::elastic_from_json(json::parse(R"({"isotropic": {"lambda": 2, "mu": 3}})"), Dim(3), "C");
    CHECK(C(0, 0, 0, 0) == 8.0);
    CHECK(C(0, 1, 0, 1) == 3.0);
    const Tensor6SGE A = io::sge_from_json(json::parse(R"({"isotropic_a": [0, 0, 0, 1, 0]})"), Dim(3), "A");
    const Tensor6SGE ref = make_isotropic_A({0, 0, 0, 1, 0}, Dim(3));
    CHECK(std::equal(A.components().begin(), A.components().end(), ref.components().begin()));
}

TEST_CASE("broken minor symmetry is rejected with the offending indices") {
    const std::string msg =
        thrown_message<SymmetryError>([] { io::problem_from_json(load("malformed_tensor_3d.json")); });
    CHECK(msg.find("C1.components") != std::string::npos);
    CHECK(msg.find("(0,0,0,1)") != std::string::npos);
    CHECK(msg.find("(0,1,0,0)") != std::string::npos);
}

TEST_CASE("schema violations") {
    auto rejects = [](json j) { CHECK_THROWS_AS(io::problem_from_json(j), SchemaError); };
    json j = base_problem();
    j.erase("C1");
    rejects(j);
    j = base_problem();
    j["C_eq"] = j["C1"];
    rejects(j);
    j = base_problem();
    j.erase("C_tilde");
    rejects(j);
    j = base_problem();
    j.erase("rho2");
    rejects(j);
    j = base_problem();
    j["geometry"] = json::parse(R"({"rve": {"kind": "ball", "radius": 1}, "inclusion": {"kind": "ball", "radius": 0.2}})");
    rejects(j);
    j.erase("rho2");
    rejects(j);  // f is computed from the geometry
    j.erase("f");
    CHECK_NOTHROW(io::problem_from_json(j));
    j = base_problem();
    j["unexpected"] = 1;
    rejects(j);
    j = base_problem();
    j["dim"] = 4;
    rejects(j);
    j = base_problem();
    j["version"] = 2;
    rejects(j);
    j = base_problem();
    j["f"] = "0.05";
    rejects(j);
    j = base_problem();
    j["C1"] = json::parse(R"({"components": [[1, 2], [3, 4]]})");
    rejects(j);
    j = base_problem();
    j["C1"]["components"] = json::array();
    rejects(j);
    j = base_problem();
    j["options"] = json::parse(R"({"samples": 0})");
    rejects(j);
    j = base_problem();
    j["geometry"] = json::parse(R"({"rve": {"kind": "torus"}, "inclusion": {"kind": "ball", "radius": 0.2}})");
    j.erase("rho2");
    j.erase("f");
    rejects(j);
}

TEST_CASE("shape JSON round trip preserves moments") {
    const json shapes = json::parse(R"([
        {"kind": "ball", "radius": 1.5, "center": [0.1, 0.2, 0.3]},
        {"kind": "ellipsoid", "semi_axes": [1, 2, 0.5]},
        {"kind": "box", "half_widths": [1, 0.5, 0.25]},
        {"kind": "composite", "parts": [
            {"sign": 1, "shape": {"kind": "ball", "radius": 2}},
            {"sign": -1, "shape": {"kind": "ball", "radius": 1}}]}
    ])");
    for (const json& s : shapes) {
        const ShapeSpec a = io::shape_from_json(s, Dim(3), "shape");
        const ShapeSpec b = io::shape_from_json(io::shape_to_json(a), Dim(3), "shape");
        const MassProperties ma = mass_properties(a), mb = mass_properties(b);
        CHECK(ma.volume == mb.volume);
        CHECK((ma.static_moment - mb.static_moment).norm() == 0.0);
        CHECK((ma.euler - mb.euler).norm() == 0.0);
    }
    CHECK_THROWS_AS(io::shape_from_json(json::parse(R"({"kind": "ball", "radius": -1})"), Dim(3), "s"), GeometryError);
    CHECK_THROWS_AS(io::shape_from_json(json::parse(R"({"kind": "polygon", "vertices": [[0,0],[1,0],[0,1]]})"),
                                        Dim(3), "s"),
                    SchemaError);
}

TEST_CASE("exit-code mapping") {
    CHECK(cli::exit_code_for(SchemaError("x")) == ExitCode::Schema);
    CHECK(cli::exit_code_for(DomainError("x")) == ExitCode::Schema);
    CHECK(cli::exit_code_for(GeometryError("x")) == ExitCode::Schema);
    CHECK(cli::exit_code_for(SymmetryError("x")) == ExitCode::Symmetry);
    CHECK(cli::exit_code_for(NotPositiveDefiniteError("x")) == ExitCode::NotPositive);
    CHECK(cli::exit_code_for(std::runtime_error("x")) == ExitCode::Usage);
    try {
        const json broken = json::parse("{");
        FAIL("parse succeeded: " << broken.dump());
    } catch (const json::exception& e) {
        CHECK(cli::exit_code_for(e) == ExitCode::Schema);
    }
}

TEST_CASE("homogenize: softening isotropic inclusions") {
    const cli::Outcome out = cli::cmd_homogenize(load("soft_spheres_3d.json"));
    CHECK(out.exit_code == ExitCode::Ok);
    const io::Report& r = out.report;
    REQUIRE(r.homogenization.has_value());
    CHECK(r.homogenization->pd_A);
    REQUIRE(r.homogenization->isotropic_a.has_value());
    const auto& C_tilde = r.homogenization->isotropic_C_tilde;
    REQUIRE(C_tilde.has_value());
    const auto a = isotropic_a_from_sol(C_tilde->lambda, C_tilde->mu, 0.05, 1.0, Dim(3));
    for (int k = 0; k < 5; ++k) CHECK((*r.homogenization->isotropic_a)[k] == a[k]);
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->passed);
    CHECK(r.certificate->samples == io::kDefaultSamples);
    CHECK(r.energy.size() == io::kDefaultSamples);
    CHECK(r.seed == io::kDefaultSeed);
    CHECK(r.warnings.empty());
    CHECK(r.notes == std::vector<std::string>{"first order only; o(f) remainder dropped"});
}

TEST_CASE("homogenize: zero sensitivity") {
    const cli::Outcome out = cli::cmd_homogenize(load("zero_sensitivity_3d.json"));
    CHECK(out.exit_code == ExitCode::Ok);
    CHECK(out.report.homogenization->A_eq.max_abs() == 0.0);
    for (const auto& e : out.report.energy) CHECK(e.mismatch_G == 0.0);
}

TEST_CASE("homogenize: preconditions") {
    json j = base_problem();
    j["C1"] = json::parse(R"({"isotropic": {"lambda": 1.0, "mu": -1.0}})");
    CHECK_THROWS_AS(cli::cmd_homogenize(j), NotPositiveDefiniteError);
    j = base_problem();
    j["f"] = 1.5;
    CHECK_THROWS_AS(cli::cmd_homogenize(j), DomainError);
    j = base_problem();
    j["f"] = 0.2;
    const cli::Outcome out = cli::cmd_homogenize(j);
    REQUIRE(out.report.warnings.size() == 1);
    CHECK(out.report.warnings[0].find("f = 0.2") != std::string::npos);
}

TEST_CASE("verify-energy: external zero nonlocal tensor fails certification") {
    const cli::Outcome out = cli::cmd_verify_energy(load("external_zero_A_3d.json"));
    CHECK(out.exit_code == ExitCode::Certification);
    CHECK_FALSE(out.report.certificate->passed);
    CHECK(out.report.certificate->max_mismatch_rel > 1e-3);
    // C_tilde is negative definite, so G = -2 Omega f rho^2 C_tilde..beta..beta > 0.
    for (const auto& e : out.report.energy) CHECK(e.mismatch_G > 0.0);
}

TEST_CASE("verify-energy: overrides and f-sweep") {
    const cli::Outcome few = cli::cmd_verify_energy(load("soft_spheres_3d.json"), {.samples = 3, .seed = 9});
    CHECK(few.report.energy.size() == 3);
    CHECK(few.report.seed == 9);

    const cli::Outcome sweep = cli::cmd_verify_energy(load("soft_spheres_geometry_3d.json"), {.samples = 4, .fsweep = true});
    CHECK(sweep.exit_code == ExitCode::Ok);
    REQUIRE(sweep.report.dilution.has_value());
    CHECK(sweep.report.dilution->monotone);
    CHECK(sweep.report.gp3->decays);
    CHECK(sweep.report.gp->gp1_ok);
    CHECK(sweep.report.gp->gp2_ok);

    const cli::Outcome hollow = cli::cmd_verify_energy(load("hollow_inclusion_3d.json"), {.samples = 4, .fsweep = true});
    CHECK_FALSE(hollow.report.gp3->decays);
    CHECK_FALSE(hollow.report.dilution->monotone);
    CHECK(hollow.report.warnings.size() == 2);

    CHECK_THROWS_AS(cli::cmd_verify_energy(load("soft_spheres_3d.json"), {.fsweep = true}), SchemaError);
}

TEST_CASE("geometry command") {
    const cli::Outcome disks = cli::cmd_geometry(load("disks_2d.json"));
    CHECK(disks.report.gp->gp1_ok);
    CHECK(disks.report.gp->gp2_ok);
    CHECK(disks.report.gp->f == doctest::Approx(0.04).epsilon(1e-14));

    const cli::Outcome off = cli::cmd_geometry(load("off_centre_2d.json"));
    CHECK_FALSE(off.report.gp->gp1_ok);
    CHECK(off.report.gp->gp1_defect > 0.0);

    const cli::Outcome fixed = cli::cmd_geometry(load("fixed_size_inclusion_2d.json"), {.fsweep = true});
    REQUIRE(fixed.report.gp3.has_value());
    CHECK_FALSE(fixed.report.gp3->decays);
    bool warned = false;
    for (const auto& w : fixed.report.warnings) warned = warned || w.find("does not vanish") != std::string::npos;
    CHECK(warned);

    json outside = load("disks_2d.json");
    outside["inclusion"]["center"] = {0.95, 0.0};
    CHECK_THROWS_AS(cli::cmd_geometry(outside), GeometryError);
}

TEST_CASE("check-pd command") {
    const cli::Outcome unit = cli::cmd_check_pd(load("a_unit_3d.json"));
    REQUIRE(unit.report.pd.has_value());
    const io::PdVerdict& v = *unit.report.pd;
    CHECK(v.definiteness == Definiteness::Positive);
    REQUIRE(v.mindlin_eshel.has_value());
    CHECK(v.mindlin_eshel->e1 == 6.0);
    CHECK(v.mindlin_eshel->e2 == 3.0);
    CHECK(v.mindlin_eshel->e3 == 0.0);
    CHECK(v.routes_agree == true);

    const cli::Outcome degenerate = cli::cmd_check_pd(load("a_degenerate_3d.json"));
    CHECK_FALSE(degenerate.report.pd->mindlin_eshel->positive_definite);
    CHECK(degenerate.report.pd->routes_agree == true);
    CHECK(degenerate.exit_code == ExitCode::Ok);

    const cli::Outcome c = cli::cmd_check_pd(load("c_isotropic_3d.json"));
    CHECK(c.report.pd->kind == "stiffness");
    CHECK(c.report.pd->lame_positive_definite == true);

    // Full components are classified by nesting depth.
    json full{{"version", 1}, {"dim", 2}, {"tensor", io::sge_to_json(make_isotropic_A({0, 0, 0, 1, 0}, Dim(2)))}};
    const cli::Outcome a2 = cli::cmd_check_pd(full);
    CHECK(a2.report.pd->kind == "nonlocal");
    CHECK_FALSE(a2.report.pd->routes_agree.has_value());
}

TEST_CASE("report round trip is bit-exact and output is deterministic") {
    for (const char* name : {"soft_spheres_3d.json", "stiff_fibres_2d.json", "soft_spheres_geometry_3d.json"}) {
        const json input = load(name);
        const json first = io::to_json(cli::cmd_verify_energy(input, {.samples = 5, .fsweep = input.contains("geometry")}).report);
        const json second = io::to_json(cli::cmd_verify_energy(input, {.samples = 5, .fsweep = input.contains("geometry")}).report);
        CHECK(io::dump(first) == io::dump(second));

        const json reparsed = json::parse(io::dump(first));
        const io::Report back = io::report_from_json(reparsed);
        CHECK(io::dump(io::to_json(back)) == io::dump(first));
        REQUIRE(back.homogenization.has_value());
        const cli::Outcome fresh = cli::cmd_verify_energy(input, {.samples = 5});
        const auto a = back.homogenization->A_eq.components();
        const auto b = fresh.report.homogenization->A_eq.components();
        CHECK(std::equal(a.begin(), a.end(), b.begin()));
        CHECK(back.energy.size() == 5);
    }
    const json pd = io::to_json(cli::cmd_check_pd(load("a_unit_3d.json")).report);
    CHECK(io::dump(io::to_json(io::report_from_json(pd))) == io::dump(pd));
}

TEST_CASE("command-line tool exit codes and byte-stable output") {
    const auto dir = std::filesystem::temp_directory_path() / "sgehom_cli_test";
    std::filesystem::create_directories(dir);
    const std::string ex = kExamples.string() + "/";
    const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string(), c = (dir / "c.json").string();

    CHECK(run_cli("homogenize --input " + ex + "soft_spheres_3d.json --output " + a) == 0);
    CHECK(run_cli("homogenize --input " + ex + "soft_spheres_3d.json --output " + b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(run_cli("homogenize --input " + ex + "soft_spheres_3d.json --seed 7 --output " + c) == 0);
    CHECK(slurp(a) != slurp(c));

    CHECK(run_cli("homogenize --input " + ex + "malformed_tensor_3d.json --output " + c) == 3);
    CHECK(run_cli("verify-energy --input " + ex + "external_zero_A_3d.json --output " + c) == 5);
    CHECK(run_cli("verify-energy --input " + ex + "soft_spheres_geometry_3d.json --fsweep --samples 3 --output " + c) == 0);
    CHECK(run_cli("geometry --input " + ex + "disks_2d.json --output " + c) == 0);
    CHECK(run_cli("check-pd --input " + ex + "a_unit_3d.json --output " + c) == 0);
    CHECK(run_cli("homogenize --input " + ex + "disks_2d.json --output " + c) == 2);
    CHECK(run_cli("homogenize --input " + (dir / "missing.json").string()) == 1);
    CHECK(run_cli("frobnicate") == 1);

    std::ofstream(dir / "indefinite.json") << R"({"version": 1, "dim": 2,
        "C1": {"isotropic": {"lambda": 1, "mu": -1}}, "f": 0.05, "rho2": 1,
        "C_tilde": {"isotropic": {"lambda": 0, "mu": 0}}})";
    CHECK(run_cli("homogenize --input " + (dir / "indefinite.json").string() + " --output " + c) == 4);
    std::ofstream(dir / "broken.json") << "{ not json";
    CHECK(run_cli("homogenize --input " + (dir / "broken.json").string() + " --output " + c) == 2);
    std::filesystem::remove_all(dir);
}
