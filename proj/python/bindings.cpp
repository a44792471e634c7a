// Python extension module sgehom._core.

#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sgehom/commands.hpp"
#include "sgehom/error.hpp"
#include "sgehom/geometry.hpp"
#include "sgehom/homog.hpp"

namespace py = pybind11;
using namespace sgehom;

namespace {

using Command = cli::Outcome (*)(const io::json&, const cli::Overrides&);

Command lookup(const std::string& name) {
    if (name == "homogenize") return &cli::cmd_homogenize;
    if (name == "geometry") return &cli::cmd_geometry;
    if (name == "check-pd") return &cli::cmd_check_pd;
    if (name == "verify-energy") return &cli::cmd_verify_energy;
    throw py::value_error("unknown command: " + name);
}

std::pair<std::string, int> run(const std::string& command, const std::string& input, std::optional<int> samples,
                                std::optional<std::uint64_t> seed, std::optional<double> tol, bool fsweep) {
    const Command cmd = lookup(command);
    const io::json parsed = [&] {
        try {
            return io::json::parse(input);
        } catch (const io::json::exception& e) {
            throw SchemaError(std::string("malformed JSON: ") + e.what());
        }
    }();
    cli::Outcome out;
    {
        py::gil_scoped_release release;
        out = cmd(parsed, {.samples = samples, .seed = seed, .tol = tol, .fsweep = fsweep});
    }
    return {io::dump(io::to_json(out.report)), static_cast<int>(out.exit_code)};
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Effective second-gradient elasticity of dilute two-phase composites";
    m.attr("__version__") = cli::kVersion;
    m.attr("DEFAULT_SEED") = io::kDefaultSeed;
    m.attr("DEFAULT_SAMPLES") = io::kDefaultSamples;

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<SymmetryError>(m, "SymmetryError", base.ptr());
    py::register_exception<NotPositiveDefiniteError>(m, "NotPositiveDefiniteError", base.ptr());
    py::register_exception<GeometryError>(m, "GeometryError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<SchemaError>(m, "SchemaError", base.ptr());

    m.def("run", &run, py::arg("command"), py::arg("input"), py::arg("samples") = py::none(),
          py::arg("seed") = py::none(), py::arg("tol") = py::none(), py::arg("fsweep") = false,
          "Run a command on a JSON document; returns (report JSON, exit code).");

    m.def(
        "isotropic_a",
        [](double lambda_t, double mu_t, double f, double rho2, int dim) {
            return isotropic_a_from_sol(lambda_t, mu_t, f, rho2, Dim(dim));
        },
        py::arg("lambda_t"), py::arg("mu_t"), py::arg("f"), py::arg("rho2"), py::arg("dim") = 3,
        "Isotropic constants a1..a5 of the effective nonlocal tensor for an isotropic sensitivity.");

    m.def(
        "mindlin_eshel",
        [](const std::array<double, 5>& a) {
            const MindlinEshel me = mindlin_eshel(a);
            py::dict d;
            d["e1"] = me.e1;
            d["e2"] = me.e2;
            d["e3"] = me.e3;
            d["positive_definite"] = me.positive_definite;
            return d;
        },
        py::arg("a"), "Closed-form positive-definiteness test of an isotropic nonlocal tensor in 3D.");

    m.def("lame_positive_definite", [](double lambda, double mu, int dim) {
        return lame_positive_definite(lambda, mu, Dim(dim));
    }, py::arg("lambda_"), py::arg("mu"), py::arg("dim") = 3);

    m.def(
        "ball_rho2", [](int dim, double radius) { return *mass_properties(make_ball(Dim(dim), radius)).rho2; },
        py::arg("dim"), py::arg("radius"), "Squared polar radius of gyration of a ball or disk.");
}
