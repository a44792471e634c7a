#include "sgehom/io.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <set>

namespace sgehom::io {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
    throw SchemaError(where + ": " + what);
}

std::string join(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }

const json& require_object(const json& j, const std::string& where) {
    if (!j.is_object()) schema(where, "expected an object");
    return j;
}

void allow_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items())
        if (!allowed.contains(k)) schema(where, "unknown key \"" + k + "\"");
}

const json& member(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) schema(where, std::string("missing key \"") + key + "\"");
    return j.at(key);
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) schema(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) schema(where, "expected a finite number");
    return v;
}

double number_at(const json& j, const char* key, const std::string& where) {
    return number(member(j, key, where), join(where, key));
}

std::optional<double> optional_number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) return std::nullopt;
    return number(j.at(key), join(where, key));
}

std::int64_t integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) schema(where, "expected an integer");
    return j.get<std::int64_t>();
}

Eigen::VectorXd vector_of(const json& j, int n, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) schema(where, "expected an array of " + std::to_string(n) + " numbers");
    Eigen::VectorXd v(n);
    for (int k = 0; k < n; ++k) v(k) = number(j[k], where + "[" + std::to_string(k) + "]");
    return v;
}

/// Flattens a nested array of the given depth whose every level has length n.
std::vector<double> flatten(const json& j, int n, int depth, const std::string& where) {
    std::vector<double> out;
    std::function<void(const json&, int, const std::string&)> rec = [&](const json& node, int level,
                                                                         const std::string& path) {
        if (level == depth) {
            out.push_back(number(node, path));
            return;
        }
        if (!node.is_array() || static_cast<int>(node.size()) != n)
            schema(path, "expected a nested array of depth " + std::to_string(depth) + " with " + std::to_string(n) +
                             " entries per level");
        for (int k = 0; k < n; ++k) rec(node[k], level + 1, path + "[" + std::to_string(k) + "]");
    };
    rec(j, 0, where);
    return out;
}

template <std::size_t Order>
json nest(const detail::DenseStorage<Order>& t) {
    const int n = t.dim().n();
    const auto c = t.components();
    std::function<json(int, std::size_t)> rec = [&](int level, std::size_t offset) {
        json arr = json::array();
        std::size_t stride = 1;
        for (std::size_t k = static_cast<std::size_t>(level) + 1; k < Order; ++k) stride *= static_cast<std::size_t>(n);
        for (int k = 0; k < n; ++k) {
            const std::size_t o = offset + static_cast<std::size_t>(k) * stride;
            arr.push_back(level + 1 == static_cast<int>(Order) ? json(c[o]) : rec(level + 1, o));
        }
        return arr;
    };
    return rec(0, 0);
}

/// Depth and leading length of a nested array.
std::pair<int, int> nesting(const json& j) {
    int depth = 0;
    const json* node = &j;
    const int n = j.is_array() ? static_cast<int>(j.size()) : 0;
    while (node->is_array() && !node->empty()) {
        ++depth;
        node = &(*node)[0];
    }
    return {depth, n};
}

Dim dim_from_json(const json& j, const std::string& where) {
    const auto n = integer(j, where);
    if (n != 2 && n != 3) schema(where, "dim must be 2 or 3");
    return Dim(static_cast<int>(n));
}

void check_version(const json& j, const std::string& where) {
    const auto v = integer(member(j, "version", where), join(where, "version"));
    if (v != kFormatVersion) schema(join(where, "version"), "unsupported version " + std::to_string(v));
}

template <class F>
auto with_prefix(const std::string& where, F&& f) {
    try {
        return f();
    } catch (const SymmetryError& e) {
        throw SymmetryError(where + ": " + e.what());
    } catch (const GeometryError& e) {
        throw GeometryError(where + ": " + e.what());
    }
}

Eigen::MatrixXd matrix_of(const json& j, int n, const std::string& where) {
    const auto flat = flatten(j, n, 2, where);
    Eigen::MatrixXd m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = flat[static_cast<std::size_t>(r * n + c)];
    return m;
}

json vector_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v(k));
    return a;
}

Definiteness definiteness_from_string(const std::string& s, const std::string& where) {
    for (Definiteness d : {Definiteness::Positive, Definiteness::Borderline, Definiteness::NotPositive})
        if (s == to_string(d)) return d;
    schema(where, "unknown definiteness \"" + s + "\"");
}

std::vector<std::string> strings(const json& j) { return j.get<std::vector<std::string>>(); }

} // namespace

// -- tensors -----------------------------------------------------------------------------

json nested_components(const Tensor4Elastic& C) { return nest(C); }
json nested_components(const Tensor6SGE& A) { return nest(A); }

Tensor4Elastic elastic_from_json(const json& j, Dim d, const std::string& where) {
    require_object(j, where);
    allow_keys(j, {"isotropic", "components"}, where);
    if (j.contains("isotropic") == j.contains("components"))
        schema(where, "exactly one of \"isotropic\" and \"components\" is required");
    if (j.contains("isotropic")) {
        const std::string w = join(where, "isotropic");
        const json& iso = require_object(j.at("isotropic"), w);
        allow_keys(iso, {"lambda", "mu"}, w);
        return make_isotropic_C(number_at(iso, "lambda", w), number_at(iso, "mu", w), d);
    }
    const std::string w = join(where, "components");
    const auto flat = flatten(j.at("components"), d.n(), 4, w);
    return with_prefix(w, [&] { return Tensor4Elastic::from_full(d, flat, kLoadSymmetryRelTol); });
}

json elastic_to_json(const Tensor4Elastic& C) { return json{{"components", nest(C)}}; }

Tensor6SGE sge_from_json(const json& j, Dim d, const std::string& where) {
    require_object(j, where);
    allow_keys(j, {"isotropic_a", "components"}, where);
    if (j.contains("isotropic_a") == j.contains("components"))
        schema(where, "exactly one of \"isotropic_a\" and \"components\" is required");
    if (j.contains("isotropic_a")) {
        const Eigen::VectorXd a = vector_of(j.at("isotropic_a"), 5, join(where, "isotropic_a"));
        return make_isotropic_A({a(0), a(1), a(2), a(3), a(4)}, d);
    }
    const std::string w = join(where, "components");
    const auto flat = flatten(j.at("components"), d.n(), 6, w);
    return with_prefix(w, [&] { return Tensor6SGE::from_full(d, flat, kLoadSymmetryRelTol); });
}

json sge_to_json(const Tensor6SGE& A) { return json{{"components", nest(A)}}; }

// -- shapes ------------------------------------------------------------------------------

namespace {

ShapeSpec build_shape(const json& j, Dim d, const std::string& where) {
    require_object(j, where);
    const json& kind_j = member(j, "kind", where);
    if (!kind_j.is_string()) schema(join(where, "kind"), "expected a string");
    const std::string kind = kind_j.get<std::string>();
    const int n = d.n();
    const auto center = [&] {
        return j.contains("center") ? vector_of(j.at("center"), n, join(where, "center")) : Eigen::VectorXd::Zero(n).eval();
    };

    if (kind == "ball") {
        allow_keys(j, {"kind", "radius", "center"}, where);
        return make_ball(d, number_at(j, "radius", where), center());
    }
    if (kind == "ellipsoid") {
        allow_keys(j, {"kind", "semi_axes", "center", "rotation"}, where);
        const Eigen::MatrixXd rot = j.contains("rotation") ? matrix_of(j.at("rotation"), n, join(where, "rotation"))
                                                           : Eigen::MatrixXd::Identity(n, n).eval();
        return make_ellipsoid(d, vector_of(member(j, "semi_axes", where), n, join(where, "semi_axes")), center(), rot);
    }
    if (kind == "box") {
        allow_keys(j, {"kind", "half_widths", "center"}, where);
        return make_box(d, vector_of(member(j, "half_widths", where), n, join(where, "half_widths")), center());
    }
    if (kind == "polygon") {
        allow_keys(j, {"kind", "vertices"}, where);
        if (n != 2) schema(where, "polygons require dim 2");
        const json& vs = member(j, "vertices", where);
        if (!vs.is_array()) schema(join(where, "vertices"), "expected an array");
        std::vector<Eigen::Vector2d> verts;
        for (std::size_t k = 0; k < vs.size(); ++k)
            verts.emplace_back(vector_of(vs[k], 2, join(where, "vertices") + "[" + std::to_string(k) + "]"));
        return make_polygon(std::move(verts));
    }
    if (kind == "polyhedron") {
        allow_keys(j, {"kind", "vertices", "faces"}, where);
        if (n != 3) schema(where, "polyhedra require dim 3");
        const json& vs = member(j, "vertices", where);
        const json& fs = member(j, "faces", where);
        if (!vs.is_array()) schema(join(where, "vertices"), "expected an array");
        if (!fs.is_array()) schema(join(where, "faces"), "expected an array");
        std::vector<Eigen::Vector3d> verts;
        for (std::size_t k = 0; k < vs.size(); ++k)
            verts.emplace_back(vector_of(vs[k], 3, join(where, "vertices") + "[" + std::to_string(k) + "]"));
        std::vector<std::vector<int>> faces;
        for (std::size_t k = 0; k < fs.size(); ++k) {
            const std::string w = join(where, "faces") + "[" + std::to_string(k) + "]";
            if (!fs[k].is_array()) schema(w, "expected an array of vertex indices");
            std::vector<int> face;
            for (const json& idx : fs[k]) face.push_back(static_cast<int>(integer(idx, w)));
            faces.push_back(std::move(face));
        }
        return make_polyhedron(std::move(verts), std::move(faces));
    }
    if (kind == "composite") {
        allow_keys(j, {"kind", "parts"}, where);
        const json& ps = member(j, "parts", where);
        if (!ps.is_array()) schema(join(where, "parts"), "expected an array");
        std::vector<SignedPart> parts;
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const std::string w = join(where, "parts") + "[" + std::to_string(k) + "]";
            require_object(ps[k], w);
            allow_keys(ps[k], {"sign", "shape"}, w);
            const auto sign = integer(member(ps[k], "sign", w), join(w, "sign"));
            if (sign != 1 && sign != -1) schema(join(w, "sign"), "sign must be +1 or -1");
            parts.push_back({build_shape(member(ps[k], "shape", w), d, join(w, "shape")), static_cast<int>(sign)});
        }
        return make_composite(d, std::move(parts));
    }
    schema(join(where, "kind"), "unknown shape kind \"" + kind + "\"");
}

} // namespace

ShapeSpec shape_from_json(const json& j, Dim d, const std::string& where) {
    return with_prefix(where, [&] {
        ShapeSpec s = build_shape(j, d, where);
        validate(s);
        return s;
    });
}

json shape_to_json(const ShapeSpec& s) {
    return std::visit(
        [&](const auto& k) -> json {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, Ball>) {
                return {{"kind", "ball"}, {"radius", k.radius}, {"center", vector_json(k.center)}};
            } else if constexpr (std::is_same_v<K, Ellipsoid>) {
                json rot = json::array();
                for (Eigen::Index r = 0; r < k.rotation.rows(); ++r) rot.push_back(vector_json(k.rotation.row(r).transpose()));
                return {{"kind", "ellipsoid"},
                        {"semi_axes", vector_json(k.semi_axes)},
                        {"center", vector_json(k.center)},
                        {"rotation", rot}};
            } else if constexpr (std::is_same_v<K, Polygon>) {
                json vs = json::array();
                for (const auto& v : k.vertices) vs.push_back({v(0), v(1)});
                return {{"kind", "polygon"}, {"vertices", vs}};
            } else if constexpr (std::is_same_v<K, Polyhedron>) {
                json vs = json::array();
                for (const auto& v : k.vertices) vs.push_back({v(0), v(1), v(2)});
                return {{"kind", "polyhedron"}, {"vertices", vs}, {"faces", k.faces}};
            } else {
                json parts = json::array();
                for (const auto& p : k.parts) parts.push_back({{"sign", p.sign}, {"shape", shape_to_json(p.shape)}});
                return {{"kind", "composite"}, {"parts", parts}};
            }
        },
        s.kind);
}

InclusionFamily family_from_string(const std::string& s) {
    if (s == "scale") return InclusionFamily::Scale;
    if (s == "hollow") return InclusionFamily::Hollow;
    throw SchemaError("geometry.family: expected \"scale\" or \"hollow\", got \"" + s + "\"");
}

const char* to_string(InclusionFamily f) { return f == InclusionFamily::Scale ? "scale" : "hollow"; }

// -- problem file ------------------------------------------------------------------------

namespace {

GeometrySpec geometry_from_json(const json& j, Dim d, const std::string& where, std::initializer_list<const char*> keys) {
    require_object(j, where);
    allow_keys(j, keys, where);
    GeometrySpec g{shape_from_json(member(j, "rve", where), d, join(where, "rve")),
                   shape_from_json(member(j, "inclusion", where), d, join(where, "inclusion")),
                   InclusionFamily::Scale};
    if (j.contains("family")) {
        if (!j.at("family").is_string()) schema(join(where, "family"), "expected a string");
        g.family = family_from_string(j.at("family").get<std::string>());
    }
    return g;
}

} // namespace

ProblemFile problem_from_json(const json& j) {
    require_object(j, "problem");
    allow_keys(j,
               {"version", "dim", "C1", "C2", "f", "rho2", "rho2_inclusion", "geometry", "C_eq", "C_tilde", "A",
                "options"},
               "problem");
    check_version(j, "");
    const Dim d = dim_from_json(member(j, "dim", "problem"), "dim");

    ProblemFile p{.dim = d, .C1 = elastic_from_json(member(j, "C1", "problem"), d, "C1")};
    if (j.contains("C2")) p.C2 = elastic_from_json(j.at("C2"), d, "C2");

    if (j.contains("C_eq") == j.contains("C_tilde")) schema("problem", "exactly one of \"C_eq\" and \"C_tilde\" is required");
    if (j.contains("C_eq")) p.C_eq = elastic_from_json(j.at("C_eq"), d, "C_eq");
    if (j.contains("C_tilde")) p.C_tilde = elastic_from_json(j.at("C_tilde"), d, "C_tilde");

    if (j.contains("rho2") == j.contains("geometry")) schema("problem", "exactly one of \"rho2\" and \"geometry\" is required");
    if (j.contains("geometry")) {
        if (j.contains("f")) schema("problem", "\"f\" is computed from \"geometry\" and must not be given");
        if (j.contains("rho2_inclusion"))
            schema("problem", "\"rho2_inclusion\" is computed from \"geometry\" and must not be given");
        p.geometry = geometry_from_json(j.at("geometry"), d, "geometry", {"rve", "inclusion", "family"});
    } else {
        p.f = number_at(j, "f", "problem");
        p.rho2 = number(j.at("rho2"), "rho2");
        p.rho2_inclusion = optional_number(j, "rho2_inclusion", "problem");
    }
    if (j.contains("A")) p.A = sge_from_json(j.at("A"), d, "A");

    if (j.contains("options")) {
        const json& o = require_object(j.at("options"), "options");
        allow_keys(o, {"tolerances", "seed", "omega", "c_hat", "samples"}, "options");
        if (o.contains("tolerances")) {
            const json& t = require_object(o.at("tolerances"), "options.tolerances");
            allow_keys(t, {"gp", "certify"}, "options.tolerances");
            p.options.gp_tol = optional_number(t, "gp", "options.tolerances");
            if (t.contains("certify")) p.options.certify_tol = number(t.at("certify"), "options.tolerances.certify");
        }
        if (o.contains("seed")) {
            if (!o.at("seed").is_number_unsigned()) schema("options.seed", "expected a non-negative integer");
            p.options.seed = o.at("seed").get<std::uint64_t>();
        }
        if (o.contains("omega")) p.options.omega = number(o.at("omega"), "options.omega");
        if (o.contains("c_hat")) p.options.c_hat = elastic_from_json(o.at("c_hat"), d, "options.c_hat");
        if (o.contains("samples")) {
            const auto s = integer(o.at("samples"), "options.samples");
            if (s < 1) schema("options.samples", "must be at least 1");
            p.options.samples = static_cast<int>(s);
        }
    }
    return p;
}

ShapesFile shapes_from_json(const json& j) {
    require_object(j, "shapes");
    allow_keys(j, {"version", "dim", "rve", "inclusion", "family", "tol"}, "shapes");
    check_version(j, "");
    const Dim d = dim_from_json(member(j, "dim", "shapes"), "dim");
    json g = json::object();
    for (const char* k : {"rve", "inclusion", "family"})
        if (j.contains(k)) g[k] = j.at(k);
    return ShapesFile{geometry_from_json(g, d, "", {"rve", "inclusion", "family"}), optional_number(j, "tol", "shapes")};
}

TensorFile tensor_file_from_json(const json& j) {
    require_object(j, "tensor file");
    allow_keys(j, {"version", "dim", "tensor"}, "tensor file");
    check_version(j, "");
    const Dim d = dim_from_json(member(j, "dim", "tensor file"), "dim");
    const json& t = require_object(member(j, "tensor", "tensor file"), "tensor");
    TensorFile out{.dim = d};
    if (t.contains("isotropic")) {
        out.C = elastic_from_json(t, d, "tensor");
        const json& iso = t.at("isotropic");
        out.lame = std::array<double, 2>{iso.at("lambda").get<double>(), iso.at("mu").get<double>()};
    } else if (t.contains("isotropic_a")) {
        out.A = sge_from_json(t, d, "tensor");
        const Eigen::VectorXd a = vector_of(t.at("isotropic_a"), 5, "tensor.isotropic_a");
        out.isotropic_a = std::array<double, 5>{a(0), a(1), a(2), a(3), a(4)};
    } else if (t.contains("components")) {
        const int depth = nesting(t.at("components")).first;
        if (depth == 4) out.C = elastic_from_json(t, d, "tensor");
        else if (depth == 6) out.A = sge_from_json(t, d, "tensor");
        else schema("tensor.components", "expected a nested array of depth 4 or 6");
    } else {
        schema("tensor", "expected \"isotropic\", \"isotropic_a\" or \"components\"");
    }
    return out;
}

// -- report ------------------------------------------------------------------------------

json to_json(const GPReport& r) {
    return {{"gp1_ok", r.gp1_ok},
            {"gp1_defect", r.gp1_defect},
            {"gp2_ok", r.gp2_ok},
            {"gp2_defect", r.gp2_defect},
            {"rho_matrix", r.rho_matrix},
            {"rho_inclusion", r.rho_inclusion},
            {"rho_rve", r.rho_rve},
            {"f", r.f},
            {"volume_rve", r.volume_rve},
            {"volume_inclusion", r.volume_inclusion},
            {"rho_identity_residual", r.rho_identity_residual},
            {"gp3_ratio", r.gp3_ratio},
            {"tol", r.tol}};
}

GPReport gp_report_from_json(const json& j) {
    GPReport r;
    r.gp1_ok = j.at("gp1_ok").get<bool>();
    r.gp1_defect = j.at("gp1_defect").get<double>();
    r.gp2_ok = j.at("gp2_ok").get<bool>();
    r.gp2_defect = j.at("gp2_defect").get<double>();
    r.rho_matrix = j.at("rho_matrix").get<double>();
    r.rho_inclusion = j.at("rho_inclusion").get<double>();
    r.rho_rve = j.at("rho_rve").get<double>();
    r.f = j.at("f").get<double>();
    r.volume_rve = j.at("volume_rve").get<double>();
    r.volume_inclusion = j.at("volume_inclusion").get<double>();
    r.rho_identity_residual = j.at("rho_identity_residual").get<double>();
    r.gp3_ratio = j.at("gp3_ratio").get<double>();
    r.tol = j.at("tol").get<double>();
    return r;
}

json to_json(const HomogenizationResult& r) {
    json j{{"A_eq", sge_to_json(r.A_eq)},
           {"C_tilde", elastic_to_json(r.C_tilde)},
           {"pd_A", r.pd_A},
           {"definiteness_A", to_string(r.definiteness_A)},
           {"eig_min_A", r.eig_min_A},
           {"eig_min_neg_C_tilde", r.eig_min_neg_C_tilde},
           {"c_tilde_negative_definite", r.c_tilde_negative_definite}};
    if (r.isotropic_C_tilde)
        j["isotropic_C_tilde"] = {{"lambda", r.isotropic_C_tilde->lambda},
                                  {"mu", r.isotropic_C_tilde->mu},
                                  {"residual", r.isotropic_C_tilde->residual}};
    if (r.isotropic_a) j["isotropic_a"] = *r.isotropic_a;
    return j;
}

HomogenizationResult homogenization_from_json(const json& j, Dim d) {
    HomogenizationResult r{.A_eq = sge_from_json(j.at("A_eq"), d, "homogenization.A_eq"),
                           .C_tilde = elastic_from_json(j.at("C_tilde"), d, "homogenization.C_tilde")};
    r.pd_A = j.at("pd_A").get<bool>();
    r.definiteness_A = definiteness_from_string(j.at("definiteness_A").get<std::string>(), "definiteness_A");
    r.eig_min_A = j.at("eig_min_A").get<double>();
    r.eig_min_neg_C_tilde = j.at("eig_min_neg_C_tilde").get<double>();
    r.c_tilde_negative_definite = j.at("c_tilde_negative_definite").get<bool>();
    if (j.contains("isotropic_C_tilde")) {
        const json& f = j.at("isotropic_C_tilde");
        r.isotropic_C_tilde =
            IsotropicFit{f.at("lambda").get<double>(), f.at("mu").get<double>(), f.at("residual").get<double>()};
    }
    if (j.contains("isotropic_a")) r.isotropic_a = j.at("isotropic_a").get<std::array<double, 5>>();
    return r;
}

json to_json(const EnergyReport& r) {
    json j{{"omega", r.omega},
           {"W_rve_beta", r.W_rve_beta},
           {"W_sge_beta", r.W_sge_beta},
           {"mismatch_G", r.mismatch_G},
           {"mismatch_rel", r.mismatch_rel},
           {"W_rve_per_omega", r.W_rve_per_omega},
           {"W_sge_per_omega", r.W_sge_per_omega},
           {"mismatch_G_per_omega", r.mismatch_G_per_omega},
           {"sandwich_ok", r.sandwich_ok},
           {"sandwich_asserted", r.sandwich_asserted},
           {"notes", r.notes}};
    if (r.ub) j["ub"] = *r.ub;
    if (r.lb) j["lb"] = *r.lb;
    if (r.rve_ub) j["rve_ub"] = *r.rve_ub;
    if (r.rve_lb) j["rve_lb"] = *r.rve_lb;
    return j;
}

EnergyReport energy_report_from_json(const json& j) {
    EnergyReport r;
    r.omega = j.at("omega").get<double>();
    r.W_rve_beta = j.at("W_rve_beta").get<double>();
    r.W_sge_beta = j.at("W_sge_beta").get<double>();
    r.mismatch_G = j.at("mismatch_G").get<double>();
    r.mismatch_rel = j.at("mismatch_rel").get<double>();
    r.W_rve_per_omega = j.at("W_rve_per_omega").get<double>();
    r.W_sge_per_omega = j.at("W_sge_per_omega").get<double>();
    r.mismatch_G_per_omega = j.at("mismatch_G_per_omega").get<double>();
    r.sandwich_ok = j.at("sandwich_ok").get<bool>();
    r.sandwich_asserted = j.at("sandwich_asserted").get<bool>();
    r.notes = strings(j.at("notes"));
    for (auto [key, field] : {std::pair{"ub", &r.ub}, {"lb", &r.lb}, {"rve_ub", &r.rve_ub}, {"rve_lb", &r.rve_lb}})
        if (j.contains(key)) *field = j.at(key).get<double>();
    return r;
}

json to_json(const MindlinEshel& m) {
    return {{"e1", m.e1},
            {"e2", m.e2},
            {"e3", m.e3},
            {"a5_window", m.a5_window},
            {"e1_positive", m.e1_positive},
            {"e2_positive", m.e2_positive},
            {"e3_bound", m.e3_bound},
            {"positive_definite", m.positive_definite}};
}

MindlinEshel mindlin_eshel_from_json(const json& j) {
    MindlinEshel m;
    m.e1 = j.at("e1").get<double>();
    m.e2 = j.at("e2").get<double>();
    m.e3 = j.at("e3").get<double>();
    m.a5_window = j.at("a5_window").get<bool>();
    m.e1_positive = j.at("e1_positive").get<bool>();
    m.e2_positive = j.at("e2_positive").get<bool>();
    m.e3_bound = j.at("e3_bound").get<bool>();
    m.positive_definite = j.at("positive_definite").get<bool>();
    return m;
}

namespace {

json to_json(const Certificate& c) {
    return {{"tol", c.tol},
            {"samples", c.samples},
            {"max_mismatch_rel", c.max_mismatch_rel},
            {"sandwich_ok", c.sandwich_ok},
            {"passed", c.passed}};
}

Certificate certificate_from_json(const json& j) {
    return Certificate{j.at("tol").get<double>(), j.at("samples").get<int>(), j.at("max_mismatch_rel").get<double>(),
                       j.at("sandwich_ok").get<bool>(), j.at("passed").get<bool>()};
}

json to_json(const Gp3Sweep& s) {
    json pts = json::array();
    for (const auto& p : s.points)
        pts.push_back({{"f", p.f}, {"rho_inclusion", p.rho_inclusion}, {"rho_rve", p.rho_rve}, {"ratio", p.ratio}});
    return {{"points", pts}, {"slope", s.slope}, {"decays", s.decays}, {"skipped", s.skipped}};
}

Gp3Sweep gp3_from_json(const json& j) {
    Gp3Sweep s;
    for (const json& p : j.at("points"))
        s.points.push_back({p.at("f").get<double>(), p.at("rho_inclusion").get<double>(), p.at("rho_rve").get<double>(),
                            p.at("ratio").get<double>()});
    s.slope = j.at("slope").get<double>();
    s.decays = j.at("decays").get<bool>();
    s.skipped = strings(j.at("skipped"));
    return s;
}

json to_json(const DilutionSweep& s) {
    json pts = json::array();
    for (const auto& p : s.points)
        pts.push_back({{"f", p.point.f},
                       {"rho2", p.point.rho2},
                       {"rho2_inclusion", p.point.rho2_inclusion},
                       {"max_mismatch_rel", p.max_mismatch_rel},
                       {"rve_gap", p.rve_gap},
                       {"rve_gap_over_f", p.rve_gap_over_f},
                       {"sandwich_ok", p.sandwich_ok}});
    return {{"points", pts}, {"gap_over_f_slope", s.gap_over_f_slope}, {"monotone", s.monotone}};
}

DilutionSweep dilution_from_json(const json& j) {
    DilutionSweep s;
    for (const json& p : j.at("points")) {
        DilutionSweepPoint q;
        q.point = {p.at("f").get<double>(), p.at("rho2").get<double>(), p.at("rho2_inclusion").get<double>()};
        q.max_mismatch_rel = p.at("max_mismatch_rel").get<double>();
        q.rve_gap = p.at("rve_gap").get<double>();
        q.rve_gap_over_f = p.at("rve_gap_over_f").get<double>();
        q.sandwich_ok = p.at("sandwich_ok").get<bool>();
        s.points.push_back(q);
    }
    s.gap_over_f_slope = j.at("gap_over_f_slope").get<double>();
    s.monotone = j.at("monotone").get<bool>();
    return s;
}

json to_json(const PdVerdict& v) {
    json j{{"kind", v.kind},
           {"eig_min", v.eig_min},
           {"norm", v.norm},
           {"definiteness", to_string(v.definiteness)},
           {"positive_definite", v.definiteness == Definiteness::Positive}};
    if (v.lame_positive_definite) j["lame_positive_definite"] = *v.lame_positive_definite;
    if (v.mindlin_eshel) j["mindlin_eshel"] = io::to_json(*v.mindlin_eshel);
    if (v.routes_agree) j["routes_agree"] = *v.routes_agree;
    return j;
}

PdVerdict pd_from_json(const json& j) {
    PdVerdict v;
    v.kind = j.at("kind").get<std::string>();
    v.eig_min = j.at("eig_min").get<double>();
    v.norm = j.at("norm").get<double>();
    v.definiteness = definiteness_from_string(j.at("definiteness").get<std::string>(), "pd.definiteness");
    if (j.contains("lame_positive_definite")) v.lame_positive_definite = j.at("lame_positive_definite").get<bool>();
    if (j.contains("mindlin_eshel")) v.mindlin_eshel = mindlin_eshel_from_json(j.at("mindlin_eshel"));
    if (j.contains("routes_agree")) v.routes_agree = j.at("routes_agree").get<bool>();
    return v;
}

/// Dimension of a stored nonlocal tensor, read from its nesting.
Dim stored_dim(const json& homogenization) {
    return Dim(nesting(homogenization.at("A_eq").at("components")).second);
}

} // namespace

json to_json(const Report& r) {
    json j{{"tool", {{"name", r.tool}, {"version", r.version}}},
           {"command", r.command},
           {"seed", r.seed},
           {"input", r.input},
           {"warnings", r.warnings},
           {"notes", r.notes}};
    if (r.gp) j["gp"] = to_json(*r.gp);
    if (r.homogenization) j["homogenization"] = to_json(*r.homogenization);
    if (!r.energy.empty()) {
        json e = json::array();
        for (const auto& x : r.energy) e.push_back(to_json(x));
        j["energy"] = e;
    }
    if (r.certificate) j["certificate"] = to_json(*r.certificate);
    if (r.gp3) j["gp3"] = to_json(*r.gp3);
    if (r.dilution) j["dilution"] = to_json(*r.dilution);
    if (r.pd) j["pd"] = to_json(*r.pd);
    return j;
}

Report report_from_json(const json& j) {
    Report r;
    r.tool = j.at("tool").at("name").get<std::string>();
    r.version = j.at("tool").at("version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.input = j.at("input");
    r.warnings = strings(j.at("warnings"));
    r.notes = strings(j.at("notes"));
    if (j.contains("gp")) r.gp = gp_report_from_json(j.at("gp"));
    if (j.contains("homogenization"))
        r.homogenization = homogenization_from_json(j.at("homogenization"), stored_dim(j.at("homogenization")));
    if (j.contains("energy"))
        for (const json& e : j.at("energy")) r.energy.push_back(energy_report_from_json(e));
    if (j.contains("certificate")) r.certificate = certificate_from_json(j.at("certificate"));
    if (j.contains("gp3")) r.gp3 = gp3_from_json(j.at("gp3"));
    if (j.contains("dilution")) r.dilution = dilution_from_json(j.at("dilution"));
    if (j.contains("pd")) r.pd = pd_from_json(j.at("pd"));
    return r;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace sgehom::io
