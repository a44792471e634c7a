#include "sgehom/geometry.hpp"
#include "sgehom/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace sgehom {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double radical_inverse(std::uint64_t index, int base) {
    double inv = 1.0 / base;
    double factor = inv;
    double r = 0.0;
    while (index > 0) {
        r += factor * static_cast<double>(index % static_cast<std::uint64_t>(base));
        index /= static_cast<std::uint64_t>(base);
        factor *= inv;
    }
    return r;
}

/// Deterministic low-discrepancy point in the box.
Eigen::VectorXd halton_point(const BoundingBox& box, std::uint64_t index) {
    static constexpr int kBases[3] = {2, 3, 5};
    Eigen::VectorXd x(box.lo.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        x[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * radical_inverse(index, kBases[k]);
    }
    return x;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw GeometryError(msg);
}

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_intersect(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2, const Eigen::Vector2d& q1,
                        const Eigen::Vector2d& q2) {
    auto orient = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
        const double v = cross2(b - a, c - a);
        return (v > 0) - (v < 0);
    };
    auto on_segment = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
        return std::min(a.x(), b.x()) <= c.x() && c.x() <= std::max(a.x(), b.x()) && std::min(a.y(), b.y()) <= c.y() &&
               c.y() <= std::max(a.y(), b.y());
    };
    const int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2), o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, p2, q2)) return true;
    if (o3 == 0 && on_segment(q1, q2, p1)) return true;
    if (o4 == 0 && on_segment(q1, q2, p2)) return true;
    return false;
}

double polygon_signed_area(const Polygon& p) {
    double a = 0.0;
    const std::size_t n = p.vertices.size();
    for (std::size_t k = 0; k < n; ++k) a += cross2(p.vertices[k], p.vertices[(k + 1) % n]);
    return 0.5 * a;
}

void validate_polygon(const Polygon& p) {
    const std::size_t n = p.vertices.size();
    require(n >= 3, "polygon needs at least 3 vertices");
    for (std::size_t k = 0; k < n; ++k) {
        require((p.vertices[k] - p.vertices[(k + 1) % n]).norm() > 0.0, "polygon has a zero-length edge");
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const bool adjacent = (b == a + 1) || (a == 0 && b == n - 1);
            if (adjacent) continue;
            if (segments_intersect(p.vertices[a], p.vertices[(a + 1) % n], p.vertices[b], p.vertices[(b + 1) % n])) {
                throw GeometryError("polygon is self-intersecting (edges " + std::to_string(a) + " and " +
                                    std::to_string(b) + ")");
            }
        }
    }
    require(polygon_signed_area(p) > 0.0, "polygon must be counterclockwise with positive area");
}

template <class Fn>
void for_each_fan_triangle(const Polyhedron& p, Fn fn) {
    for (const auto& face : p.faces) {
        for (std::size_t k = 1; k + 1 < face.size(); ++k) {
            fn(p.vertices[static_cast<std::size_t>(face[0])], p.vertices[static_cast<std::size_t>(face[k])],
               p.vertices[static_cast<std::size_t>(face[k + 1])]);
        }
    }
}

double polyhedron_signed_volume(const Polyhedron& p) {
    double v = 0.0;
    for_each_fan_triangle(p, [&](const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
        v += a.dot(b.cross(c)) / 6.0;
    });
    return v;
}

void validate_polyhedron(const Polyhedron& p) {
    require(p.vertices.size() >= 4, "polyhedron needs at least 4 vertices");
    require(p.faces.size() >= 4, "polyhedron needs at least 4 faces");
    std::map<std::pair<int, int>, int> directed;
    const int nv = static_cast<int>(p.vertices.size());
    for (std::size_t f = 0; f < p.faces.size(); ++f) {
        const auto& face = p.faces[f];
        require(face.size() >= 3, "polyhedron face " + std::to_string(f) + " has fewer than 3 vertices");
        for (std::size_t k = 0; k < face.size(); ++k) {
            const int a = face[k], b = face[(k + 1) % face.size()];
            require(a >= 0 && a < nv && b >= 0 && b < nv, "polyhedron face " + std::to_string(f) +
                                                              " references a missing vertex");
            require(a != b, "polyhedron face " + std::to_string(f) + " repeats a vertex");
            ++directed[{a, b}];
        }
    }
    for (const auto& [edge, count] : directed) {
        require(count == 1, "polyhedron edge (" + std::to_string(edge.first) + "," + std::to_string(edge.second) +
                                ") is used twice in the same direction; faces are not consistently oriented");
        const auto rev = directed.find({edge.second, edge.first});
        require(rev != directed.end(), "polyhedron is not closed at edge (" + std::to_string(edge.first) + "," +
                                           std::to_string(edge.second) + ")");
    }
    require(polyhedron_signed_volume(p) > 0.0, "polyhedron faces must be outward oriented (positive volume)");
}

void require_vector(const Eigen::VectorXd& v, Dim d, const char* what) {
    require(v.size() == d.n(), std::string(what) + " must have " + std::to_string(d.n()) + " components");
    require(v.allFinite(), std::string(what) + " must be finite");
}

Eigen::Matrix2d outer2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a * b.transpose(); }

Tensor2Sym to_sym(Dim d, const Eigen::MatrixXd& m) {
    Tensor2Sym t(d);
    for (int i = 0; i < d.n(); ++i)
        for (int j = i; j < d.n(); ++j) t.set(i, j, 0.5 * (m(i, j) + m(j, i)));
    return t;
}

struct RawMoments {
    double volume = 0.0;
    Eigen::VectorXd first;
    Eigen::MatrixXd second;
};

RawMoments raw_moments(const ShapeSpec& s);

RawMoments raw_moments_impl(Dim d, const Ball& b) {
    const double R = b.radius;
    const int n = d.n();
    RawMoments m;
    m.volume = n == 3 ? 4.0 / 3.0 * std::numbers::pi * R * R * R : std::numbers::pi * R * R;
    const double central = m.volume * R * R / (n == 3 ? 5.0 : 4.0);
    m.first = m.volume * b.center;
    m.second = central * Eigen::MatrixXd::Identity(n, n) + m.volume * b.center * b.center.transpose();
    return m;
}

RawMoments raw_moments_impl(Dim d, const Ellipsoid& e) {
    const int n = d.n();
    RawMoments m;
    const double prod = e.semi_axes.prod();
    m.volume = n == 3 ? 4.0 / 3.0 * std::numbers::pi * prod : std::numbers::pi * prod;
    const double denom = n == 3 ? 5.0 : 4.0;
    Eigen::MatrixXd body = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) body(k, k) = m.volume * e.semi_axes[k] * e.semi_axes[k] / denom;
    m.first = m.volume * e.center;
    m.second = e.rotation * body * e.rotation.transpose() + m.volume * e.center * e.center.transpose();
    return m;
}

RawMoments raw_moments_impl(Dim, const Polygon& p) {
    RawMoments m;
    m.first = Eigen::VectorXd::Zero(2);
    m.second = Eigen::MatrixXd::Zero(2, 2);
    const std::size_t n = p.vertices.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Eigen::Vector2d& a = p.vertices[k];
        const Eigen::Vector2d& b = p.vertices[(k + 1) % n];
        const double c = cross2(a, b);
        m.volume += c / 2.0;
        m.first += c / 6.0 * (a + b);
        m.second += c / 24.0 * (2.0 * outer2(a, a) + 2.0 * outer2(b, b) + outer2(a, b) + outer2(b, a));
    }
    return m;
}

RawMoments raw_moments_impl(Dim, const Polyhedron& p) {
    RawMoments m;
    m.first = Eigen::VectorXd::Zero(3);
    m.second = Eigen::MatrixXd::Zero(3, 3);
    for_each_fan_triangle(p, [&](const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
        const double det = a.dot(b.cross(c));
        const Eigen::Vector3d s = a + b + c;
        m.volume += det / 6.0;
        m.first += det / 24.0 * s;
        m.second += det / 120.0 *
                    (a * a.transpose() + b * b.transpose() + c * c.transpose() + s * s.transpose());
    });
    return m;
}

RawMoments raw_moments_impl(Dim d, const Composite& c) {
    RawMoments m;
    m.first = Eigen::VectorXd::Zero(d.n());
    m.second = Eigen::MatrixXd::Zero(d.n(), d.n());
    for (const auto& part : c.parts) {
        const RawMoments pm = raw_moments(part.shape);
        m.volume += part.sign * pm.volume;
        m.first += part.sign * pm.first;
        m.second += part.sign * pm.second;
    }
    return m;
}

RawMoments raw_moments(const ShapeSpec& s) {
    return std::visit([&](const auto& k) { return raw_moments_impl(s.dim, k); }, s.kind);
}

bool polygon_contains(const Polygon& p, const Eigen::Vector2d& x) {
    int winding = 0;
    const std::size_t n = p.vertices.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Eigen::Vector2d& a = p.vertices[k];
        const Eigen::Vector2d& b = p.vertices[(k + 1) % n];
        const double side = cross2(b - a, x - a);
        if (a.y() <= x.y()) {
            if (b.y() > x.y() && side > 0) ++winding;
        } else if (b.y() <= x.y() && side < 0) {
            --winding;
        }
    }
    return winding != 0;
}

bool polyhedron_contains(const Polyhedron& p, const Eigen::Vector3d& x) {
    double solid = 0.0;
    for_each_fan_triangle(p, [&](const Eigen::Vector3d& a0, const Eigen::Vector3d& b0, const Eigen::Vector3d& c0) {
        const Eigen::Vector3d a = a0 - x, b = b0 - x, c = c0 - x;
        const double la = a.norm(), lb = b.norm(), lc = c.norm();
        const double num = a.dot(b.cross(c));
        const double den = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
        solid += 2.0 * std::atan2(num, den);
    });
    return solid / (4.0 * std::numbers::pi) > 0.5;
}

} // namespace

bool ShapeSpec::is_faceted() const {
    return std::visit(overloaded{[](const Polygon&) { return true; }, [](const Polyhedron&) { return true; },
                                 [](const Composite& c) {
                                     return std::any_of(c.parts.begin(), c.parts.end(),
                                                        [](const SignedPart& p) { return p.shape.is_faceted(); });
                                 },
                                 [](const auto&) { return false; }},
                      kind);
}

// -- factories -----------------------------------------------------------------------

ShapeSpec make_ball(Dim d, double radius, Eigen::VectorXd center) {
    ShapeSpec s{d, Ball{radius, std::move(center)}};
    validate(s);
    return s;
}

ShapeSpec make_ball(Dim d, double radius) { return make_ball(d, radius, Eigen::VectorXd::Zero(d.n())); }

ShapeSpec make_ellipsoid(Dim d, Eigen::VectorXd semi_axes, Eigen::VectorXd center, Eigen::MatrixXd rotation) {
    ShapeSpec s{d, Ellipsoid{std::move(semi_axes), std::move(center), std::move(rotation)}};
    validate(s);
    return s;
}

ShapeSpec make_polygon(std::vector<Eigen::Vector2d> vertices) {
    ShapeSpec s{Dim(2), Polygon{std::move(vertices)}};
    validate(s);
    return s;
}

ShapeSpec make_polyhedron(std::vector<Eigen::Vector3d> vertices, std::vector<std::vector<int>> faces) {
    ShapeSpec s{Dim(3), Polyhedron{std::move(vertices), std::move(faces)}};
    validate(s);
    return s;
}

ShapeSpec make_composite(Dim d, std::vector<SignedPart> parts) {
    ShapeSpec s{d, Composite{std::move(parts)}};
    validate(s);
    return s;
}

ShapeSpec make_box(Dim d, const Eigen::VectorXd& w, const Eigen::VectorXd& c) {
    require_vector(w, d, "box half widths");
    require_vector(c, d, "box center");
    if (d.n() == 2) {
        return make_polygon({{c[0] - w[0], c[1] - w[1]},
                             {c[0] + w[0], c[1] - w[1]},
                             {c[0] + w[0], c[1] + w[1]},
                             {c[0] - w[0], c[1] + w[1]}});
    }
    std::vector<Eigen::Vector3d> v;
    for (int k = 0; k < 8; ++k) {
        v.emplace_back(c[0] + ((k & 1) ? w[0] : -w[0]), c[1] + ((k & 2) ? w[1] : -w[1]),
                       c[2] + ((k & 4) ? w[2] : -w[2]));
    }
    return make_polyhedron(std::move(v),
                           {{0, 4, 6, 2}, {1, 3, 7, 5}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 2, 3, 1}, {4, 5, 7, 6}});
}

// -- validation ------------------------------------------------------------------------

void validate(const ShapeSpec& s) {
    std::visit(overloaded{
                   [&](const Ball& b) {
                       require(std::isfinite(b.radius) && b.radius > 0.0, "ball radius must be positive");
                       require_vector(b.center, s.dim, "ball center");
                   },
                   [&](const Ellipsoid& e) {
                       require_vector(e.semi_axes, s.dim, "ellipsoid semi-axes");
                       require((e.semi_axes.array() > 0.0).all(), "ellipsoid semi-axes must be positive");
                       require_vector(e.center, s.dim, "ellipsoid center");
                       require(e.rotation.rows() == s.dim.n() && e.rotation.cols() == s.dim.n(),
                               "ellipsoid rotation must be n x n");
                       const double defect =
                           (e.rotation.transpose() * e.rotation - Eigen::MatrixXd::Identity(s.dim.n(), s.dim.n()))
                               .cwiseAbs()
                               .maxCoeff();
                       require(defect <= 1e-10 && e.rotation.determinant() > 0.0,
                               "ellipsoid rotation must be a proper orthogonal matrix");
                   },
                   [&](const Polygon& p) {
                       require(s.dim.n() == 2, "polygons are two-dimensional");
                       validate_polygon(p);
                   },
                   [&](const Polyhedron& p) {
                       require(s.dim.n() == 3, "polyhedra are three-dimensional");
                       validate_polyhedron(p);
                   },
                   [&](const Composite& c) {
                       require(!c.parts.empty(), "composite needs at least one part");
                       Composite positive;
                       for (const auto& part : c.parts) {
                           require(part.shape.dim == s.dim, "composite parts must share the dimension");
                           require(part.sign == 1 || part.sign == -1, "composite signs must be +1 or -1");
                           validate(part.shape);
                           if (part.sign == 1) positive.parts.push_back(part);
                       }
                       require(!positive.parts.empty(), "composite needs at least one +1 part");
                       const ShapeSpec outer{s.dim, positive};
                       for (std::size_t k = 0; k < c.parts.size(); ++k) {
                           if (c.parts[k].sign == -1 && !contained_in(c.parts[k].shape, outer)) {
                               throw GeometryError("composite part " + std::to_string(k) +
                                                   " (sign -1) is not contained in the union of the +1 parts");
                           }
                       }
                   },
               },
               s.kind);
}

// -- containment ---------------------------------------------------------------------------

bool contains(const ShapeSpec& s, const Eigen::VectorXd& x) {
    return std::visit(overloaded{
                          [&](const Ball& b) { return (x - b.center).squaredNorm() <= b.radius * b.radius; },
                          [&](const Ellipsoid& e) {
                              const Eigen::VectorXd y = e.rotation.transpose() * (x - e.center);
                              return y.cwiseQuotient(e.semi_axes).squaredNorm() <= 1.0;
                          },
                          [&](const Polygon& p) { return polygon_contains(p, Eigen::Vector2d(x[0], x[1])); },
                          [&](const Polyhedron& p) {
                              return polyhedron_contains(p, Eigen::Vector3d(x[0], x[1], x[2]));
                          },
                          [&](const Composite& c) {
                              int count = 0;
                              for (const auto& part : c.parts) {
                                  if (contains(part.shape, x)) count += part.sign;
                              }
                              return count > 0;
                          },
                      },
                      s.kind);
}

BoundingBox bounding_box(const ShapeSpec& s) {
    const int n = s.dim.n();
    return std::visit(
        overloaded{
            [&](const Ball& b) {
                return BoundingBox{b.center.array() - b.radius, b.center.array() + b.radius};
            },
            [&](const Ellipsoid& e) {
                // Half extent along axis k: sqrt(sum_j (R_kj a_j)^2).
                Eigen::VectorXd half(n);
                for (int k = 0; k < n; ++k) half[k] = e.rotation.row(k).transpose().cwiseProduct(e.semi_axes).norm();
                return BoundingBox{e.center - half, e.center + half};
            },
            [&](const Polygon& p) {
                Eigen::VectorXd lo = Eigen::VectorXd::Constant(2, INFINITY), hi = -lo;
                for (const auto& v : p.vertices) {
                    lo = lo.cwiseMin(Eigen::VectorXd(v));
                    hi = hi.cwiseMax(Eigen::VectorXd(v));
                }
                return BoundingBox{lo, hi};
            },
            [&](const Polyhedron& p) {
                Eigen::VectorXd lo = Eigen::VectorXd::Constant(3, INFINITY), hi = -lo;
                for (const auto& v : p.vertices) {
                    lo = lo.cwiseMin(Eigen::VectorXd(v));
                    hi = hi.cwiseMax(Eigen::VectorXd(v));
                }
                return BoundingBox{lo, hi};
            },
            [&](const Composite& c) {
                Eigen::VectorXd lo = Eigen::VectorXd::Constant(n, INFINITY), hi = -lo;
                for (const auto& part : c.parts) {
                    if (part.sign != 1) continue;
                    const BoundingBox b = bounding_box(part.shape);
                    lo = lo.cwiseMin(b.lo);
                    hi = hi.cwiseMax(b.hi);
                }
                return BoundingBox{lo, hi};
            },
        },
        s.kind);
}

bool contained_in(const ShapeSpec& inner, const ShapeSpec& outer, int samples) {
    if (!(inner.dim == outer.dim)) return false;
    const BoundingBox bi = bounding_box(inner), bo = bounding_box(outer);
    const double slack = 1e-12 * std::max(1.0, (bo.hi - bo.lo).cwiseAbs().maxCoeff());
    if ((bi.lo.array() < bo.lo.array() - slack).any() || (bi.hi.array() > bo.hi.array() + slack).any()) return false;
    int found = 0;
    const std::uint64_t max_tries = static_cast<std::uint64_t>(samples) * 50;
    for (std::uint64_t k = 1; k <= max_tries && found < samples; ++k) {
        const Eigen::VectorXd x = halton_point(bi, k);
        if (!contains(inner, x)) continue;
        ++found;
        if (!contains(outer, x)) return false;
    }
    return true;
}

// -- transforms --------------------------------------------------------------------------

ShapeSpec scaled(const ShapeSpec& s, double f) {
    if (!(f > 0.0)) throw GeometryError("scale factor must be positive");
    ShapeSpec out = s;
    std::visit(overloaded{
                   [&](Ball& b) {
                       b.radius *= f;
                       b.center *= f;
                   },
                   [&](Ellipsoid& e) {
                       e.semi_axes *= f;
                       e.center *= f;
                   },
                   [&](Polygon& p) {
                       for (auto& v : p.vertices) v *= f;
                   },
                   [&](Polyhedron& p) {
                       for (auto& v : p.vertices) v *= f;
                   },
                   [&](Composite& c) {
                       for (auto& part : c.parts) part.shape = scaled(part.shape, f);
                   },
               },
               out.kind);
    return out;
}

ShapeSpec translated(const ShapeSpec& s, const Eigen::VectorXd& d) {
    require_vector(d, s.dim, "translation");
    ShapeSpec out = s;
    std::visit(overloaded{
                   [&](Ball& b) { b.center += d; },
                   [&](Ellipsoid& e) { e.center += d; },
                   [&](Polygon& p) {
                       for (auto& v : p.vertices) v += Eigen::Vector2d(d[0], d[1]);
                   },
                   [&](Polyhedron& p) {
                       for (auto& v : p.vertices) v += Eigen::Vector3d(d[0], d[1], d[2]);
                   },
                   [&](Composite& c) {
                       for (auto& part : c.parts) part.shape = translated(part.shape, d);
                   },
               },
               out.kind);
    return out;
}

// -- moments ----------------------------------------------------------------------------

double MassProperties::mean_rho2() const { return euler.trace() / (euler.dim().n() * volume); }

double MassProperties::deviatoric_ratio() const {
    const double norm = euler.norm();
    if (norm == 0.0) return 0.0;
    const Tensor2Sym dev = euler - (euler.trace() / euler.dim().n()) * Tensor2Sym::identity(euler.dim());
    return dev.norm() / norm;
}

MassProperties mass_properties(const ShapeSpec& shape, double spherical_tol) {
    const RawMoments m = raw_moments(shape);
    if (!(m.volume > 0.0)) {
        std::ostringstream os;
        os << "degenerate shape: volume " << m.volume << " is not positive";
        throw GeometryError(os.str());
    }
    MassProperties mp(shape.dim);
    mp.volume = m.volume;
    mp.static_moment = m.first;
    mp.euler = to_sym(shape.dim, m.second);
    if (mp.deviatoric_ratio() <= spherical_tol) mp.rho2 = mp.mean_rho2();
    return mp;
}

double default_gp_tol(const ShapeSpec& rve, const ShapeSpec& inclusion) {
    return rve.is_faceted() || inclusion.is_faceted() ? kGpTolFaceted : kGpTolAnalytic;
}

GPReport check_gp(const ShapeSpec& rve, const ShapeSpec& inclusion, double tol) {
    require_same_dim(rve.dim, inclusion.dim, "check_gp");
    validate(rve);
    validate(inclusion);
    if (!contained_in(inclusion, rve)) throw GeometryError("inclusion is not contained in the RVE");

    const MassProperties rve_mp = mass_properties(rve);
    const MassProperties inc_mp = mass_properties(inclusion);
    MassProperties mat_mp(rve.dim);
    mat_mp.volume = rve_mp.volume - inc_mp.volume;
    if (!(mat_mp.volume > 0.0)) throw GeometryError("inclusion fills the whole RVE");
    mat_mp.static_moment = rve_mp.static_moment - inc_mp.static_moment;
    mat_mp.euler = rve_mp.euler - inc_mp.euler;

    GPReport r;
    r.tol = tol;
    r.volume_rve = rve_mp.volume;
    r.volume_inclusion = inc_mp.volume;
    r.f = inc_mp.volume / rve_mp.volume;
    const double rho2 = rve_mp.mean_rho2();
    const double rho2_mat = mat_mp.mean_rho2();
    const double rho2_inc = inc_mp.mean_rho2();
    r.rho_rve = std::sqrt(rho2);
    r.rho_matrix = std::sqrt(rho2_mat);
    r.rho_inclusion = std::sqrt(rho2_inc);

    r.gp1_defect = std::max(mat_mp.static_moment.norm() / (mat_mp.volume * r.rho_rve),
                            inc_mp.static_moment.norm() / (inc_mp.volume * r.rho_rve));
    r.gp2_defect = std::max(mat_mp.deviatoric_ratio(), inc_mp.deviatoric_ratio());
    r.gp1_ok = r.gp1_defect <= tol;
    r.gp2_ok = r.gp2_defect <= tol;
    r.rho_identity_residual = std::abs(rho2 - (1.0 - r.f) * rho2_mat - r.f * rho2_inc) / rho2;
    r.gp3_ratio = r.rho_inclusion / r.rho_rve;
    return r;
}

ShapeSpec inclusion_for_fraction(const ShapeSpec& rve, const ShapeSpec& inclusion, double f,
                                 InclusionFamily family) {
    if (!(f > 0.0 && f < 1.0)) throw DomainError("volume fraction must lie in (0, 1)");
    const double v_rve = mass_properties(rve).volume;
    const double v_inc = mass_properties(inclusion).volume;
    const double n = inclusion.dim.n();
    if (family == InclusionFamily::Scale) {
        ShapeSpec out = scaled(inclusion, std::pow(f * v_rve / v_inc, 1.0 / n));
        if (!contained_in(out, rve)) throw GeometryError("scaled inclusion leaves the RVE");
        return out;
    }
    const double v_core = v_inc - f * v_rve;
    if (!(v_core > 0.0)) throw DomainError("hollow family cannot exceed the volume fraction of the full inclusion");
    const ShapeSpec core = scaled(inclusion, std::pow(v_core / v_inc, 1.0 / n));
    return make_composite(inclusion.dim, {SignedPart{inclusion, 1}, SignedPart{core, -1}});
}

Gp3Sweep gp3_sweep(const ShapeSpec& rve, const ShapeSpec& inclusion, std::span<const double> f_ladder,
                   InclusionFamily family) {
    Gp3Sweep sweep;
    const double tol = default_gp_tol(rve, inclusion);
    for (double f : f_ladder) {
        try {
            const GPReport r = check_gp(rve, inclusion_for_fraction(rve, inclusion, f, family), tol);
            sweep.points.push_back({r.f, r.rho_inclusion, r.rho_rve, r.gp3_ratio});
        } catch (const Error& e) {
            std::ostringstream os;
            os << "f = " << f << ": " << e.what();
            sweep.skipped.push_back(os.str());
        }
    }
    if (sweep.points.size() >= 2) {
        std::vector<double> fs, ratios;
        for (const auto& p : sweep.points) {
            fs.push_back(p.f);
            ratios.push_back(p.ratio);
        }
        sweep.slope = loglog_slope(fs, ratios);
        sweep.decays = sweep.slope >= kGp3MinSlope;
    }
    return sweep;
}

} // namespace sgehom
