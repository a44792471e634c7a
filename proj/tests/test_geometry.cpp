#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sgehom/geometry.hpp"

using namespace sgehom;
using std::numbers::pi;

namespace {

Eigen::MatrixXd dense(const Tensor2Sym& t) {
    const int n = t.dim().n();
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = t(i, j);
    return m;
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
    int k = 0;
    for (double a : v) x(k++) = a;
    return x;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// Moments compared with an oracle: volume and Euler tensor relative, static
/// moment relative to volume times a length.
double moment_error(const MassProperties& mp, const oracle::Moments& ref, double length) {
    return std::max({rel(mp.volume, ref.volume), (mp.static_moment - ref.S).norm() / (ref.volume * length),
                     (dense(mp.euler) - ref.E).norm() / ref.E.norm()});
}

Eigen::MatrixXd rotation3(double a, double b, double c) {
    return (Eigen::AngleAxisd(a, Eigen::Vector3d::UnitZ()) * Eigen::AngleAxisd(b, Eigen::Vector3d::UnitY()) *
            Eigen::AngleAxisd(c, Eigen::Vector3d::UnitX()))
        .toRotationMatrix();
}

} // namespace

TEST_CASE("ball and disk moments") {
    const double R = 1.7;
    const MassProperties ball = mass_properties(make_ball(Dim(3), R));
    CHECK(rel(ball.volume, 4.0 * pi * R * R * R / 3.0) <= 1e-14);
    CHECK(ball.static_moment.norm() == 0.0);
    const Eigen::MatrixXd E = dense(ball.euler);
    CHECK((E - ball.volume * R * R / 5.0 * Eigen::Matrix3d::Identity()).norm() <= 1e-14 * E.norm());
    REQUIRE(ball.rho2.has_value());
    CHECK(rel(*ball.rho2, R * R / 5.0) <= 1e-12);

    const MassProperties disk = mass_properties(make_ball(Dim(2), R));
    CHECK(rel(disk.volume, pi * R * R) <= 1e-14);
    REQUIRE(disk.rho2.has_value());
    CHECK(rel(*disk.rho2, R * R / 4.0) <= 1e-12);
}

TEST_CASE("ball moments agree with polar quadrature") {
    for (int n : {2, 3}) {
        const MassProperties mp = mass_properties(make_ball(Dim(n), 1.3));
        CHECK(moment_error(mp, oracle::qmc_ball_moments(Dim(n), 1.3, 1'000'000), 1.3) <= 1e-4);
    }
}

TEST_CASE("unit square") {
    const ShapeSpec box = make_box(Dim(2), vec({0.5, 0.5}), vec({0.0, 0.0}));
    const MassProperties a = mass_properties(box);
    const MassProperties b = mass_properties(make_polygon({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}));
    for (const auto& mp : {a, b}) {
        CHECK(mp.volume == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(mp.static_moment.norm() <= 1e-16);
        CHECK((dense(mp.euler) - Eigen::Matrix2d::Identity() / 12.0).norm() <= 1e-15);
        REQUIRE(mp.rho2.has_value());
        CHECK(rel(*mp.rho2, 1.0 / 12.0) <= 1e-14);
    }
}

TEST_CASE("ellipsoid moments agree with quadrature over the mapped ball") {
    const Eigen::Vector3d axes(1.5, 0.7, 0.4);
    const Eigen::Vector3d c(0.2, -0.1, 0.3);
    const Eigen::Matrix3d Q = rotation3(0.3, -0.8, 1.1);
    const MassProperties mp = mass_properties(make_ellipsoid(Dim(3), axes, c, Q));
    const Eigen::Matrix3d M = Q * axes.asDiagonal();
    oracle::Moments ref{4.0 / 3.0 * pi * axes.prod(), Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Zero(3, 3)};
    const std::uint64_t N = 1'000'000;
    for (std::uint64_t p = 0; p < N; ++p) {
        const Eigen::VectorXd x = M * oracle::ball_point(oracle::halton(p, 3), 1.0) + c;
        ref.S += x;
        ref.E += x * x.transpose();
    }
    ref.S *= ref.volume / N;
    ref.E *= ref.volume / N;
    CHECK(moment_error(mp, ref, 1.5) <= 1e-4);
    CHECK_FALSE(mp.rho2.has_value());
}

TEST_CASE("random convex polygons agree with quasi-Monte Carlo") {
    std::mt19937_64 rng(21);
    for (int k = 3; k <= 8; ++k) {
        const oracle::ConvexPolygon poly{k, oracle::random_affine(2, rng)};
        const MassProperties mp = mass_properties(make_polygon(poly.vertices()));
        const ShapeSpec shape = make_polygon(poly.vertices());
        const BoundingBox bb = bounding_box(shape);
        const auto ref = oracle::qmc_polar_moments(poly.halfspaces(), poly.centre(), 1'000'000);
        CAPTURE(k);
        CHECK(moment_error(mp, ref, (bb.hi - bb.lo).norm()) <= 1e-4);
    }
}

TEST_CASE("random convex polyhedra agree with quasi-Monte Carlo") {
    std::mt19937_64 rng(22);
    for (auto solid : {oracle::Solid::Cube, oracle::Solid::Tetrahedron, oracle::Solid::Octahedron}) {
        const oracle::ConvexPolyhedron poly{solid, oracle::random_affine(3, rng)};
        const ShapeSpec shape = make_polyhedron(poly.vertices(), poly.faces());
        const MassProperties mp = mass_properties(shape);
        const BoundingBox bb = bounding_box(shape);
        const auto ref = oracle::qmc_polar_moments(poly.halfspaces(), poly.centre(), 1'000'000);
        CAPTURE(static_cast<int>(solid));
        CHECK(moment_error(mp, ref, (bb.hi - bb.lo).norm()) <= 1e-4);
    }
}

TEST_CASE("composite moments are signed sums") {
    const ShapeSpec outer = make_ball(Dim(3), 2.0, vec({0.1, 0.0, 0.0}));
    const ShapeSpec inner = make_ellipsoid(Dim(3), vec({0.5, 0.3, 0.2}), vec({0.3, 0.2, -0.1}), rotation3(0.4, 0.2, 0.1));
    const ShapeSpec comp = make_composite(Dim(3), {{outer, 1}, {inner, -1}});
    const MassProperties a = mass_properties(outer), b = mass_properties(inner), c = mass_properties(comp);
    CHECK(rel(c.volume, a.volume - b.volume) <= 1e-12);
    CHECK((c.static_moment - (a.static_moment - b.static_moment)).norm() <= 1e-12 * a.static_moment.norm());
    CHECK((dense(c.euler) - (dense(a.euler) - dense(b.euler))).norm() <= 1e-12 * dense(a.euler).norm());

    // A removed part outside the kept part is rejected.
    CHECK_THROWS_AS(make_composite(Dim(3), {{make_ball(Dim(3), 1.0), 1}, {make_ball(Dim(3), 0.5, vec({2, 0, 0})), -1}}),
                    GeometryError);
    CHECK_THROWS_AS(make_composite(Dim(3), {{outer, 2}}), GeometryError);
}

TEST_CASE("translation law") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<ShapeSpec> shapes{
        make_ball(Dim(2), 0.8), make_ball(Dim(3), 1.1),
        make_polygon(oracle::ConvexPolygon{5, oracle::random_affine(2, rng)}.vertices()),
        make_polyhedron(oracle::ConvexPolyhedron{oracle::Solid::Octahedron, oracle::random_affine(3, rng)}.vertices(),
                        oracle::ConvexPolyhedron{oracle::Solid::Octahedron, {}}.faces()),
        make_ellipsoid(Dim(3), vec({1.0, 0.5, 0.3}), vec({0, 0, 0}), rotation3(0.1, 0.2, 0.3))};
    for (const auto& s : shapes) {
        const int n = s.dim.n();
        Eigen::VectorXd d(n);
        for (int k = 0; k < n; ++k) d(k) = g(rng);
        const MassProperties a = mass_properties(s), b = mass_properties(translated(s, d));
        CHECK(rel(b.volume, a.volume) <= 1e-12);
        CHECK((b.static_moment - (a.static_moment + a.volume * d)).norm() <= 1e-12 * (1.0 + b.static_moment.norm()));
        const Eigen::MatrixXd expected = dense(a.euler) + a.static_moment * d.transpose() +
                                         d * a.static_moment.transpose() + a.volume * d * d.transpose();
        CHECK((dense(b.euler) - expected).norm() <= 1e-12 * expected.norm());
    }
}

TEST_CASE("invalid shapes are rejected") {
    CHECK_THROWS_AS(make_ball(Dim(2), 0.0), GeometryError);
    CHECK_THROWS_AS(make_polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), GeometryError);    // bow tie
    CHECK_THROWS_AS(make_polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), GeometryError);    // clockwise
    CHECK_THROWS_AS(make_polygon({{0, 0}, {1, 0}}), GeometryError);
    const oracle::ConvexPolyhedron tet{oracle::Solid::Tetrahedron, {}};
    auto faces = tet.faces();
    faces.pop_back();
    CHECK_THROWS_AS(make_polyhedron(tet.reference_vertices(), faces), GeometryError);  // open surface
    auto inward = tet.faces();
    for (auto& f : inward) std::reverse(f.begin(), f.end());
    CHECK_THROWS_AS(make_polyhedron(tet.reference_vertices(), inward), GeometryError);
    Eigen::MatrixXd skew = Eigen::MatrixXd::Identity(3, 3);
    skew(0, 1) = 0.5;
    CHECK_THROWS_AS(make_ellipsoid(Dim(3), vec({1, 1, 1}), vec({0, 0, 0}), skew), GeometryError);
}

TEST_CASE("concentric disks satisfy the geometric preconditions") {
    const double R1 = 2.0, R2 = 0.5;
    const GPReport r = check_gp(make_ball(Dim(2), R1), make_ball(Dim(2), R2), kGpTolAnalytic);
    CHECK(r.gp1_ok);
    CHECK(r.gp2_ok);
    CHECK(rel(r.f, (R2 / R1) * (R2 / R1)) <= 1e-14);
    CHECK(r.rho_identity_residual <= 1e-10);
    CHECK(rel(r.rho_rve * r.rho_rve, R1 * R1 / 4.0) <= 1e-12);
    CHECK(rel(r.gp3_ratio, R2 / R1) <= 1e-12);
}

TEST_CASE("square in square satisfies the geometric preconditions") {
    const ShapeSpec rve = make_box(Dim(2), vec({1.0, 1.0}), vec({0.0, 0.0}));
    const ShapeSpec inc = make_box(Dim(2), vec({0.2, 0.2}), vec({0.0, 0.0}));
    const GPReport r = check_gp(rve, inc, default_gp_tol(rve, inc));
    CHECK(r.tol == kGpTolFaceted);
    CHECK(r.gp1_ok);
    CHECK(r.gp2_ok);
    CHECK(rel(r.f, 0.04) <= 1e-14);
    CHECK(r.rho_identity_residual <= 1e-10);
}

TEST_CASE("off-centre inclusion violates the static-moment condition") {
    const ShapeSpec rve = make_ball(Dim(3), 1.0);
    const ShapeSpec inc = make_ball(Dim(3), 0.2, vec({0.1, 0.0, 0.0}));
    const GPReport r = check_gp(rve, inc, kGpTolAnalytic);
    CHECK_FALSE(r.gp1_ok);
    CHECK(r.gp1_defect > 1e-3);
    CHECK(r.rho_identity_residual <= 1e-10);
}

TEST_CASE("inclusion outside the RVE is an error") {
    CHECK_THROWS_AS(check_gp(make_ball(Dim(2), 1.0), make_ball(Dim(2), 0.5, vec({0.8, 0.0})), kGpTolAnalytic),
                    GeometryError);
}

TEST_CASE("radius identity holds on composed RVEs") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    for (int trial = 0; trial < 20; ++trial) {
        const ShapeSpec rve = make_box(Dim(3), vec({1.0, 1.2, 0.9}), vec({u(rng), u(rng), u(rng)}));
        const ShapeSpec inc = make_ellipsoid(Dim(3), vec({0.3, 0.2, 0.25}), vec({u(rng), u(rng), u(rng)}),
                                             rotation3(u(rng), u(rng), u(rng)));
        CHECK(check_gp(rve, inc, kGpTolFaceted).rho_identity_residual <= 1e-10);
        const ShapeSpec disk_rve = make_ball(Dim(2), 1.0);
        const oracle::Affine small = oracle::make_affine(0.2 * Eigen::MatrixXd::Identity(2, 2), vec({u(rng), u(rng)}));
        const ShapeSpec poly = make_polygon(oracle::ConvexPolygon{6, small}.vertices());
        CHECK(check_gp(disk_rve, poly, kGpTolFaceted).rho_identity_residual <= 1e-10);
    }
}

TEST_CASE("shrinking inclusions drive the radius ratio to zero; hollowed ones do not") {
    const ShapeSpec rve = make_ball(Dim(3), 1.0);
    const ShapeSpec inc = make_ball(Dim(3), 0.45);
    const Gp3Sweep shrink = gp3_sweep(rve, inc, kDilutionLadder, InclusionFamily::Scale);
    REQUIRE(shrink.points.size() == kDilutionLadder.size());
    CHECK(shrink.decays);
    CHECK(shrink.slope == doctest::Approx(1.0 / 3.0).epsilon(1e-9));

    const Gp3Sweep hollow = gp3_sweep(rve, inc, kDilutionLadder, InclusionFamily::Hollow);
    REQUIRE(hollow.points.size() == kDilutionLadder.size());
    CHECK_FALSE(hollow.decays);
    for (const auto& p : hollow.points) CHECK(p.ratio > 0.4);

    const ShapeSpec square = make_box(Dim(2), vec({1.0, 1.0}), vec({0.0, 0.0}));
    const Gp3Sweep sq = gp3_sweep(square, make_box(Dim(2), vec({0.5, 0.5}), vec({0.0, 0.0})), kDilutionLadder,
                                  InclusionFamily::Scale);
    CHECK(sq.slope == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("scaled family reaches the requested fraction") {
    const ShapeSpec rve = make_ball(Dim(2), 1.0);
    for (double f : kDilutionLadder) {
        const ShapeSpec inc = inclusion_for_fraction(rve, make_ball(Dim(2), 0.5), f, InclusionFamily::Scale);
        CHECK(rel(check_gp(rve, inc, kGpTolAnalytic).f, f) <= 1e-12);
    }
    CHECK_THROWS_AS(inclusion_for_fraction(rve, make_ball(Dim(2), 0.1), 0.5, InclusionFamily::Hollow), DomainError);
}
