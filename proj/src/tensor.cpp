#include "sgehom/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sgehom {

Dim::Dim(int n) : n_(n) {
    if (n != 2 && n != 3) throw DimensionError("spatial dimension must be 2 or 3, got " + std::to_string(n));
}

void require_same_dim(Dim a, Dim b, const char* what) {
    if (!(a == b)) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.n()) + " vs " +
                             std::to_string(b.n()) + ")");
    }
}

namespace detail {

template <std::size_t Order>
double DenseStorage<Order>::norm() const {
    double s = 0.0;
    for (double v : c_) s += v * v;
    return std::sqrt(s);
}

template <std::size_t Order>
double DenseStorage<Order>::max_abs() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

template class DenseStorage<2>;
template class DenseStorage<3>;
template class DenseStorage<4>;
template class DenseStorage<6>;

} // namespace detail

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

template <std::size_t Order>
std::string format_index(const Index<Order>& idx) {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < Order; ++k) os << (k ? "," : "") << idx[k];
    os << ')';
    return os.str();
}

std::size_t flat_of(int n, std::span<const int> idx) {
    std::size_t f = 0;
    for (int v : idx) f = f * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
    return f;
}

template <std::size_t Order>
Index<Order> unflat_of(int n, std::size_t f) {
    Index<Order> idx{};
    for (std::size_t k = Order; k-- > 0;) {
        idx[k] = static_cast<int>(f % static_cast<std::size_t>(n));
        f /= static_cast<std::size_t>(n);
    }
    return idx;
}

double max_abs_of(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

template <std::size_t Order, std::size_t NImages, class OrbitFn>
void validate_orbits(Dim d, std::span<const double> full, double rel_tol, OrbitFn orbit, const char* type_name) {
    const double tol = rel_tol * max_abs_of(full);
    const std::size_t total = full.size();
    for (std::size_t f = 0; f < total; ++f) {
        const auto idx = unflat_of<Order>(d.n(), f);
        const std::array<Index<Order>, NImages> images = orbit(idx);
        for (const auto& img : images) {
            const double a = full[f];
            const double b = full[flat_of(d.n(), img)];
            if (std::abs(a - b) > tol || std::isnan(a) != std::isnan(b)) {
                std::ostringstream os;
                os.precision(17);
                os << type_name << " symmetry violated: component " << format_index(idx) << " = " << a
                   << " but " << format_index(img) << " = " << b;
                throw SymmetryError(os.str());
            }
        }
    }
}

template <std::size_t Order, std::size_t NImages, class OrbitFn, class Setter>
void fill_from_canonical(Dim d, std::span<const double> full, OrbitFn orbit, Setter set) {
    for (std::size_t f = 0; f < full.size(); ++f) {
        const auto idx = unflat_of<Order>(d.n(), f);
        const std::array<Index<Order>, NImages> images = orbit(idx);
        std::size_t canonical = f;
        for (const auto& img : images) canonical = std::min(canonical, flat_of(d.n(), img));
        if (canonical == f) set(idx, full[f]);
    }
}

template <std::size_t Order, std::size_t NImages, class OrbitFn>
double orbit_defect(Dim d, std::span<const double> full, OrbitFn orbit) {
    double worst = 0.0;
    for (std::size_t f = 0; f < full.size(); ++f) {
        const auto idx = unflat_of<Order>(d.n(), f);
        for (const auto& img : orbit(idx)) worst = std::max(worst, std::abs(full[f] - full[flat_of(d.n(), img)]));
    }
    return worst;
}

void require_size(Dim d, std::size_t expected_order, std::size_t got) {
    std::size_t s = 1;
    for (std::size_t k = 0; k < expected_order; ++k) s *= static_cast<std::size_t>(d.n());
    if (s != got) {
        throw DimensionError("expected " + std::to_string(s) + " components for order " +
                             std::to_string(expected_order) + " in dimension " + std::to_string(d.n()) + ", got " +
                             std::to_string(got));
    }
}

} // namespace

// -- Tensor2Sym ----------------------------------------------------------------

Tensor2Sym Tensor2Sym::identity(Dim d) {
    Tensor2Sym t(d);
    for (int i = 0; i < d.n(); ++i) t.set(i, i, 1.0);
    return t;
}

Tensor2Sym Tensor2Sym::from_full(Dim d, std::span<const double> full, double rel_tol) {
    require_size(d, 2, full.size());
    auto orbit = [](const Index<2>& x) { return std::array<Index<2>, 2>{x, Index<2>{x[1], x[0]}}; };
    validate_orbits<2, 2>(d, full, rel_tol, orbit, "Tensor2Sym");
    Tensor2Sym t(d);
    fill_from_canonical<2, 2>(d, full, orbit, [&](const Index<2>& x, double v) { t.set(x[0], x[1], v); });
    return t;
}

void Tensor2Sym::set(int i, int j, double v) {
    put({i, j}, v);
    put({j, i}, v);
}

double Tensor2Sym::trace() const {
    double s = 0.0;
    for (int i = 0; i < dim().n(); ++i) s += (*this)(i, i);
    return s;
}

Tensor2Sym& Tensor2Sym::operator+=(const Tensor2Sym& o) {
    require_same_dim(dim(), o.dim(), "Tensor2Sym +");
    for (std::size_t k = 0; k < size(); ++k) raw()[k] += o.raw()[k];
    return *this;
}

Tensor2Sym& Tensor2Sym::operator-=(const Tensor2Sym& o) {
    require_same_dim(dim(), o.dim(), "Tensor2Sym -");
    for (std::size_t k = 0; k < size(); ++k) raw()[k] -= o.raw()[k];
    return *this;
}

Tensor2Sym& Tensor2Sym::operator*=(double s) {
    for (double& v : raw()) v *= s;
    return *this;
}

Tensor2Sym operator+(Tensor2Sym a, const Tensor2Sym& b) { return a += b; }
Tensor2Sym operator-(Tensor2Sym a, const Tensor2Sym& b) { return a -= b; }
Tensor2Sym operator*(double s, Tensor2Sym a) { return a *= s; }

double ddot(const Tensor2Sym& a, const Tensor2Sym& b) {
    require_same_dim(a.dim(), b.dim(), "ddot");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a.components()[k] * b.components()[k];
    return s;
}

// -- third order -----------------------------------------------------------------

template <PairSym P>
PairSymTensor3<P> PairSymTensor3<P>::from_full(Dim d, std::span<const double> full, double rel_tol) {
    require_size(d, 3, full.size());
    auto orbit = [](const Index<3>& x) {
        if constexpr (P == PairSym::First) return std::array<Index<3>, 2>{x, Index<3>{x[1], x[0], x[2]}};
        else return std::array<Index<3>, 2>{x, Index<3>{x[0], x[2], x[1]}};
    };
    validate_orbits<3, 2>(d, full, rel_tol, orbit,
                          P == PairSym::First ? "curvature (first-pair)" : "beta (last-pair)");
    PairSymTensor3 t(d);
    fill_from_canonical<3, 2>(d, full, orbit, [&](const Index<3>& x, double v) { t.set(x[0], x[1], x[2], v); });
    return t;
}

template <PairSym P>
PairSymTensor3<P>& PairSymTensor3<P>::operator+=(const PairSymTensor3& o) {
    require_same_dim(dim(), o.dim(), "third-order +");
    for (std::size_t k = 0; k < size(); ++k) raw()[k] += o.raw()[k];
    return *this;
}

template <PairSym P>
PairSymTensor3<P>& PairSymTensor3<P>::operator*=(double s) {
    for (double& v : raw()) v *= s;
    return *this;
}

template <PairSym P>
double ddot(const PairSymTensor3<P>& a, const PairSymTensor3<P>& b) {
    require_same_dim(a.dim(), b.dim(), "ddot");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a.components()[k] * b.components()[k];
    return s;
}

template class PairSymTensor3<PairSym::First>;
template class PairSymTensor3<PairSym::Last>;
template double ddot(const CurvatureTensor&, const CurvatureTensor&);
template double ddot(const BetaField&, const BetaField&);

// -- orbits ------------------------------------------------------------------------

std::array<Index<4>, 8> elastic_orbit(const Index<4>& x) {
    const auto [i, j, h, k] = x;
    return {Index<4>{i, j, h, k}, Index<4>{j, i, h, k}, Index<4>{i, j, k, h}, Index<4>{j, i, k, h},
            Index<4>{h, k, i, j}, Index<4>{k, h, i, j}, Index<4>{h, k, j, i}, Index<4>{k, h, j, i}};
}

std::array<Index<6>, 8> sge_orbit(const Index<6>& x) {
    const auto [i, j, k, l, m, n] = x;
    return {Index<6>{i, j, k, l, m, n}, Index<6>{j, i, k, l, m, n}, Index<6>{i, j, k, m, l, n},
            Index<6>{j, i, k, m, l, n}, Index<6>{l, m, n, i, j, k}, Index<6>{m, l, n, i, j, k},
            Index<6>{l, m, n, j, i, k}, Index<6>{m, l, n, j, i, k}};
}

double elastic_symmetry_defect(Dim d, std::span<const double> full) {
    require_size(d, 4, full.size());
    return orbit_defect<4, 8>(d, full, elastic_orbit);
}

double sge_symmetry_defect(Dim d, std::span<const double> full) {
    require_size(d, 6, full.size());
    return orbit_defect<6, 8>(d, full, sge_orbit);
}

// -- Tensor4Elastic -------------------------------------------------------------

Tensor4Elastic Tensor4Elastic::from_full(Dim d, std::span<const double> full, double rel_tol) {
    require_size(d, 4, full.size());
    validate_orbits<4, 8>(d, full, rel_tol, elastic_orbit, "fourth-order elastic");
    return from_nearly_symmetric(d, full);
}

Tensor4Elastic Tensor4Elastic::from_nearly_symmetric(Dim d, std::span<const double> full) {
    require_size(d, 4, full.size());
    Tensor4Elastic t(d);
    fill_from_canonical<4, 8>(d, full, elastic_orbit,
                              [&](const Index<4>& x, double v) { t.set(x[0], x[1], x[2], x[3], v); });
    return t;
}

Tensor4Elastic Tensor4Elastic::from_mandel(Dim d, const Eigen::MatrixXd& m) {
    const Eigen::MatrixXd B = sym2_basis(d);
    if (m.rows() != B.cols() || m.cols() != B.cols()) throw DimensionError("from_mandel: wrong matrix size");
    const Eigen::MatrixXd full = B * m * B.transpose();
    const int nn = d.n() * d.n();
    std::vector<double> flat(static_cast<std::size_t>(nn * nn));
    for (int p = 0; p < nn; ++p)
        for (int q = 0; q < nn; ++q) flat[static_cast<std::size_t>(p * nn + q)] = full(p, q);
    return from_nearly_symmetric(d, flat);
}

void Tensor4Elastic::set(int i, int j, int h, int k, double v) {
    for (const auto& img : elastic_orbit({i, j, h, k})) put(img, v);
}

Eigen::MatrixXd Tensor4Elastic::to_mandel() const {
    const Eigen::MatrixXd B = sym2_basis(dim());
    const int nn = dim().n() * dim().n();
    const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> full(
        components().data(), nn, nn);
    Eigen::MatrixXd m = B.transpose() * full * B;
    return 0.5 * (m + m.transpose());
}

Tensor4Elastic& Tensor4Elastic::operator+=(const Tensor4Elastic& o) {
    require_same_dim(dim(), o.dim(), "Tensor4Elastic +");
    for (std::size_t k = 0; k < size(); ++k) raw()[k] += o.raw()[k];
    return *this;
}

Tensor4Elastic& Tensor4Elastic::operator-=(const Tensor4Elastic& o) {
    require_same_dim(dim(), o.dim(), "Tensor4Elastic -");
    for (std::size_t k = 0; k < size(); ++k) raw()[k] -= o.raw()[k];
    return *this;
}

Tensor4Elastic& Tensor4Elastic::operator*=(double s) {
    for (double& v : raw()) v *= s;
    return *this;
}

Tensor4Elastic operator+(Tensor4Elastic a, const Tensor4Elastic& b) { return a += b; }
Tensor4Elastic operator-(Tensor4Elastic a, const Tensor4Elastic& b) { return a -= b; }
Tensor4Elastic operator*(double s, Tensor4Elastic a) { return a *= s; }
Tensor4Elastic operator-(Tensor4Elastic a) { return a *= -1.0; }

// -- Tensor6SGE -------------------------------------------------------------------

Tensor6SGE Tensor6SGE::from_full(Dim d, std::span<const double> full, double rel_tol) {
    require_size(d, 6, full.size());
    validate_orbits<6, 8>(d, full, rel_tol, sge_orbit, "sixth-order nonlocal");
    return from_nearly_symmetric(d, full);
}

Tensor6SGE Tensor6SGE::from_nearly_symmetric(Dim d, std::span<const double> full) {
    require_size(d, 6, full.size());
    Tensor6SGE t(d);
    fill_from_canonical<6, 8>(d, full, sge_orbit, [&](const Index<6>& x, double v) {
        t.set(x[0], x[1], x[2], x[3], x[4], x[5], v);
    });
    return t;
}

Tensor6SGE Tensor6SGE::from_subspace(Dim d, const Eigen::MatrixXd& m) {
    const Eigen::MatrixXd B = chi_basis(d);
    if (m.rows() != B.cols() || m.cols() != B.cols()) throw DimensionError("from_subspace: wrong matrix size");
    const Eigen::MatrixXd full = B * m * B.transpose();
    const int n3 = d.n() * d.n() * d.n();
    std::vector<double> flat(static_cast<std::size_t>(n3 * n3));
    for (int p = 0; p < n3; ++p)
        for (int q = 0; q < n3; ++q) flat[static_cast<std::size_t>(p * n3 + q)] = full(p, q);
    return from_nearly_symmetric(d, flat);
}

void Tensor6SGE::set(int i, int j, int k, int l, int m, int n, double v) {
    for (const auto& img : sge_orbit({i, j, k, l, m, n})) put(img, v);
}

Eigen::MatrixXd Tensor6SGE::to_subspace() const {
    const Eigen::MatrixXd B = chi_basis(dim());
    const int n3 = dim().n() * dim().n() * dim().n();
    const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> full(
        components().data(), n3, n3);
    Eigen::MatrixXd m = B.transpose() * full * B;
    return 0.5 * (m + m.transpose());
}

Tensor6SGE& Tensor6SGE::operator+=(const Tensor6SGE& o) {
    require_same_dim(dim(), o.dim(), "Tensor6SGE +");
    for (std::size_t k = 0; k < size(); ++k) raw()[k] += o.raw()[k];
    return *this;
}

Tensor6SGE& Tensor6SGE::operator-=(const Tensor6SGE& o) {
    require_same_dim(dim(), o.dim(), "Tensor6SGE -");
    for (std::size_t k = 0; k < size(); ++k) raw()[k] -= o.raw()[k];
    return *this;
}

Tensor6SGE& Tensor6SGE::operator*=(double s) {
    for (double& v : raw()) v *= s;
    return *this;
}

Tensor6SGE operator+(Tensor6SGE a, const Tensor6SGE& b) { return a += b; }
Tensor6SGE operator-(Tensor6SGE a, const Tensor6SGE& b) { return a -= b; }
Tensor6SGE operator*(double s, Tensor6SGE a) { return a *= s; }

// -- bases ----------------------------------------------------------------------------

Eigen::MatrixXd sym2_basis(Dim d) {
    const int n = d.n();
    const int m = n * (n + 1) / 2;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n * n, m);
    int col = 0;
    for (int i = 0; i < n; ++i) B(i * n + i, col++) = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            B(i * n + j, col) = kInvSqrt2;
            B(j * n + i, col) = kInvSqrt2;
            ++col;
        }
    return B;
}

Eigen::MatrixXd chi_basis(Dim d) {
    const int n = d.n();
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n * n * n, n * n * (n + 1) / 2);
    int col = 0;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) B((i * n + i) * n + k, col++) = 1.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                B((i * n + j) * n + k, col) = kInvSqrt2;
                B((j * n + i) * n + k, col) = kInvSqrt2;
                ++col;
            }
    }
    return B;
}

Eigen::MatrixXd beta_basis(Dim d) {
    const int n = d.n();
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n * n * n, n * n * (n + 1) / 2);
    int col = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) B((i * n + j) * n + j, col++) = 1.0;
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                B((i * n + j) * n + k, col) = kInvSqrt2;
                B((i * n + k) * n + j, col) = kInvSqrt2;
                ++col;
            }
    }
    return B;
}

template <PairSym P>
Eigen::VectorXd to_coordinates(const PairSymTensor3<P>& t) {
    const Eigen::MatrixXd B = P == PairSym::First ? chi_basis(t.dim()) : beta_basis(t.dim());
    const Eigen::Map<const Eigen::VectorXd> v(t.components().data(), static_cast<Eigen::Index>(t.size()));
    return B.transpose() * v;
}

template <PairSym P>
PairSymTensor3<P> from_coordinates(Dim d, const Eigen::VectorXd& coords) {
    const Eigen::MatrixXd B = P == PairSym::First ? chi_basis(d) : beta_basis(d);
    if (coords.size() != B.cols()) throw DimensionError("from_coordinates: wrong coordinate count");
    const Eigen::VectorXd full = B * coords;
    return PairSymTensor3<P>::from_full(d, std::span<const double>(full.data(), static_cast<std::size_t>(full.size())),
                                        1e-14);
}

template Eigen::VectorXd to_coordinates(const CurvatureTensor&);
template Eigen::VectorXd to_coordinates(const BetaField&);
template CurvatureTensor from_coordinates<PairSym::First>(Dim, const Eigen::VectorXd&);
template BetaField from_coordinates<PairSym::Last>(Dim, const Eigen::VectorXd&);

// -- constructors -------------------------------------------------------------------

Tensor4Elastic make_isotropic_C(double lambda, double mu, Dim d) {
    const int n = d.n();
    Tensor4Elastic C(d);
    auto delta = [](int a, int b) { return a == b ? 1 : 0; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int h = 0; h < n; ++h)
                for (int k = 0; k < n; ++k) {
                    const int dd = delta(i, j) * delta(h, k);
                    const int shear = delta(i, h) * delta(j, k) + delta(i, k) * delta(j, h);
                    C.set(i, j, h, k, lambda * dd + mu * shear);
                }
    return C;
}

Tensor6SGE make_isotropic_A(const std::array<double, 5>& a, Dim d) {
    const int n = d.n();
    Tensor6SGE A(d);
    auto D = [](int p, int q) { return p == q ? 1 : 0; };
    // Integer multiplicities of each basis tensor keep every symmetric image bit-identical.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int h = 0; h < n; ++h)
                for (int l = 0; l < n; ++l)
                    for (int m = 0; m < n; ++m)
                        for (int r = 0; r < n; ++r) {
                            const int k1 = D(i, j) * (D(h, l) * D(m, r) + D(h, m) * D(l, r)) +
                                           D(l, m) * (D(i, r) * D(j, h) + D(i, h) * D(j, r));
                            const int k2 = D(i, h) * (D(j, l) * D(m, r) + D(j, m) * D(l, r)) +
                                           D(j, h) * (D(i, l) * D(m, r) + D(i, m) * D(l, r));
                            const int k3 = D(i, j) * D(h, r) * D(l, m);
                            const int k4 = (D(i, l) * D(j, m) + D(i, m) * D(j, l)) * D(h, r);
                            const int k5 = D(i, r) * (D(j, l) * D(h, m) + D(j, m) * D(h, l)) +
                                           D(j, r) * (D(i, l) * D(h, m) + D(i, m) * D(h, l));
                            const double v = 0.5 * a[0] * k1 + 0.5 * a[1] * k2 + 2.0 * a[2] * k3 + a[3] * k4 +
                                             0.5 * a[4] * k5;
                            A.set(i, j, h, l, m, r, v);
                        }
    return A;
}

// -- contractions ---------------------------------------------------------------------

Tensor2Sym contract(const Tensor4Elastic& C, const Tensor2Sym& eps) {
    require_same_dim(C.dim(), eps.dim(), "contract(C, eps)");
    const int n = C.dim().n();
    Tensor2Sym sigma(C.dim());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int h = 0; h < n; ++h)
                for (int k = 0; k < n; ++k) s += C(i, j, h, k) * eps(h, k);
            sigma.set(i, j, s);
        }
    return sigma;
}

CurvatureTensor contract(const Tensor6SGE& A, const CurvatureTensor& chi) {
    require_same_dim(A.dim(), chi.dim(), "contract(A, chi)");
    const int n = A.dim().n();
    CurvatureTensor tau(A.dim());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    for (int m = 0; m < n; ++m)
                        for (int r = 0; r < n; ++r) s += A(i, j, k, l, m, r) * chi(l, m, r);
                tau.set(i, j, k, s);
            }
    return tau;
}

Tensor4Elastic sandwich(const Tensor4Elastic& outer, const Tensor4Elastic& inner) {
    require_same_dim(outer.dim(), inner.dim(), "sandwich");
    const Eigen::MatrixXd mo = outer.to_mandel();
    Eigen::MatrixXd m = mo * inner.to_mandel() * mo;
    m = 0.5 * (m + m.transpose());
    return Tensor4Elastic::from_mandel(outer.dim(), m);
}

// -- spectra and inverses ------------------------------------------------------------

namespace {

double min_eigenvalue(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& m, double norm, const char* what) {
    const double lo = min_eigenvalue(m);
    if (!(lo > kPdRelTol * norm)) {
        std::ostringstream os;
        os.precision(17);
        os << what << ": operator is not positive definite on its symmetric subspace (smallest eigenvalue " << lo
           << ", norm " << norm << ")";
        throw NotPositiveDefiniteError(os.str());
    }
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
    return 0.5 * (inv + inv.transpose());
}

} // namespace

double eig_min_on_sym(const Tensor4Elastic& C) { return min_eigenvalue(C.to_mandel()); }

double eig_min_on_sym(const Tensor6SGE& A) { return min_eigenvalue(A.to_subspace()); }

Tensor4Elastic invert_on_sym(const Tensor4Elastic& C) {
    return Tensor4Elastic::from_mandel(C.dim(), spd_inverse(C.to_mandel(), C.norm(), "invert_on_sym"));
}

Tensor6SGE invert_A_on_sym(const Tensor6SGE& A) {
    return Tensor6SGE::from_subspace(A.dim(), spd_inverse(A.to_subspace(), A.norm(), "invert_A_on_sym"));
}

} // namespace sgehom
