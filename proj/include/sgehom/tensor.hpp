#pragma once

// Dense tensors with the index symmetries of second-gradient elasticity.
//
// Components are stored as full row-major arrays (n^order entries, n <= 3).
// Every write goes through set(), which writes all symmetric images of the
// index tuple, so a tensor can never hold an asymmetric state.
// Indices are zero-based.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sgehom/error.hpp"

namespace sgehom {

/// Spatial dimension, 2 (plane problems) or 3.
class Dim {
public:
    explicit Dim(int n);
    int n() const { return n_; }
    friend bool operator==(Dim a, Dim b) { return a.n_ == b.n_; }

private:
    int n_;
};

void require_same_dim(Dim a, Dim b, const char* what);

template <std::size_t Order>
using Index = std::array<int, Order>;

namespace detail {

/// Common storage for all tensor types: dimension and full component array.
template <std::size_t Order>
class DenseStorage {
public:
    static constexpr std::size_t order = Order;

    explicit DenseStorage(Dim d) : dim_(d), c_(size_for(d), 0.0) {}

    Dim dim() const { return dim_; }
    std::span<const double> components() const { return c_; }
    std::size_t size() const { return c_.size(); }

    /// Frobenius norm over all components.
    double norm() const;
    double max_abs() const;

    static std::size_t size_for(Dim d) {
        std::size_t s = 1;
        for (std::size_t k = 0; k < Order; ++k) s *= static_cast<std::size_t>(d.n());
        return s;
    }

    std::size_t flat(const Index<Order>& idx) const {
        std::size_t f = 0;
        for (int v : idx) f = f * static_cast<std::size_t>(dim_.n()) + static_cast<std::size_t>(v);
        return f;
    }

    Index<Order> unflat(std::size_t f) const {
        Index<Order> idx{};
        for (std::size_t k = Order; k-- > 0;) {
            idx[k] = static_cast<int>(f % static_cast<std::size_t>(dim_.n()));
            f /= static_cast<std::size_t>(dim_.n());
        }
        return idx;
    }

protected:
    double at(const Index<Order>& idx) const { return c_[flat(idx)]; }
    void put(const Index<Order>& idx, double v) { c_[flat(idx)] = v; }
    std::vector<double>& raw() { return c_; }
    const std::vector<double>& raw() const { return c_; }

private:
    Dim dim_;
    std::vector<double> c_;
};

} // namespace detail

/// Symmetric second-order tensor (strain, stress, Euler tensor, identity).
class Tensor2Sym : public detail::DenseStorage<2> {
public:
    explicit Tensor2Sym(Dim d) : DenseStorage(d) {}
    static Tensor2Sym identity(Dim d);
    /// Validates symmetry of a full n*n array (relative tolerance on max |entry|).
    static Tensor2Sym from_full(Dim d, std::span<const double> full, double rel_tol = 0.0);

    double operator()(int i, int j) const { return at({i, j}); }
    void set(int i, int j, double v);

    double trace() const;

    Tensor2Sym& operator+=(const Tensor2Sym& o);
    Tensor2Sym& operator-=(const Tensor2Sym& o);
    Tensor2Sym& operator*=(double s);
};

Tensor2Sym operator+(Tensor2Sym a, const Tensor2Sym& b);
Tensor2Sym operator-(Tensor2Sym a, const Tensor2Sym& b);
Tensor2Sym operator*(double s, Tensor2Sym a);
/// a_ij b_ij
double ddot(const Tensor2Sym& a, const Tensor2Sym& b);

/// Which index pair of a third-order tensor is symmetric.
enum class PairSym {
    First, ///< T_ijk = T_jik (curvature chi, double stress tau)
    Last,  ///< T_ijk = T_ikj (quadratic displacement coefficients beta)
};

template <PairSym P>
class PairSymTensor3 : public detail::DenseStorage<3> {
public:
    static constexpr PairSym sym_pair = P;

    explicit PairSymTensor3(Dim d) : DenseStorage(d) {}
    static PairSymTensor3 from_full(Dim d, std::span<const double> full, double rel_tol = 0.0);

    double operator()(int i, int j, int k) const { return at({i, j, k}); }
    void set(int i, int j, int k, double v) {
        put({i, j, k}, v);
        if constexpr (P == PairSym::First) put({j, i, k}, v);
        else put({i, k, j}, v);
    }

    PairSymTensor3& operator+=(const PairSymTensor3& o);
    PairSymTensor3& operator*=(double s);
};

using CurvatureTensor = PairSymTensor3<PairSym::First>;
using BetaField = PairSymTensor3<PairSym::Last>;

template <PairSym P>
PairSymTensor3<P> operator+(PairSymTensor3<P> a, const PairSymTensor3<P>& b) { return a += b; }
template <PairSym P>
PairSymTensor3<P> operator*(double s, PairSymTensor3<P> a) { return a *= s; }
/// a_ijk b_ijk
template <PairSym P>
double ddot(const PairSymTensor3<P>& a, const PairSymTensor3<P>& b);

/// Fourth-order tensor with minor and major symmetries (local stiffness).
class Tensor4Elastic : public detail::DenseStorage<4> {
public:
    explicit Tensor4Elastic(Dim d) : DenseStorage(d) {}

    /// Validates minor and major symmetries of a full n^4 array. On failure the
    /// SymmetryError message names the offending index tuples.
    static Tensor4Elastic from_full(Dim d, std::span<const double> full, double rel_tol = 0.0);
    /// Takes, for every symmetry orbit, the value at its canonical index and
    /// writes it to the whole orbit. Use only when `full` is symmetric up to roundoff.
    static Tensor4Elastic from_nearly_symmetric(Dim d, std::span<const double> full);
    /// Builds the tensor whose restriction to symmetric tensors has the given
    /// matrix in the orthonormal Mandel basis.
    static Tensor4Elastic from_mandel(Dim d, const Eigen::MatrixXd& m);

    double operator()(int i, int j, int h, int k) const { return at({i, j, h, k}); }
    void set(int i, int j, int h, int k, double v);

    /// Matrix of the operator restricted to symmetric tensors (Mandel basis).
    Eigen::MatrixXd to_mandel() const;

    Tensor4Elastic& operator+=(const Tensor4Elastic& o);
    Tensor4Elastic& operator-=(const Tensor4Elastic& o);
    Tensor4Elastic& operator*=(double s);
};

Tensor4Elastic operator+(Tensor4Elastic a, const Tensor4Elastic& b);
Tensor4Elastic operator-(Tensor4Elastic a, const Tensor4Elastic& b);
Tensor4Elastic operator*(double s, Tensor4Elastic a);
Tensor4Elastic operator-(Tensor4Elastic a);

/// Sixth-order nonlocal stiffness: A_ijklmn = A_jiklmn = A_ijkmln = A_lmnijk.
class Tensor6SGE : public detail::DenseStorage<6> {
public:
    explicit Tensor6SGE(Dim d) : DenseStorage(d) {}

    static Tensor6SGE from_full(Dim d, std::span<const double> full, double rel_tol = 0.0);
    static Tensor6SGE from_nearly_symmetric(Dim d, std::span<const double> full);
    /// Inverse of to_subspace(): matrix in the orthonormal basis of tensors
    /// symmetric in their first index pair.
    static Tensor6SGE from_subspace(Dim d, const Eigen::MatrixXd& m);

    double operator()(int i, int j, int k, int l, int m, int n) const { return at({i, j, k, l, m, n}); }
    void set(int i, int j, int k, int l, int m, int n, double v);

    Eigen::MatrixXd to_subspace() const;

    Tensor6SGE& operator+=(const Tensor6SGE& o);
    Tensor6SGE& operator-=(const Tensor6SGE& o);
    Tensor6SGE& operator*=(double s);
};

Tensor6SGE operator+(Tensor6SGE a, const Tensor6SGE& b);
Tensor6SGE operator-(Tensor6SGE a, const Tensor6SGE& b);
Tensor6SGE operator*(double s, Tensor6SGE a);

// -- symmetry orbits ---------------------------------------------------------

/// All index tuples that must share a value with `idx` in a Tensor4Elastic.
std::array<Index<4>, 8> elastic_orbit(const Index<4>& idx);
/// All index tuples that must share a value with `idx` in a Tensor6SGE.
std::array<Index<6>, 8> sge_orbit(const Index<6>& idx);

/// Largest |T(image) - T(idx)| over all orbits of a raw n^4 (or n^6) array.
double elastic_symmetry_defect(Dim d, std::span<const double> full);
double sge_symmetry_defect(Dim d, std::span<const double> full);

// -- orthonormal bases of the physically symmetric subspaces ----------------

/// Columns: orthonormal basis of symmetric second-order tensors, as n^2 vectors
/// (off-diagonal pairs carry 1/sqrt2, so coordinates are Mandel coordinates).
Eigen::MatrixXd sym2_basis(Dim d);
/// Columns: orthonormal basis of third-order tensors with T_ijk = T_jik (n^3 vectors).
Eigen::MatrixXd chi_basis(Dim d);
/// Columns: orthonormal basis of third-order tensors with T_ijk = T_ikj (n^3 vectors).
Eigen::MatrixXd beta_basis(Dim d);

template <PairSym P>
Eigen::VectorXd to_coordinates(const PairSymTensor3<P>& t);
template <PairSym P>
PairSymTensor3<P> from_coordinates(Dim d, const Eigen::VectorXd& coords);

// -- constructors and operations --------------------------------------------

/// lambda d_ij d_hk + mu (d_ih d_jk + d_ik d_jh)
Tensor4Elastic make_isotropic_C(double lambda, double mu, Dim d);
/// Five-constant isotropic nonlocal tensor of Mindlin's theory.
Tensor6SGE make_isotropic_A(const std::array<double, 5>& a, Dim d);

/// sigma_ij = C_ijhk eps_hk
Tensor2Sym contract(const Tensor4Elastic& C, const Tensor2Sym& eps);
/// tau_ijk = A_ijklmn chi_lmn
CurvatureTensor contract(const Tensor6SGE& A, const CurvatureTensor& chi);

/// outer : inner : outer, i.e. O_ijlm I_lmpq O_pqhk.
Tensor4Elastic sandwich(const Tensor4Elastic& outer, const Tensor4Elastic& inner);

/// Smallest eigenvalue of C restricted to symmetric second-order tensors.
double eig_min_on_sym(const Tensor4Elastic& C);
/// Smallest eigenvalue of A restricted to tensors symmetric in the first pair.
double eig_min_on_sym(const Tensor6SGE& A);

/// Relative threshold for positive-definiteness decisions: an operator is
/// positive definite when its smallest restricted eigenvalue exceeds
/// kPdRelTol * (Frobenius norm).
inline constexpr double kPdRelTol = 1e-10;

/// Inverse on symmetric tensors. Throws NotPositiveDefiniteError unless C is
/// positive definite there.
Tensor4Elastic invert_on_sym(const Tensor4Elastic& C);
/// Inverse on first-pair-symmetric tensors. Throws NotPositiveDefiniteError
/// unless A is positive definite there.
Tensor6SGE invert_A_on_sym(const Tensor6SGE& A);

} // namespace sgehom
