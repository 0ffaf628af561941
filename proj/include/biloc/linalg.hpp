#pragma once

// Fixed-size dense linear algebra for one- and two-qubit operators.
//
// Everything here is sized at compile time: 2x2 and 4x4 complex operators,
// the 16x16 four-qubit operator used by the reference Born evaluation, and
// 3x3 real matrices for Bloch-space geometry. Storage is row-major.

#include <array>
#include <complex>
#include <cstddef>

namespace biloc {

using cplx = std::complex<double>;

template <std::size_t N>
struct CMat {
    std::array<cplx, N * N> a{};

    static constexpr std::size_t dim = N;

    cplx& operator()(std::size_t r, std::size_t c) { return a[r * N + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a[r * N + c]; }

    static CMat identity() {
        CMat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }
};

using Mat2 = CMat<2>;
using Mat4 = CMat<4>;
using Mat16 = CMat<16>;

template <std::size_t N>
using CVec = std::array<cplx, N>;

using Vec3 = std::array<double, 3>;

struct Mat3 {
    std::array<double, 9> a{};

    double& operator()(std::size_t r, std::size_t c) { return a[r * 3 + c]; }
    double operator()(std::size_t r, std::size_t c) const { return a[r * 3 + c]; }

    static Mat3 identity() {
        Mat3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
        return m;
    }
    Vec3 column(std::size_t c) const { return {a[c], a[3 + c], a[6 + c]}; }
    void set_column(std::size_t c, const Vec3& v) {
        a[c] = v[0];
        a[3 + c] = v[1];
        a[6 + c] = v[2];
    }
};

// --- generic complex operator algebra ---------------------------------------

template <std::size_t N>
CMat<N> operator*(const CMat<N>& x, const CMat<N>& y) {
    CMat<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k) {
            const cplx xik = x(i, k);
            if (xik == cplx{}) continue;
            for (std::size_t j = 0; j < N; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

template <std::size_t N>
CMat<N> operator+(const CMat<N>& x, const CMat<N>& y) {
    CMat<N> r;
    for (std::size_t i = 0; i < N * N; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

template <std::size_t N>
CMat<N> operator-(const CMat<N>& x, const CMat<N>& y) {
    CMat<N> r;
    for (std::size_t i = 0; i < N * N; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

template <std::size_t N>
CMat<N> operator*(cplx s, const CMat<N>& x) {
    CMat<N> r;
    for (std::size_t i = 0; i < N * N; ++i) r.a[i] = s * x.a[i];
    return r;
}

template <std::size_t N>
CMat<N> adjoint(const CMat<N>& x) {
    CMat<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(x(j, i));
    return r;
}

template <std::size_t N>
cplx trace(const CMat<N>& x) {
    cplx t{};
    for (std::size_t i = 0; i < N; ++i) t += x(i, i);
    return t;
}

template <std::size_t N>
CVec<N> operator*(const CMat<N>& x, const CVec<N>& v) {
    CVec<N> r{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r[i] += x(i, j) * v[j];
    return r;
}

template <std::size_t N>
cplx inner(const CVec<N>& u, const CVec<N>& v) {
    cplx s{};
    for (std::size_t i = 0; i < N; ++i) s += std::conj(u[i]) * v[i];
    return s;
}

/// Largest entrywise modulus of x - y.
template <std::size_t N>
double max_abs_diff(const CMat<N>& x, const CMat<N>& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < N * N; ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
    return m;
}

template <std::size_t N>
double hermiticity_defect(const CMat<N>& x) {
    return max_abs_diff(x, adjoint(x));
}

template <std::size_t N>
bool is_unitary(const CMat<N>& u, double tol) {
    return max_abs_diff(adjoint(u) * u, CMat<N>::identity()) <= tol;
}

template <std::size_t N, std::size_t M>
CMat<N * M> kron(const CMat<N>& x, const CMat<M>& y) {
    CMat<N * M> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t k = 0; k < M; ++k)
                for (std::size_t l = 0; l < M; ++l) r(i * M + k, j * M + l) = x(i, j) * y(k, l);
    return r;
}

template <std::size_t N, std::size_t M>
CVec<N * M> kron(const CVec<N>& x, const CVec<M>& y) {
    CVec<N * M> r{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < M; ++k) r[i * M + k] = x[i] * y[k];
    return r;
}

template <std::size_t N>
CMat<N> outer(const CVec<N>& u, const CVec<N>& v) {
    CMat<N> r;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r(i, j) = u[i] * std::conj(v[j]);
    return r;
}

// --- Pauli matrices ----------------------------------------------------------

/// Pauli matrix by index: 0 = identity, 1 = X, 2 = Y, 3 = Z.
const Mat2& pauli(int index);

/// v . sigma for a real 3-vector.
Mat2 bloch_operator(const Vec3& v);

/// sigma_i (x) sigma_j with 0 = identity.
Mat4 pauli_product(int i, int j);

// --- 3x3 real geometry -------------------------------------------------------

Mat3 operator*(const Mat3& x, const Mat3& y);
Vec3 operator*(const Mat3& x, const Vec3& v);
Mat3 transpose(const Mat3& x);
double determinant(const Mat3& x);
double dot(const Vec3& x, const Vec3& y);
Vec3 cross(const Vec3& x, const Vec3& y);
double norm(const Vec3& x);
double max_abs_diff(const Mat3& x, const Mat3& y);

// --- eigen / singular value kernels -----------------------------------------

/// Cyclic Jacobi on a real symmetric N x N matrix (row-major).
/// Eigenvalues are returned ascending; column k of `vectors` belongs to values[k].
template <std::size_t N>
struct SymmetricEigen {
    std::array<double, N> values{};
    std::array<double, N * N> vectors{};
    int sweeps = 0;
};

template <std::size_t N>
SymmetricEigen<N> jacobi_eigen(std::array<double, N * N> m);

extern template SymmetricEigen<3> jacobi_eigen<3>(std::array<double, 9>);
extern template SymmetricEigen<8> jacobi_eigen<8>(std::array<double, 64>);

/// Eigenvalues of a 4x4 Hermitian matrix, ascending. Uses the real 8x8
/// embedding [[Re, -Im], [Im, Re]] whose spectrum is that of h doubled.
std::array<double, 4> hermitian_eigenvalues(const Mat4& h);

/// Thin SVD of a real 3x3 matrix by one-sided (Hestenes) Jacobi.
/// m == left * diag(values) * transpose(right); values descending, >= 0.
struct Svd3 {
    Vec3 values{};
    Mat3 left;
    Mat3 right;
};
Svd3 svd3(const Mat3& m);

// --- unitaries ---------------------------------------------------------------

/// exp(i h) for Hermitian h, by scaling and squaring of a Taylor series.
Mat4 expm_i_hermitian(const Mat4& h);

/// exp(-i (r . sigma) / 2): rotates Bloch vectors by |r| about r / |r|.
Mat2 su2_from_rotation_vector(const Vec3& r);

/// Single-qubit unitary W with W (n . sigma) W^dagger = (R n) . sigma for a
/// proper rotation R. Quaternion extraction by Shepperd's method.
Mat2 unitary_from_rotation(const Mat3& rotation);

/// Proper rotation R induced by a single-qubit unitary (inverse of the above
/// up to the global phase of w).
Mat3 rotation_from_unitary(const Mat2& w);

}  // namespace biloc
