#include "biloc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace biloc {

namespace {

constexpr double kJacobiThreshold = 1e-14;
constexpr int kMaxSweeps = 100;

Mat2 make_paulis(int index) {
    Mat2 m;
    switch (index) {
        case 0: m(0, 0) = 1.0; m(1, 1) = 1.0; break;
        case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case 2: m(0, 1) = cplx(0, -1); m(1, 0) = cplx(0, 1); break;
        default: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    }
    return m;
}

const std::array<Mat2, 4> kPaulis = {make_paulis(0), make_paulis(1), make_paulis(2), make_paulis(3)};

}  // namespace

const Mat2& pauli(int index) { return kPaulis.at(static_cast<std::size_t>(index)); }

Mat2 bloch_operator(const Vec3& v) {
    Mat2 m;
    m(0, 0) = v[2];
    m(1, 1) = -v[2];
    m(0, 1) = cplx(v[0], -v[1]);
    m(1, 0) = cplx(v[0], v[1]);
    return m;
}

Mat4 pauli_product(int i, int j) { return kron(pauli(i), pauli(j)); }

Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) r(i, j) += x(i, k) * y(k, j);
    return r;
}

Vec3 operator*(const Mat3& x, const Vec3& v) {
    Vec3 r{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 3; ++k) r[i] += x(i, k) * v[k];
    return r;
}

Mat3 transpose(const Mat3& x) {
    Mat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = x(j, i);
    return r;
}

double determinant(const Mat3& x) {
    return x(0, 0) * (x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1)) -
           x(0, 1) * (x(1, 0) * x(2, 2) - x(1, 2) * x(2, 0)) +
           x(0, 2) * (x(1, 0) * x(2, 1) - x(1, 1) * x(2, 0));
}

double dot(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

Vec3 cross(const Vec3& x, const Vec3& y) {
    return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

double norm(const Vec3& x) { return std::sqrt(dot(x, x)); }

double max_abs_diff(const Mat3& x, const Mat3& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < 9; ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
    return m;
}

template <std::size_t N>
SymmetricEigen<N> jacobi_eigen(std::array<double, N * N> m) {
    SymmetricEigen<N> out;
    auto& v = out.vectors;
    v.fill(0.0);
    for (std::size_t i = 0; i < N; ++i) v[i * N + i] = 1.0;

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                if (i != j) s += m[i * N + j] * m[i * N + j];
        return std::sqrt(s);
    };

    int sweep = 0;
    for (; sweep < kMaxSweeps && off_norm() >= kJacobiThreshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double apq = m[p * N + q];
                if (apq == 0.0) continue;
                const double app = m[p * N + p];
                const double aqq = m[q * N + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < N; ++k) {
                    const double mkp = m[k * N + p];
                    const double mkq = m[k * N + q];
                    m[k * N + p] = c * mkp - s * mkq;
                    m[k * N + q] = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const double mpk = m[p * N + k];
                    const double mqk = m[q * N + k];
                    m[p * N + k] = c * mpk - s * mqk;
                    m[q * N + k] = s * mpk + c * mqk;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const double vkp = v[k * N + p];
                    const double vkq = v[k * N + q];
                    v[k * N + p] = c * vkp - s * vkq;
                    v[k * N + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    out.sweeps = sweep;

    std::array<std::size_t, N> order;
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return m[x * N + x] < m[y * N + y]; });
    std::array<double, N * N> sorted{};
    for (std::size_t k = 0; k < N; ++k) {
        out.values[k] = m[order[k] * N + order[k]];
        for (std::size_t r = 0; r < N; ++r) sorted[r * N + k] = v[r * N + order[k]];
    }
    v = sorted;
    return out;
}

template SymmetricEigen<3> jacobi_eigen<3>(std::array<double, 9>);
template SymmetricEigen<8> jacobi_eigen<8>(std::array<double, 64>);

std::array<double, 4> hermitian_eigenvalues(const Mat4& h) {
    std::array<double, 64> e{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const double re = 0.5 * (h(i, j).real() + h(j, i).real());
            const double im = 0.5 * (h(i, j).imag() - h(j, i).imag());
            e[i * 8 + j] = re;
            e[(i + 4) * 8 + (j + 4)] = re;
            e[i * 8 + (j + 4)] = -im;
            e[(i + 4) * 8 + j] = im;
        }
    const auto eig = jacobi_eigen<8>(e);
    std::array<double, 4> out{};
    for (std::size_t k = 0; k < 4; ++k) out[k] = 0.5 * (eig.values[2 * k] + eig.values[2 * k + 1]);
    return out;
}

namespace {

// Unit vector orthogonal to the given (orthonormal) ones, built from the
// coordinate axis that survives Gram-Schmidt best.
Vec3 complete_basis(const std::array<Vec3, 3>& basis, std::size_t count) {
    Vec3 best{};
    double bestNorm = -1.0;
    for (std::size_t axis = 0; axis < 3; ++axis) {
        Vec3 e{};
        e[axis] = 1.0;
        for (std::size_t k = 0; k < count; ++k) {
            const double d = dot(e, basis[k]);
            for (std::size_t i = 0; i < 3; ++i) e[i] -= d * basis[k][i];
        }
        const double n = norm(e);
        if (n > bestNorm + 1e-12) {
            bestNorm = n;
            best = e;
        }
    }
    for (double& x : best) x /= bestNorm;
    return best;
}

// Index of the entry with largest modulus; earliest wins near-ties.
std::size_t dominant_index(const Vec3& v) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(v[i]) > std::abs(v[k]) + 1e-12) k = i;
    return k;
}

}  // namespace

Svd3 svd3(const Mat3& m) {
    // Columns of w converge to left[:, k] * s_k.
    std::array<Vec3, 3> w{m.column(0), m.column(1), m.column(2)};
    std::array<Vec3, 3> v{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = i + 1; j < 3; ++j) {
                const double alpha = dot(w[i], w[i]);
                const double beta = dot(w[j], w[j]);
                const double gamma = dot(w[i], w[j]);
                if (alpha == 0.0 || beta == 0.0) continue;
                const double rel = std::abs(gamma) / std::sqrt(alpha * beta);
                off = std::max(off, rel);
                if (rel < kJacobiThreshold * 1e-1 || gamma == 0.0) continue;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t k = 0; k < 3; ++k) {
                    const double wi = w[i][k];
                    const double wj = w[j][k];
                    w[i][k] = c * wi - s * wj;
                    w[j][k] = s * wi + c * wj;
                    const double vi = v[i][k];
                    const double vj = v[j][k];
                    v[i][k] = c * vi - s * vj;
                    v[j][k] = s * vi + c * vj;
                }
            }
        }
        if (off < kJacobiThreshold) break;
    }

    struct Triple {
        double s;
        Vec3 u;
        Vec3 v;
    };
    std::array<Triple, 3> t;
    for (std::size_t k = 0; k < 3; ++k) t[k] = {norm(w[k]), w[k], v[k]};

    // Descending values; near-ties ordered lexicographically on the right
    // vector, after each vector's dominant entry has been made positive.
    for (auto& x : t) {
        const std::size_t d = dominant_index(x.v);
        if (x.v[d] < 0) {
            for (double& e : x.v) e = -e;
            for (double& e : x.u) e = -e;
        }
    }
    std::stable_sort(t.begin(), t.end(), [](const Triple& a, const Triple& b) {
        if (std::abs(a.s - b.s) > 1e-12) return a.s > b.s;
        return a.v > b.v;
    });

    std::array<Vec3, 3> left{};
    std::size_t defined = 0;
    constexpr double kTiny = 1e-14;
    for (std::size_t k = 0; k < 3; ++k) {
        if (t[k].s > kTiny) {
            for (std::size_t i = 0; i < 3; ++i) left[k][i] = t[k].u[i] / t[k].s;
            ++defined;
        } else {
            left[k] = complete_basis(left, k);
            ++defined;
        }
    }

    Svd3 out;
    for (std::size_t k = 0; k < 3; ++k) {
        // Tied values may sit a rounding error out of order after the
        // tie-break; clamp so the sequence is exactly non-increasing.
        out.values[k] = k == 0 ? t[k].s : std::min(t[k].s, out.values[k - 1]);
        out.left.set_column(k, left[k]);
        out.right.set_column(k, t[k].v);
    }
    // Keep the right frame proper by flipping the third pair jointly; the
    // product left * diag * right^T is unchanged.
    if (determinant(out.right) < 0) {
        out.left.set_column(2, Vec3{-left[2][0], -left[2][1], -left[2][2]});
        out.right.set_column(2, Vec3{-t[2].v[0], -t[2].v[1], -t[2].v[2]});
    }
    return out;
}

Mat4 expm_i_hermitian(const Mat4& h) {
    Mat4 a = cplx(0, 1) * h;
    double n1 = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < 4; ++i) col += std::abs(a(i, j));
        n1 = std::max(n1, col);
    }
    int squarings = 0;
    if (n1 > 0.25) squarings = static_cast<int>(std::ceil(std::log2(n1 / 0.25)));
    a = cplx(std::ldexp(1.0, -squarings), 0) * a;

    Mat4 result = Mat4::identity();
    Mat4 term = Mat4::identity();
    for (int k = 1; k <= 18; ++k) {
        term = cplx(1.0 / k, 0) * (term * a);
        result = result + term;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

Mat2 su2_from_rotation_vector(const Vec3& r) {
    const double theta = norm(r);
    Mat2 u = Mat2::identity();
    if (theta == 0.0) return u;
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2) / theta;
    u(0, 0) = cplx(c, -s * r[2]);
    u(1, 1) = cplx(c, s * r[2]);
    u(0, 1) = cplx(-s * r[1], -s * r[0]);
    u(1, 0) = cplx(s * r[1], -s * r[0]);
    return u;
}

Mat2 unitary_from_rotation(const Mat3& r) {
    // Quaternion (w, x, y, z) of the rotation; W = w 1 - i (x X + y Y + z Z).
    const double tr = r(0, 0) + r(1, 1) + r(2, 2);
    double w, x, y, z;
    if (tr > 0) {
        const double s = 2.0 * std::sqrt(tr + 1.0);
        w = 0.25 * s;
        x = (r(2, 1) - r(1, 2)) / s;
        y = (r(0, 2) - r(2, 0)) / s;
        z = (r(1, 0) - r(0, 1)) / s;
    } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
        const double s = 2.0 * std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2));
        w = (r(2, 1) - r(1, 2)) / s;
        x = 0.25 * s;
        y = (r(0, 1) + r(1, 0)) / s;
        z = (r(0, 2) + r(2, 0)) / s;
    } else if (r(1, 1) > r(2, 2)) {
        const double s = 2.0 * std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2));
        w = (r(0, 2) - r(2, 0)) / s;
        x = (r(0, 1) + r(1, 0)) / s;
        y = 0.25 * s;
        z = (r(1, 2) + r(2, 1)) / s;
    } else {
        const double s = 2.0 * std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1));
        w = (r(1, 0) - r(0, 1)) / s;
        x = (r(0, 2) + r(2, 0)) / s;
        y = (r(1, 2) + r(2, 1)) / s;
        z = 0.25 * s;
    }
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    w /= n;
    x /= n;
    y /= n;
    z /= n;
    Mat2 u;
    u(0, 0) = cplx(w, -z);
    u(1, 1) = cplx(w, z);
    u(0, 1) = cplx(-y, -x);
    u(1, 0) = cplx(y, -x);
    return u;
}

Mat3 rotation_from_unitary(const Mat2& w) {
    Mat3 r;
    const Mat2 wd = adjoint(w);
    for (int j = 1; j <= 3; ++j) {
        const Mat2 img = w * pauli(j) * wd;
        for (int i = 1; i <= 3; ++i)
            r(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = 0.5 * trace(pauli(i) * img).real();
    }
    return r;
}

}  // namespace biloc
