#include <doctest.h>

#include <cmath>
#include <random>

#include "biloc/linalg.hpp"
#include "biloc/state.hpp"
#include "oracle.hpp"

using namespace biloc;

namespace {

Mat4 random_hermitian(std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    Mat4 h;
    for (std::size_t i = 0; i < 4; ++i) {
        h(i, i) = g(rng);
        for (std::size_t j = i + 1; j < 4; ++j) {
            h(i, j) = cplx(g(rng), g(rng));
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

Mat3 random_mat3(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat3 m;
    for (auto& x : m.a) x = g(rng);
    return m;
}

}  // namespace

TEST_CASE("jacobi_eigen 3x3 matches Eigen and reconstructs") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        Mat3 g = random_mat3(rng);
        Mat3 s = g * transpose(g);
        const auto e = jacobi_eigen<3>(s.a);
        Eigen::Matrix3d m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = s(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        const Eigen::Vector3d ref = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(m).eigenvalues();
        for (int k = 0; k < 3; ++k) CHECK(e.values[static_cast<std::size_t>(k)] == doctest::Approx(ref(k)).epsilon(1e-12).scale(10));
        // V diag V^T == s
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                double acc = 0.0;
                for (std::size_t k = 0; k < 3; ++k) acc += e.vectors[i * 3 + k] * e.values[k] * e.vectors[j * 3 + k];
                CHECK(std::abs(acc - s(i, j)) < 1e-12);
            }
    }
}

TEST_CASE("hermitian_eigenvalues matches Eigen") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        const Mat4 h = random_hermitian(rng, 1.0);
        const auto mine = hermitian_eigenvalues(h);
        const Eigen::Vector4d ref = oracle::hermitian_eigenvalues(h);
        for (int k = 0; k < 4; ++k) CHECK(std::abs(mine[static_cast<std::size_t>(k)] - ref(k)) < 1e-12);
    }
}

TEST_CASE("hermitian_eigenvalues on degenerate spectra") {
    CHECK(hermitian_eigenvalues(Mat4::identity())[0] == doctest::Approx(1.0));
    const Mat4 zz = pauli_product(3, 3);
    const auto v = hermitian_eigenvalues(zz);
    CHECK(v[0] == doctest::Approx(-1.0));
    CHECK(v[1] == doctest::Approx(-1.0));
    CHECK(v[2] == doctest::Approx(1.0));
    CHECK(v[3] == doctest::Approx(1.0));
}

TEST_CASE("svd3 factors, orders and matches Eigen") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        Mat3 m = random_mat3(rng);
        if (trial % 5 == 0) m.set_column(2, {0.0, 0.0, 0.0});  // rank deficient
        if (trial % 7 == 0) m.set_column(1, m.column(0));       // repeated column
        const Svd3 s = svd3(m);
        const Eigen::Vector3d ref = oracle::singular_values(m);
        for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(s.values[k] - ref(static_cast<int>(k))) < 1e-12);
        CHECK(s.values[0] >= s.values[1]);
        CHECK(s.values[1] >= s.values[2]);
        CHECK(s.values[2] >= 0.0);
        Mat3 d;
        for (std::size_t k = 0; k < 3; ++k) d(k, k) = s.values[k];
        CHECK(max_abs_diff(s.left * d * transpose(s.right), m) < 1e-12);
        CHECK(max_abs_diff(transpose(s.right) * s.right, Mat3::identity()) < 1e-12);
        CHECK(determinant(s.right) == doctest::Approx(1.0));
    }
}

TEST_CASE("expm_i_hermitian matches the eigendecomposition route") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        const double scale = trial < 100 ? 0.3 : 4.0;
        const Mat4 h = random_hermitian(rng, scale);
        const Mat4 u = expm_i_hermitian(h);
        const oracle::M4 ref = oracle::expm_i(h);
        CHECK(is_unitary(u, 1e-12));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(u(i, j) - ref(static_cast<int>(i), static_cast<int>(j))) < 1e-11);
    }
    CHECK(max_abs_diff(expm_i_hermitian(Mat4{}), Mat4::identity()) < 1e-15);
}

TEST_CASE("su2_from_rotation_vector rotates Bloch vectors") {
    // A quarter turn about y maps z to x.
    const Mat2 w = su2_from_rotation_vector({0.0, std::acos(-1.0) / 2, 0.0});
    const Mat2 rotated = w * pauli(3) * adjoint(w);
    CHECK(max_abs_diff(rotated, pauli(1)) < 1e-14);
}

TEST_CASE("unitary_from_rotation and rotation_from_unitary are inverse") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Mat2 w = random_unitary2(seed);
        const Mat3 r = rotation_from_unitary(w);
        CHECK(determinant(r) == doctest::Approx(1.0));
        CHECK(max_abs_diff(transpose(r) * r, Mat3::identity()) < 1e-12);
        // defining relation, checked by explicit conjugation
        for (int k = 1; k <= 3; ++k) {
            const Mat2 lhs = w * pauli(k) * adjoint(w);
            Vec3 col = r.column(static_cast<std::size_t>(k - 1));
            CHECK(max_abs_diff(lhs, bloch_operator(col)) < 1e-12);
        }
        const Mat2 back = unitary_from_rotation(r);
        CHECK(max_abs_diff(rotation_from_unitary(back), r) < 1e-12);
        // equal up to a global phase
        const cplx overlap = trace(adjoint(back) * w) / 2.0;
        CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("kron and pauli products agree with Eigen") {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Mat4 p = pauli_product(i, j);
            const Eigen::MatrixXcd ref = oracle::kron(oracle::paulis(i), oracle::paulis(j));
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c) CHECK(p(r, c) == ref(static_cast<int>(r), static_cast<int>(c)));
        }
}
