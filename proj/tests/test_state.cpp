#include <doctest.h>

#include <cmath>

#include "biloc/state.hpp"
#include "oracle.hpp"

using namespace biloc;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

bool is_diag(const Mat3& t, double a, double b, double c, double tol) {
    Mat3 d;
    d(0, 0) = a;
    d(1, 1) = b;
    d(2, 2) = c;
    return max_abs_diff(t, d) <= tol;
}

TwoQubitState random_member(std::uint64_t i) { return random_state(i % 2 ? StateKind::Pure : StateKind::Mixed, 7000 + i); }

}  // namespace

TEST_CASE("from_matrix validates hermiticity, trace and positivity") {
    Mat4 m = make_werner(0.5).matrix();
    CHECK_NOTHROW(TwoQubitState::from_matrix(m));

    Mat4 bad = m;
    bad(0, 1) = cplx(1e-6, 0);
    CHECK_THROWS_AS(TwoQubitState::from_matrix(bad), InvalidState);

    bad = m;
    bad(0, 0) += 1e-6;
    CHECK_THROWS_AS(TwoQubitState::from_matrix(bad), InvalidState);

    // trace one, hermitian, but one negative eigenvalue
    bad = Mat4{};
    bad(0, 0) = 1.1;
    bad(1, 1) = -0.1;
    CHECK_THROWS_AS(TwoQubitState::from_matrix(bad), InvalidState);

    // tiny negative eigenvalue inside the tolerance is accepted
    Mat4 noisy = Mat4{};
    noisy(0, 0) = 1.0 + 5e-11;
    noisy(1, 1) = -5e-11;
    CHECK_NOTHROW(TwoQubitState::from_matrix(noisy));
}

TEST_CASE("make_schmidt_state examples") {
    const Mat4 phi = make_schmidt_state(kInvSqrt2, kInvSqrt2).matrix();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const bool corner = (i == 0 || i == 3) && (j == 0 || j == 3);
            CHECK(std::abs(phi(i, j) - cplx(corner ? 0.5 : 0.0, 0.0)) < 1e-15);
        }

    const Mat4 zero = make_schmidt_state(1.0, 0.0).matrix();
    CHECK(zero(0, 0) == cplx(1.0, 0.0));
    CHECK(max_abs_diff(zero, [] {
              Mat4 m;
              m(0, 0) = 1.0;
              return m;
          }()) == 0.0);

    const TwoQubitState s = make_schmidt_state(0.8, 0.6);
    CHECK(SchmidtPureState{0.8, 0.6}.concurrence() == doctest::Approx(0.96));
    const Eigen::Vector4d ev = oracle::hermitian_eigenvalues(s.matrix());
    CHECK(ev(3) == doctest::Approx(1.0).epsilon(1e-12));
    for (int k = 0; k < 3; ++k) CHECK(std::abs(ev(k)) < 1e-12);
}

TEST_CASE("make_schmidt_state rejects bad coefficients") {
    CHECK_THROWS_AS(make_schmidt_state(0.0, 0.0), InvalidState);
    CHECK_THROWS_AS(make_schmidt_state(-0.6, 0.8), DomainError);
    CHECK_THROWS_AS(make_schmidt_state(0.9, 0.9), DomainError);
}

TEST_CASE("SchmidtPureState::from_concurrence inverts concurrence") {
    for (double c : {0.0, 0.1, 0.5, 0.96, 1.0}) {
        const auto s = SchmidtPureState::from_concurrence(c);
        CHECK(s.concurrence() == doctest::Approx(c).epsilon(1e-14));
        CHECK(s.c0 * s.c0 + s.c1 * s.c1 == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(s.c0 >= s.c1);
    }
    CHECK_THROWS_AS(SchmidtPureState::from_concurrence(1.5), DomainError);
}

TEST_CASE("make_werner examples") {
    const Mat4 w0 = make_werner(0.0).matrix();
    CHECK(max_abs_diff(w0, cplx(0.25, 0) * Mat4::identity()) < 1e-15);
    CHECK(max_abs_diff(make_werner(1.0).matrix(), make_schmidt_state(kInvSqrt2, kInvSqrt2).matrix()) < 1e-15);
    const Eigen::Vector4d ev = oracle::hermitian_eigenvalues(make_werner(0.5).matrix());
    CHECK(ev(0) == doctest::Approx(0.125));
    CHECK(ev(1) == doctest::Approx(0.125));
    CHECK(ev(2) == doctest::Approx(0.125));
    CHECK(ev(3) == doctest::Approx(0.625));
    CHECK_THROWS_AS(make_werner(1.01), DomainError);
    CHECK_THROWS_AS(make_werner(-0.5), DomainError);
}

TEST_CASE("add_isotropic_noise examples") {
    const TwoQubitState rho = random_state(StateKind::Mixed, 5);
    CHECK(max_abs_diff(add_isotropic_noise(rho, 1.0).matrix(), rho.matrix()) < 1e-15);
    CHECK(max_abs_diff(add_isotropic_noise(rho, 0.0).matrix(), cplx(0.25, 0) * Mat4::identity()) < 1e-15);
    const TwoQubitState phi = make_schmidt_state(kInvSqrt2, kInvSqrt2);
    CHECK(max_abs_diff(add_isotropic_noise(phi, 0.8).matrix(), make_werner(0.8).matrix()) < 1e-15);
    CHECK_THROWS_AS(add_isotropic_noise(rho, 1.2), DomainError);
}

TEST_CASE("pauli_decompose examples") {
    const PauliDecomposition phi = pauli_decompose(make_werner(1.0));
    CHECK(is_diag(phi.T, 1, -1, 1, 1e-15));
    CHECK(norm(phi.mA) < 1e-15);
    CHECK(norm(phi.mB) < 1e-15);
    const PauliDecomposition mixed = pauli_decompose(make_werner(0.0));
    CHECK(is_diag(mixed.T, 0, 0, 0, 1e-15));
    const PauliDecomposition w = pauli_decompose(make_werner(0.37));
    CHECK(is_diag(w.T, 0.37, -0.37, 0.37, 1e-15));
}

TEST_CASE("pauli_decompose agrees with explicit Pauli traces") {
    for (std::uint64_t i = 0; i < 100; ++i) {
        const TwoQubitState s = random_member(i);
        const PauliDecomposition d = pauli_decompose(s);
        const oracle::M4 rho = oracle::to_eigen(s.matrix());
        for (int k = 1; k <= 3; ++k) {
            CHECK(std::abs(d.mA[static_cast<std::size_t>(k - 1)] - oracle::pauli_expectation(rho, k, 0)) < 1e-14);
            CHECK(std::abs(d.mB[static_cast<std::size_t>(k - 1)] - oracle::pauli_expectation(rho, 0, k)) < 1e-14);
            for (int l = 1; l <= 3; ++l)
                CHECK(std::abs(d.T(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(l - 1)) - oracle::pauli_expectation(rho, k, l)) < 1e-14);
        }
        for (double x : d.T.a) CHECK(std::abs(x) <= 1.0 + 1e-12);
    }
}

TEST_CASE("swapped decomposition describes the qubit-swapped state") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        const TwoQubitState s = random_member(i);
        CHECK(max_abs_diff(pauli_decompose(s).swapped().reconstruct(), swap_qubits(s).matrix()) < 1e-14);
    }
}

TEST_CASE("correlation_spectrum examples") {
    CHECK(std::abs(correlation_spectrum(pauli_decompose(make_werner(1.0))).values[2] - 1.0) < 1e-14);
    const Vec3 v = correlation_spectrum(pauli_decompose(make_werner(0.6))).values;
    for (double x : v) CHECK(x == doctest::Approx(0.6).epsilon(1e-14));
    const Vec3 z = correlation_spectrum(pauli_decompose(make_werner(0.0))).values;
    for (double x : z) CHECK(x == 0.0);
}

TEST_CASE("reconstruction round trip over 1000 random states") {
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const TwoQubitState s = random_member(i);
        CHECK(max_abs_diff(pauli_decompose(s).reconstruct(), s.matrix()) <= 1e-12);
    }
}

TEST_CASE("correlation spectrum is invariant under local unitaries") {
    for (std::uint64_t i = 0; i < 300; ++i) {
        const TwoQubitState s = random_member(i);
        const TwoQubitState t = apply_local_unitaries(s, random_unitary2(3 * i + 1), random_unitary2(3 * i + 2));
        const Vec3 a = correlation_spectrum(pauli_decompose(s)).values;
        const Vec3 b = correlation_spectrum(pauli_decompose(t)).values;
        for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-10);
    }
}

TEST_CASE("spectrum properties: bounded, ordered, factorizes T, matches eig(T^T T)") {
    for (std::uint64_t i = 0; i < 500; ++i) {
        const PauliDecomposition d = pauli_decompose(random_member(i));
        const CorrelationSpectrum cs = correlation_spectrum(d);
        CHECK(cs.values[0] <= 1.0 + 1e-10);
        CHECK(cs.values[0] >= cs.values[1]);
        CHECK(cs.values[1] >= cs.values[2]);
        CHECK(cs.values[2] >= 0.0);
        Mat3 diag;
        for (std::size_t k = 0; k < 3; ++k) diag(k, k) = cs.values[k];
        CHECK(max_abs_diff(cs.leftAxes * diag * transpose(cs.rightAxes), d.T) <= 1e-10);

        // Independent route: eigenvalues of T^T T from Eigen, then square roots.
        Eigen::Matrix3d t;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) t(r, c) = d.T(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(t.transpose() * t).eigenvalues();
        for (int k = 0; k < 3; ++k) CHECK(std::abs(std::sqrt(std::max(0.0, ev(2 - k))) - cs.values[static_cast<std::size_t>(k)]) <= 1e-7);
        // sqrt amplifies rounding near zero; compare the squares tightly too
        for (int k = 0; k < 3; ++k) CHECK(std::abs(ev(2 - k) - cs.values[static_cast<std::size_t>(k)] * cs.values[static_cast<std::size_t>(k)]) <= 1e-10);
    }
}

TEST_CASE("tensor_product examples and partial traces") {
    const TwoQubitState mixed = make_werner(0.0);
    CHECK(max_abs_diff(tensor_product(mixed, mixed), cplx(1.0 / 16, 0) * Mat16::identity()) < 1e-15);
    const TwoQubitState zero = make_schmidt_state(1.0, 0.0);
    const Mat16 z = tensor_product(zero, zero);
    CHECK(z(0, 0) == cplx(1.0, 0.0));
    CHECK(std::abs(trace(z) - cplx(1.0, 0.0)) < 1e-15);
    for (std::uint64_t i = 0; i < 50; ++i) {
        const TwoQubitState a = random_member(2 * i), b = random_member(2 * i + 1);
        const Mat16 ab = tensor_product(a, b);
        CHECK(max_abs_diff(trace_out_second_pair(ab), a.matrix()) < 1e-14);
        CHECK(max_abs_diff(trace_out_first_pair(ab), b.matrix()) < 1e-14);
        // index order (A, B-left, B-right, C): the oracle kron has the same order
        const Eigen::MatrixXcd ref = oracle::kron(oracle::to_eigen(a.matrix()), oracle::to_eigen(b.matrix()));
        double gap = 0.0;
        for (std::size_t r = 0; r < 16; ++r)
            for (std::size_t c = 0; c < 16; ++c) gap = std::max(gap, std::abs(ab(r, c) - ref(static_cast<int>(r), static_cast<int>(c))));
        CHECK(gap < 1e-15);
    }
}

TEST_CASE("random_state is deterministic and valid") {
    CHECK(max_abs_diff(random_state(StateKind::Mixed, 42).matrix(), random_state(StateKind::Mixed, 42).matrix()) == 0.0);
    CHECK(max_abs_diff(random_state(StateKind::Pure, 42).matrix(), random_state(StateKind::Pure, 42).matrix()) == 0.0);
    CHECK(max_abs_diff(random_state(StateKind::Mixed, 42).matrix(), random_state(StateKind::Mixed, 43).matrix()) > 0.0);

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Eigen::Vector4d ev = oracle::hermitian_eigenvalues(random_state(StateKind::Pure, seed).matrix());
        CHECK(std::abs(ev(3) - 1.0) < 1e-10);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(ev(k)) < 1e-10);
    }
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const Mat4 m = random_state(StateKind::Mixed, seed).matrix();
        CHECK(hermiticity_defect(m) <= 1e-12);
        CHECK(std::abs(trace(m).real() - 1.0) <= 1e-12);
        CHECK(oracle::hermitian_eigenvalues(m)(0) >= -1e-10);
    }
}
