#include "biloc/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "biloc/random.hpp"

namespace biloc {

TwoQubitState TwoQubitState::from_matrix(const Mat4& rho) {
    const double herm = hermiticity_defect(rho);
    if (herm > kHermitianTol) {
        std::ostringstream msg;
        msg << "state is not Hermitian (defect " << herm << ")";
        throw InvalidState(msg.str());
    }
    const cplx tr = trace(rho);
    if (std::abs(tr - 1.0) > kTraceTol) {
        std::ostringstream msg;
        msg << "state trace is " << tr.real() << ", expected 1";
        throw InvalidState(msg.str());
    }
    const double lo = hermitian_eigenvalues(rho)[0];
    if (lo < kPsdTol) {
        std::ostringstream msg;
        msg << "state is not positive semidefinite (min eigenvalue " << lo << ")";
        throw InvalidState(msg.str());
    }
    return TwoQubitState(rho);
}

double TwoQubitState::min_eigenvalue() const { return hermitian_eigenvalues(rho_)[0]; }

SchmidtPureState SchmidtPureState::from_concurrence(double c) {
    if (!(c >= 0.0 && c <= 1.0)) throw DomainError("concurrence must lie in [0, 1]");
    const double root = std::sqrt(std::max(0.0, 1.0 - c * c));
    return {std::sqrt(0.5 * (1.0 + root)), std::sqrt(0.5 * (1.0 - root))};
}

TwoQubitState make_schmidt_state(double c0, double c1) {
    if (c0 == 0.0 && c1 == 0.0) throw InvalidState("Schmidt coefficients are both zero");
    if (!(c0 >= 0.0 && c1 >= 0.0)) throw DomainError("Schmidt coefficients must be non-negative");
    const double n2 = c0 * c0 + c1 * c1;
    if (std::abs(n2 - 1.0) > 1e-9) throw DomainError("Schmidt coefficients must satisfy c0^2 + c1^2 = 1");
    const double n = std::sqrt(n2);
    CVec<4> psi{};
    psi[0] = c0 / n;
    psi[3] = c1 / n;
    return TwoQubitState::from_matrix(outer(psi, psi));
}

namespace {

Mat4 phi_plus_projector() {
    const double h = 1.0 / std::sqrt(2.0);
    CVec<4> psi{};
    psi[0] = h;
    psi[3] = h;
    Mat4 m = outer(psi, psi);
    // exact halves
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return m;
}

}  // namespace

TwoQubitState make_werner(double v) {
    if (!(v >= -1.0 / 3.0 && v <= 1.0)) throw DomainError("Werner visibility must lie in [-1/3, 1]");
    const Mat4 phi = phi_plus_projector();
    Mat4 rho;
    for (std::size_t i = 0; i < 16; ++i) rho.a[i] = v * phi.a[i];
    for (std::size_t i = 0; i < 4; ++i) rho(i, i) += 0.25 * (1.0 - v);
    return TwoQubitState::from_matrix(rho);
}

TwoQubitState add_isotropic_noise(const TwoQubitState& state, double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("visibility must lie in [0, 1]");
    Mat4 rho;
    for (std::size_t i = 0; i < 16; ++i) rho.a[i] = v * state.matrix().a[i];
    for (std::size_t i = 0; i < 4; ++i) rho(i, i) += 0.25 * (1.0 - v);
    return TwoQubitState::from_matrix(rho);
}

PauliDecomposition pauli_decompose(const TwoQubitState& state) {
    const Mat4& rho = state.matrix();
    auto expect = [&](int i, int j) { return trace(pauli_product(i, j) * rho).real(); };
    PauliDecomposition d;
    for (int i = 1; i <= 3; ++i) {
        d.mA[static_cast<std::size_t>(i - 1)] = expect(i, 0);
        d.mB[static_cast<std::size_t>(i - 1)] = expect(0, i);
        for (int j = 1; j <= 3; ++j) d.T(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = expect(i, j);
    }
    return d;
}

Mat4 PauliDecomposition::reconstruct() const {
    Mat4 rho = Mat4::identity();
    for (int i = 1; i <= 3; ++i) {
        const auto ui = static_cast<std::size_t>(i - 1);
        rho = rho + cplx(mA[ui], 0) * pauli_product(i, 0);
        rho = rho + cplx(mB[ui], 0) * pauli_product(0, i);
        for (int j = 1; j <= 3; ++j) rho = rho + cplx(T(ui, static_cast<std::size_t>(j - 1)), 0) * pauli_product(i, j);
    }
    return cplx(0.25, 0) * rho;
}

PauliDecomposition PauliDecomposition::swapped() const { return {mB, mA, transpose(T)}; }

CorrelationSpectrum correlation_spectrum(const PauliDecomposition& decomp) {
    const Svd3 s = svd3(decomp.T);
    return {s.values, s.left, s.right};
}

Mat16 tensor_product(const TwoQubitState& a, const TwoQubitState& b) { return kron(a.matrix(), b.matrix()); }

Mat4 trace_out_first_pair(const Mat16& m) {
    Mat4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k) r(i, j) += m(k * 4 + i, k * 4 + j);
    return r;
}

Mat4 trace_out_second_pair(const Mat16& m) {
    Mat4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k) r(i, j) += m(i * 4 + k, j * 4 + k);
    return r;
}

TwoQubitState apply_local_unitaries(const TwoQubitState& state, const Mat2& u, const Mat2& w) {
    const Mat4 uw = kron(u, w);
    Mat4 rho = uw * state.matrix() * adjoint(uw);
    rho = cplx(0.5, 0) * (rho + adjoint(rho));
    return TwoQubitState::from_matrix(rho);
}

TwoQubitState swap_qubits(const TwoQubitState& state) {
    const std::array<std::size_t, 4> perm{0, 2, 1, 3};
    Mat4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r(perm[i], perm[j]) = state.matrix()(i, j);
    return TwoQubitState::from_matrix(r);
}

TwoQubitState random_state(StateKind kind, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    if (kind == StateKind::Pure) {
        CVec<4> psi{};
        double n2 = 0.0;
        for (auto& x : psi) {
            x = cplx(gauss(rng), gauss(rng));
            n2 += std::norm(x);
        }
        for (auto& x : psi) x /= std::sqrt(n2);
        Mat4 rho = outer(psi, psi);
        rho = cplx(0.5, 0) * (rho + adjoint(rho));
        return TwoQubitState::from_matrix(rho);
    }
    Mat4 g;
    for (auto& x : g.a) x = cplx(gauss(rng), gauss(rng));
    Mat4 rho = g * adjoint(g);
    rho = cplx(0.5, 0) * (rho + adjoint(rho));
    const double tr = trace(rho).real();
    rho = cplx(1.0 / tr, 0) * rho;
    return TwoQubitState::from_matrix(rho);
}

Mat2 random_unitary2(std::uint64_t seed) {
    // Uniform quaternion on S^3 is Haar on SU(2).
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::array<double, 4> q{};
    double n2 = 0.0;
    for (auto& x : q) {
        x = gauss(rng);
        n2 += x * x;
    }
    for (auto& x : q) x /= std::sqrt(n2);
    Mat2 u;
    u(0, 0) = cplx(q[0], -q[3]);
    u(1, 1) = cplx(q[0], q[3]);
    u(0, 1) = cplx(-q[2], -q[1]);
    u(1, 0) = cplx(q[2], -q[1]);
    return u;
}

}  // namespace biloc
