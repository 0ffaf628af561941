#pragma once

// Independent reference routes for tests. Built on Eigen and written from
// the textbook definitions: full four-qubit Born rule, explicit Pauli
// traces, library eigen/SVD solvers. Nothing here calls into biloc's
// numerical kernels.

#include <Eigen/Dense>
#include <complex>

#include "biloc/linalg.hpp"
#include "biloc/network.hpp"

namespace oracle {

using C = std::complex<double>;
using M2 = Eigen::Matrix2cd;
using M4 = Eigen::Matrix4cd;
using M16 = Eigen::Matrix<C, 16, 16>;

inline M4 to_eigen(const biloc::Mat4& m) {
    M4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return r;
}

inline M2 paulis(int i) {
    M2 m;
    switch (i) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, C(0, -1), C(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

template <class A, class B>
Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> kron(const A& a, const B& b) {
    Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

/// Tr[(s_i (x) s_j) rho] by explicit trace.
inline double pauli_expectation(const M4& rho, int i, int j) {
    const Eigen::MatrixXcd op = kron(paulis(i), paulis(j));
    return (op * rho).trace().real();
}

inline M2 projector(const biloc::Vec3& v, int outcome) {
    M2 obs = v[0] * paulis(1) + v[1] * paulis(2) + v[2] * paulis(3);
    return 0.5 * (M2::Identity() + static_cast<double>(outcome) * obs);
}

/// p(a, b0, b1, c | x, z) = Tr[(P_a (x) |b_k><b_k| (x) P_c) (rhoAB (x) rhoBC)].
inline double born_probability(const M4& rhoAB, const M4& rhoBC, const biloc::SettingPair& alice,
                               const biloc::SettingPair& charlie, const biloc::JointMeasurement& bob, int x, int z, int a,
                               int b0, int b1, int c) {
    const Eigen::MatrixXcd rho = kron(rhoAB, rhoBC);
    std::size_t k = 0;
    for (; k < 4; ++k)
        if (bob.bits()[k].b0 == b0 && bob.bits()[k].b1 == b1) break;
    Eigen::Vector4cd bk;
    for (int i = 0; i < 4; ++i) bk(i) = bob.basis()[k][static_cast<std::size_t>(i)];
    const M4 pb = bk * bk.adjoint();
    const Eigen::MatrixXcd op = kron(kron(projector(alice[static_cast<std::size_t>(x)].bloch, a), pb),
                                     projector(charlie[static_cast<std::size_t>(z)].bloch, c));
    return (op * rho).trace().real();
}

/// Full distribution by the 16x16 route, laid out like TripartiteDistribution.
inline biloc::TripartiteDistribution born_distribution(const biloc::Mat4& rhoAB, const biloc::Mat4& rhoBC,
                                                       const biloc::SettingPair& alice, const biloc::SettingPair& charlie,
                                                       const biloc::JointMeasurement& bob) {
    const M4 ab = to_eigen(rhoAB), bc = to_eigen(rhoBC);
    biloc::TripartiteDistribution d;
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z)
            for (int a : {1, -1})
                for (int b0 : {1, -1})
                    for (int b1 : {1, -1})
                        for (int c : {1, -1}) d.at(x, z, a, b0, b1, c) = born_probability(ab, bc, alice, charlie, bob, x, z, a, b0, b1, c);
    return d;
}

/// Singular values of a real 3x3 matrix, descending.
inline Eigen::Vector3d singular_values(const biloc::Mat3& t) {
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = t(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return Eigen::JacobiSVD<Eigen::Matrix3d>(m).singularValues();
}

inline Eigen::Vector4d hermitian_eigenvalues(const biloc::Mat4& h) {
    return Eigen::SelfAdjointEigenSolver<M4>(to_eigen(h)).eigenvalues();
}

/// exp(i h) through the eigendecomposition of h.
inline M4 expm_i(const biloc::Mat4& h) {
    Eigen::SelfAdjointEigenSolver<M4> es(to_eigen(h));
    Eigen::Vector4cd phases;
    for (int i = 0; i < 4; ++i) phases(i) = std::exp(C(0, es.eigenvalues()(i)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace oracle
