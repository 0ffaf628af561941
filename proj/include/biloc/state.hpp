#pragma once

// Two-qubit states, their Pauli-basis expansion and correlation spectra.

#include <cstdint>

#include "biloc/errors.hpp"
#include "biloc/linalg.hpp"

namespace biloc {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = -1e-10;

/// Validated 4x4 density matrix, qubit order (first, second).
class TwoQubitState {
public:
    /// Throws InvalidState when hermiticity, trace or positivity fails.
    static TwoQubitState from_matrix(const Mat4& rho);

    const Mat4& matrix() const { return rho_; }
    double min_eigenvalue() const;

private:
    explicit TwoQubitState(const Mat4& rho) : rho_(rho) {}
    Mat4 rho_;
};

/// Schmidt coefficients of c0|00> + c1|11>.
struct SchmidtPureState {
    double c0 = 1.0;
    double c1 = 0.0;

    double concurrence() const { return 2.0 * c0 * c1; }
    /// Coefficients with c0 >= c1 reproducing concurrence c in [0, 1].
    static SchmidtPureState from_concurrence(double c);
};

TwoQubitState make_schmidt_state(double c0, double c1);
TwoQubitState make_werner(double visibility);
TwoQubitState add_isotropic_noise(const TwoQubitState& state, double visibility);

/// Local Bloch vectors and correlation matrix T[i][j] = Tr[(s_i (x) s_j) rho].
struct PauliDecomposition {
    Vec3 mA{};
    Vec3 mB{};
    Mat3 T;

    Mat4 reconstruct() const;
    /// Same state with the two qubits exchanged (mA <-> mB, T -> T^T).
    PauliDecomposition swapped() const;
};

PauliDecomposition pauli_decompose(const TwoQubitState& state);

/// Singular values of T (descending) with left axes on the first qubit's
/// Bloch space and right axes on the second's.
struct CorrelationSpectrum {
    Vec3 values{};
    Mat3 leftAxes;
    Mat3 rightAxes;
};

CorrelationSpectrum correlation_spectrum(const PauliDecomposition& decomp);

/// Four-qubit product rho_a (x) rho_b in order (a1, a2, b1, b2).
Mat16 tensor_product(const TwoQubitState& a, const TwoQubitState& b);
/// Trace over qubits (a1, a2) or (b1, b2) of a 16x16 operator.
Mat4 trace_out_first_pair(const Mat16& m);
Mat4 trace_out_second_pair(const Mat16& m);

/// Local unitary conjugation (u (x) w) rho (u (x) w)^dagger.
TwoQubitState apply_local_unitaries(const TwoQubitState& state, const Mat2& u, const Mat2& w);
/// rho with its two qubits exchanged.
TwoQubitState swap_qubits(const TwoQubitState& state);

enum class StateKind { Pure, Mixed };

/// Pure: Haar-random vector (normalized complex Gaussian). Mixed: G G^dagger
/// normalized, G with i.i.d. standard complex Gaussian entries.
TwoQubitState random_state(StateKind kind, std::uint64_t seed);

/// Haar-random single-qubit unitary.
Mat2 random_unitary2(std::uint64_t seed);

}  // namespace biloc
