#pragma once

// Born-rule statistics of the entanglement-swapping network: Alice and
// Charlie hold one qubit each, Bob holds the two middle qubits. Operators on
// all four qubits use the order (Alice, Bob-left, Bob-right, Charlie).

#include <array>
#include <cstdint>

#include "biloc/linalg.hpp"
#include "biloc/state.hpp"

namespace biloc {

/// Observable a . sigma with outcomes +1 / -1.
struct DichotomicSetting {
    Vec3 bloch{0.0, 0.0, 1.0};

    /// Throws DomainError unless |v| = 1 within 1e-12.
    static DichotomicSetting from_vector(const Vec3& v);
    /// (sin angle, 0, cos angle): the Z-X plane measured from Z.
    static DichotomicSetting planar(double angle);
    static DichotomicSetting spherical(double theta, double phi);
    /// cos(angle) zAxis + sin(angle) xAxis for orthonormal axes.
    static DichotomicSetting in_plane(const Vec3& zAxis, const Vec3& xAxis, double angle);

    /// Projector onto the eigenspace with eigenvalue `outcome` (+1 or -1).
    Mat2 projector(int outcome) const;
};

using SettingPair = std::array<DichotomicSetting, 2>;

/// Bob's two output bits (B0, B1), each +1 or -1.
struct BobBits {
    int b0 = 1;
    int b1 = 1;
    friend bool operator==(const BobBits&, const BobBits&) = default;
};

/// phi+ -> (+,+), phi- -> (+,-), psi+ -> (-,+), psi- -> (-,-): the
/// eigenvalues of Z(x)Z and X(x)X on the Bell states.
inline constexpr std::array<BobBits, 4> kCanonicalBits{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

/// Bell states in the order phi+, phi-, psi+, psi-.
const std::array<CVec<4>, 4>& bell_states();

/// Four-outcome projective measurement on Bob's two qubits.
class JointMeasurement {
public:
    /// Throws DomainError unless the basis is orthonormal within 1e-10 and
    /// the bits cover {+-1}^2 exactly once.
    static JointMeasurement from_basis(const std::array<CVec<4>, 4>& basis, const std::array<BobBits, 4>& bits);

    const std::array<CVec<4>, 4>& basis() const { return basis_; }
    const std::array<BobBits, 4>& bits() const { return bits_; }

    /// The same measurement with Bob's two qubit factors exchanged.
    JointMeasurement mirrored() const;

private:
    JointMeasurement(const std::array<CVec<4>, 4>& basis, const std::array<BobBits, 4>& bits) : basis_(basis), bits_(bits) {}
    std::array<CVec<4>, 4> basis_;
    std::array<BobBits, 4> bits_;
};

/// Bell basis rotated by (uLeft (x) uRight)^dagger, canonical bits.
/// Throws DomainError for non-unitary input.
JointMeasurement canonical_bsm(const Mat2& uLeft, const Mat2& uRight);

/// Joint outcome probabilities p[x][z][a][b0][b1][c].
class TripartiteDistribution {
public:
    static constexpr std::size_t kSize = 64;

    /// a, b0, b1, c are outcomes in {+1, -1}.
    static std::size_t index(int x, int z, int a, int b0, int b1, int c);

    double operator()(int x, int z, int a, int b0, int b1, int c) const { return p_[index(x, z, a, b0, b1, c)]; }
    double& at(int x, int z, int a, int b0, int b1, int c) { return p_[index(x, z, a, b0, b1, c)]; }

    /// 16 outcome probabilities of one setting pair, ordered (a, b0, b1, c).
    std::array<double, 16> slice(int x, int z) const;

    const std::array<double, kSize>& raw() const { return p_; }
    std::array<double, kSize>& raw() { return p_; }

private:
    std::array<double, kSize> p_{};
};

/// Precomputes the conditional operators of both sources so repeated
/// evaluations with different settings cost only the contraction.
class BornEvaluator {
public:
    BornEvaluator(const TwoQubitState& rhoAB, const TwoQubitState& rhoBC);

    TripartiteDistribution distribution(const SettingPair& alice, const SettingPair& charlie, const JointMeasurement& bob) const;

private:
    // condAB_[i] = Tr_A[(s_i (x) 1) rhoAB], condBC_[i] = Tr_C[(1 (x) s_i) rhoBC].
    std::array<Mat2, 4> condAB_;
    std::array<Mat2, 4> condBC_;
};

TripartiteDistribution born_distribution(const TwoQubitState& rhoAB, const TwoQubitState& rhoBC, const SettingPair& alice,
                                         const SettingPair& charlie, const JointMeasurement& bob);

/// <A_x B_y C_z> with y = bobBit.
double correlator(const TripartiteDistribution& dist, int x, int z, int bobBit);
/// <B_y>, diagnostic only.
double bob_marginal(const TripartiteDistribution& dist, int bobBit);

double compute_I(const TripartiteDistribution& dist);
double compute_J(const TripartiteDistribution& dist);
double biloc_score(const TripartiteDistribution& dist);
double biloc_score(double I, double J);

/// |<A0B0> + <A0B1> + <A1B0> - <A1B1>| via two-qubit Born probabilities.
double chsh_score(const TwoQubitState& rho, const SettingPair& settingsA, const SettingPair& settingsB);

/// Monte Carlo estimate of the network quantities.
struct SampleEstimate {
    std::uint64_t shotsPerSettingPair = 0;
    double I = 0.0;
    double J = 0.0;
    double S = 0.0;
    double stderr_I = 0.0;
    double stderr_J = 0.0;
    double stderr_S = 0.0;
    /// Fewer than two samples per estimator, or S not differentiable (I or J
    /// estimated as zero); standard errors are then not meaningful.
    bool unreliable = false;
    /// correlators[x][z][y] = estimated <A_x B_y C_z>.
    std::array<std::array<std::array<double, 2>, 2>, 2> correlators{};
    /// Outcome counts, same layout as TripartiteDistribution.
    std::array<std::uint64_t, TripartiteDistribution::kSize> counts{};
};

/// Inverse-CDF sampling with one RNG stream per (x, z) derived from `seed`.
/// Throws DomainError when shotsPerSettingPair is zero.
SampleEstimate sample_outcomes(const TripartiteDistribution& dist, std::uint64_t shotsPerSettingPair, std::uint64_t seed);

namespace fault {

/// Deliberate defects used to check that the verification suite can fail.
enum class Fault { None, JSign };

void inject(Fault f);
Fault active();

}  // namespace fault

}  // namespace biloc
