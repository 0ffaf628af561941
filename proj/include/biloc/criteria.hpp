#pragma once

// Closed-form maximal violations of the bilocality inequality and of CHSH.

#include <array>

#include "biloc/network.hpp"
#include "biloc/state.hpp"

namespace biloc {

struct PureOptimum {
    double alpha = 0.0;
    double gamma = 0.0;
    double sMax = 0.0;
};

/// Optimum for Schmidt states with concurrences c, q in [0, 1] under the
/// standard Bell-state measurement: cos(alpha) = cos(gamma) = 1/sqrt(1+cq),
/// sMax = 2 sqrt(1 + cq). Throws DomainError outside the range.
PureOptimum pure_pair_optimum(double c, double q);

struct BobAlignment {
    Mat2 left = Mat2::identity();
    Mat2 right = Mat2::identity();
};

struct BilocReport {
    double sMax = 0.0;
    double alpha = 0.0;
    double gamma = 0.0;
    std::array<double, 2> xi{};
    std::array<double, 2> zeta{};
    BobAlignment bobAlignment;
    double chshAB = 0.0;
    double chshBC = 0.0;
    bool violates = false;
    /// |sMax - 2| < 1e-9.
    bool marginal = false;

    /// Settings achieving sMax: Alice at +-alpha and Charlie at +-gamma in
    /// their leading correlation planes.
    SettingPair alice;
    SettingPair charlie;

    JointMeasurement bob() const { return canonical_bsm(bobAlignment.left, bobAlignment.right); }
};

/// Maximal bilocality score over Alice/Charlie settings with Bob performing a
/// Bell-state measurement in locally rotated frames.
BilocReport mixed_pair_optimum(const TwoQubitState& rhoAB, const TwoQubitState& rhoBC);

/// xi1 zeta1 + xi2 zeta2 > 1.
bool biloc_criterion(const TwoQubitState& rhoAB, const TwoQubitState& rhoBC);

struct ChshOptimum {
    double sMax = 0.0;
    std::array<double, 2> xi{};
    SettingPair settingsA;
    SettingPair settingsB;
};

/// 2 sqrt(xi1^2 + xi2^2) with settings that attain it.
ChshOptimum horodecki_chsh(const TwoQubitState& rho);

struct BoundChain {
    double sBiloc = 0.0;
    double sChshAB = 0.0;
    double sChshBC = 0.0;
    /// sBiloc <= sqrt(sChshAB sChshBC) + 1e-10.
    bool chainHolds = false;
    /// xi/|xi| and zeta/|zeta| coincide within 1e-9.
    bool equality = false;
};

BoundChain bound_chain_check(const TwoQubitState& rhoAB, const TwoQubitState& rhoBC);

struct VisibilityProducts {
    /// Product of the minimal visibilities allowing bilocality violation.
    double bilocProduct = 1.0;
    /// Product of the per-state CHSH critical visibilities.
    double localProduct = 1.0;
    /// False when c q = 0: no visibility <= 1 gives a violation.
    bool violationPossible = false;
};

/// For noisy Schmidt states with concurrences c and q. Throws DomainError
/// outside [0, 1].
VisibilityProducts critical_visibility_product(double c, double q);

}  // namespace biloc
