#include "biloc/criteria.hpp"

#include <cmath>

namespace biloc {

namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

// Unitary u with u^dagger Z u = zAxis . sigma and u^dagger X u = xAxis . sigma.
Mat2 frame_alignment(const Vec3& zAxis, const Vec3& xAxis) {
    Mat3 r;
    r.set_column(0, xAxis);
    r.set_column(1, cross(zAxis, xAxis));
    r.set_column(2, zAxis);
    return adjoint(unitary_from_rotation(r));
}

// Optimal angle shared by both outer parties: cos^2 = p1 / (p1 + p2).
double optimal_angle(double p1, double p2) {
    const double total = p1 + p2;
    if (total <= 0.0) return 0.0;
    return std::acos(std::sqrt(p1 / total));
}

}  // namespace

PureOptimum pure_pair_optimum(double c, double q) {
    if (!in_unit_interval(c) || !in_unit_interval(q)) throw DomainError("concurrences must lie in [0, 1]");
    const double angle = std::acos(1.0 / std::sqrt(1.0 + c * q));
    return {angle, angle, 2.0 * std::sqrt(1.0 + c * q)};
}

BilocReport mixed_pair_optimum(const TwoQubitState& rhoAB, const TwoQubitState& rhoBC) {
    // For the second source Bob holds the first qubit; transposing puts the
    // outer party on the left as for the first source.
    const CorrelationSpectrum ab = correlation_spectrum(pauli_decompose(rhoAB));
    const CorrelationSpectrum bc = correlation_spectrum(pauli_decompose(rhoBC).swapped());

    BilocReport r;
    r.xi = {ab.values[0], ab.values[1]};
    r.zeta = {bc.values[0], bc.values[1]};
    const double p1 = r.xi[0] * r.zeta[0];
    const double p2 = r.xi[1] * r.zeta[1];
    r.sMax = 2.0 * std::sqrt(p1 + p2);
    r.alpha = r.gamma = optimal_angle(p1, p2);

    r.bobAlignment.left = frame_alignment(ab.rightAxes.column(0), ab.rightAxes.column(1));
    r.bobAlignment.right = frame_alignment(bc.rightAxes.column(0), bc.rightAxes.column(1));

    const Vec3 a1 = ab.leftAxes.column(0), a2 = ab.leftAxes.column(1);
    const Vec3 c1 = bc.leftAxes.column(0), c2 = bc.leftAxes.column(1);
    r.alice = {DichotomicSetting::in_plane(a1, a2, r.alpha), DichotomicSetting::in_plane(a1, a2, -r.alpha)};
    r.charlie = {DichotomicSetting::in_plane(c1, c2, r.gamma), DichotomicSetting::in_plane(c1, c2, -r.gamma)};

    r.chshAB = 2.0 * std::hypot(r.xi[0], r.xi[1]);
    r.chshBC = 2.0 * std::hypot(r.zeta[0], r.zeta[1]);
    r.violates = r.sMax > 2.0;
    r.marginal = std::abs(r.sMax - 2.0) < 1e-9;
    return r;
}

bool biloc_criterion(const TwoQubitState& rhoAB, const TwoQubitState& rhoBC) {
    const Vec3 xi = correlation_spectrum(pauli_decompose(rhoAB)).values;
    const Vec3 zeta = correlation_spectrum(pauli_decompose(rhoBC)).values;
    return xi[0] * zeta[0] + xi[1] * zeta[1] > 1.0;
}

ChshOptimum horodecki_chsh(const TwoQubitState& rho) {
    const CorrelationSpectrum s = correlation_spectrum(pauli_decompose(rho));
    ChshOptimum out;
    out.xi = {s.values[0], s.values[1]};
    out.sMax = 2.0 * std::hypot(out.xi[0], out.xi[1]);
    const double theta = std::atan2(out.xi[1], out.xi[0]);
    const Vec3 u1 = s.leftAxes.column(0), u2 = s.leftAxes.column(1);
    const Vec3 v1 = s.rightAxes.column(0), v2 = s.rightAxes.column(1);
    out.settingsA = {DichotomicSetting::in_plane(u1, u2, 0.0), DichotomicSetting::in_plane(u1, u2, M_PI / 2)};
    out.settingsB = {DichotomicSetting::in_plane(v1, v2, theta), DichotomicSetting::in_plane(v1, v2, -theta)};
    return out;
}

BoundChain bound_chain_check(const TwoQubitState& rhoAB, const TwoQubitState& rhoBC) {
    const BilocReport r = mixed_pair_optimum(rhoAB, rhoBC);
    BoundChain out;
    out.sBiloc = r.sMax;
    out.sChshAB = r.chshAB;
    out.sChshBC = r.chshBC;
    out.chainHolds = out.sBiloc <= std::sqrt(out.sChshAB * out.sChshBC) + 1e-10;

    const double nx = std::hypot(r.xi[0], r.xi[1]);
    const double nz = std::hypot(r.zeta[0], r.zeta[1]);
    if (nx == 0.0 || nz == 0.0) {
        out.equality = true;
    } else {
        out.equality = std::abs(r.xi[0] / nx - r.zeta[0] / nz) <= 1e-9 && std::abs(r.xi[1] / nx - r.zeta[1] / nz) <= 1e-9;
    }
    return out;
}

VisibilityProducts critical_visibility_product(double c, double q) {
    if (!in_unit_interval(c) || !in_unit_interval(q)) throw DomainError("concurrences must lie in [0, 1]");
    VisibilityProducts v;
    v.bilocProduct = 1.0 / (1.0 + c * q);
    v.localProduct = std::sqrt(1.0 / (1.0 + c * c)) * std::sqrt(1.0 / (1.0 + q * q));
    v.violationPossible = c * q > 0.0;
    return v;
}

}  // namespace biloc
