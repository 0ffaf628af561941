#include "biloc/network.hpp"

#include <atomic>
#include <cmath>

#include "biloc/kernels.hpp"

namespace biloc {

DichotomicSetting DichotomicSetting::from_vector(const Vec3& v) {
    if (std::abs(norm(v) - 1.0) > 1e-12) throw DomainError("measurement Bloch vector must have unit norm");
    return DichotomicSetting{v};
}

DichotomicSetting DichotomicSetting::planar(double angle) { return DichotomicSetting{{std::sin(angle), 0.0, std::cos(angle)}}; }

DichotomicSetting DichotomicSetting::spherical(double theta, double phi) {
    const double s = std::sin(theta);
    return DichotomicSetting{{s * std::cos(phi), s * std::sin(phi), std::cos(theta)}};
}

DichotomicSetting DichotomicSetting::in_plane(const Vec3& zAxis, const Vec3& xAxis, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Vec3 v{c * zAxis[0] + s * xAxis[0], c * zAxis[1] + s * xAxis[1], c * zAxis[2] + s * xAxis[2]};
    const double n = norm(v);
    for (double& e : v) e /= n;
    return DichotomicSetting{v};
}

Mat2 DichotomicSetting::projector(int outcome) const {
    const double s = outcome > 0 ? 0.5 : -0.5;
    Mat2 p;
    p(0, 0) = 0.5 + s * bloch[2];
    p(1, 1) = 0.5 - s * bloch[2];
    p(0, 1) = cplx(s * bloch[0], -s * bloch[1]);
    p(1, 0) = cplx(s * bloch[0], s * bloch[1]);
    return p;
}

const std::array<CVec<4>, 4>& bell_states() {
    static const std::array<CVec<4>, 4> states = [] {
        const double h = 1.0 / std::sqrt(2.0);
        std::array<CVec<4>, 4> b{};
        b[0][0] = h;  // phi+
        b[0][3] = h;
        b[1][0] = h;  // phi-
        b[1][3] = -h;
        b[2][1] = h;  // psi+
        b[2][2] = h;
        b[3][1] = h;  // psi-
        b[3][2] = -h;
        return b;
    }();
    return states;
}

JointMeasurement JointMeasurement::from_basis(const std::array<CVec<4>, 4>& basis, const std::array<BobBits, 4>& bits) {
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const cplx g = inner(basis[i], basis[j]);
            if (std::abs(g - (i == j ? 1.0 : 0.0)) > 1e-10) throw DomainError("measurement basis is not orthonormal");
        }
    std::array<bool, 4> seen{};
    for (const auto& b : bits) {
        if ((b.b0 != 1 && b.b0 != -1) || (b.b1 != 1 && b.b1 != -1)) throw DomainError("Bob's bits must be +1 or -1");
        const std::size_t slot = (b.b0 == 1 ? 0 : 2) + (b.b1 == 1 ? 0 : 1);
        if (seen[slot]) throw DomainError("Bob's bit assignment is not a bijection");
        seen[slot] = true;
    }
    return JointMeasurement(basis, bits);
}

JointMeasurement JointMeasurement::mirrored() const {
    std::array<CVec<4>, 4> b = basis_;
    for (auto& v : b) std::swap(v[1], v[2]);
    return JointMeasurement(b, bits_);
}

JointMeasurement canonical_bsm(const Mat2& uLeft, const Mat2& uRight) {
    if (!is_unitary(uLeft, 1e-10) || !is_unitary(uRight, 1e-10)) throw DomainError("Bob's alignment must be unitary");
    const Mat4 rot = adjoint(kron(uLeft, uRight));
    std::array<CVec<4>, 4> basis{};
    for (std::size_t k = 0; k < 4; ++k) basis[k] = rot * bell_states()[k];
    return JointMeasurement::from_basis(basis, kCanonicalBits);
}

std::size_t TripartiteDistribution::index(int x, int z, int a, int b0, int b1, int c) {
    auto bit = [](int o) { return o > 0 ? 0 : 1; };
    return static_cast<std::size_t>((((((x * 2 + z) * 2 + bit(a)) * 2 + bit(b0)) * 2 + bit(b1)) * 2) + bit(c));
}

std::array<double, 16> TripartiteDistribution::slice(int x, int z) const {
    std::array<double, 16> s{};
    const std::size_t base = index(x, z, 1, 1, 1, 1);
    for (std::size_t i = 0; i < 16; ++i) s[i] = p_[base + i];
    return s;
}

BornEvaluator::BornEvaluator(const TwoQubitState& rhoAB, const TwoQubitState& rhoBC) {
    const Mat4& ab = rhoAB.matrix();
    const Mat4& bc = rhoBC.matrix();
    for (int i = 0; i < 4; ++i) {
        const Mat2& s = pauli(i);
        Mat2 l, r;
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t bp = 0; bp < 2; ++bp)
                for (std::size_t u = 0; u < 2; ++u)
                    for (std::size_t w = 0; w < 2; ++w) {
                        l(b, bp) += s(u, w) * ab(w * 2 + b, u * 2 + bp);
                        r(b, bp) += s(u, w) * bc(b * 2 + w, bp * 2 + u);
                    }
        condAB_[static_cast<std::size_t>(i)] = l;
        condBC_[static_cast<std::size_t>(i)] = r;
    }
}

namespace {

// 1/2 (cond[0] + outcome * sum_i v_i cond[i])
Mat2 conditional(const std::array<Mat2, 4>& cond, const Vec3& v, int outcome) {
    Mat2 m;
    const double s = outcome > 0 ? 0.5 : -0.5;
    for (std::size_t e = 0; e < 4; ++e)
        m.a[e] = 0.5 * cond[0].a[e] + s * (v[0] * cond[1].a[e] + v[1] * cond[2].a[e] + v[2] * cond[3].a[e]);
    return m;
}

}  // namespace

TripartiteDistribution BornEvaluator::distribution(const SettingPair& alice, const SettingPair& charlie,
                                                   const JointMeasurement& bob) const {
    // p = <b_k| sigma (x) tau |b_k> = Tr[M tau^T] with M = B^dagger sigma B and
    // b_k = vec(B) row-major; both sides packed as real 4-vectors.
    std::array<double, 64> lhs{};  // rows (x, a, k)
    std::array<double, 16> rhs{};  // rows (z, c)
    for (int x = 0; x < 2; ++x)
        for (int ai = 0; ai < 2; ++ai) {
            const Mat2 sigma = conditional(condAB_, alice[static_cast<std::size_t>(x)].bloch, ai == 0 ? 1 : -1);
            for (std::size_t k = 0; k < 4; ++k) {
                const CVec<4>& b = bob.basis()[k];
                Mat2 B;
                B.a = {b[0], b[1], b[2], b[3]};
                const Mat2 M = adjoint(B) * sigma * B;
                double* row = &lhs[((static_cast<std::size_t>(x) * 2 + static_cast<std::size_t>(ai)) * 4 + k) * 4];
                row[0] = M(0, 0).real();
                row[1] = M(1, 1).real();
                row[2] = 2.0 * M(0, 1).real();
                row[3] = -2.0 * M(0, 1).imag();
            }
        }
    for (int z = 0; z < 2; ++z)
        for (int ci = 0; ci < 2; ++ci) {
            const Mat2 tau = conditional(condBC_, charlie[static_cast<std::size_t>(z)].bloch, ci == 0 ? 1 : -1);
            double* row = &rhs[(static_cast<std::size_t>(z) * 2 + static_cast<std::size_t>(ci)) * 4];
            row[0] = tau(0, 0).real();
            row[1] = tau(1, 1).real();
            row[2] = tau(0, 1).real();
            row[3] = tau(0, 1).imag();
        }

    std::array<double, 64> out{};
    kernels::contract4(lhs, rhs, out);

    TripartiteDistribution dist;
    for (int x = 0; x < 2; ++x)
        for (int ai = 0; ai < 2; ++ai)
            for (std::size_t k = 0; k < 4; ++k) {
                const std::size_t row = (static_cast<std::size_t>(x) * 2 + static_cast<std::size_t>(ai)) * 4 + k;
                const BobBits bits = bob.bits()[k];
                for (int z = 0; z < 2; ++z)
                    for (int ci = 0; ci < 2; ++ci)
                        dist.at(x, z, ai == 0 ? 1 : -1, bits.b0, bits.b1, ci == 0 ? 1 : -1) =
                            out[row * 4 + static_cast<std::size_t>(z) * 2 + static_cast<std::size_t>(ci)];
            }
    return dist;
}

TripartiteDistribution born_distribution(const TwoQubitState& rhoAB, const TwoQubitState& rhoBC, const SettingPair& alice,
                                         const SettingPair& charlie, const JointMeasurement& bob) {
    return BornEvaluator(rhoAB, rhoBC).distribution(alice, charlie, bob);
}

double correlator(const TripartiteDistribution& dist, int x, int z, int bobBit) {
    double e = 0.0;
    for (int a : {1, -1})
        for (int b0 : {1, -1})
            for (int b1 : {1, -1})
                for (int c : {1, -1}) e += a * (bobBit == 0 ? b0 : b1) * c * dist(x, z, a, b0, b1, c);
    return e;
}

double bob_marginal(const TripartiteDistribution& dist, int bobBit) {
    double e = 0.0;
    for (int a : {1, -1})
        for (int b0 : {1, -1})
            for (int b1 : {1, -1})
                for (int c : {1, -1}) e += (bobBit == 0 ? b0 : b1) * dist(0, 0, a, b0, b1, c);
    return e;
}

namespace {
std::atomic<int> g_fault{0};
}

namespace fault {
void inject(Fault f) { g_fault.store(static_cast<int>(f)); }
Fault active() { return static_cast<Fault>(g_fault.load()); }
}  // namespace fault

double compute_I(const TripartiteDistribution& dist) {
    double s = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z) s += correlator(dist, x, z, 0);
    return s;
}

double compute_J(const TripartiteDistribution& dist) {
    const bool broken = fault::active() == fault::Fault::JSign;
    double s = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z) {
            const int sign = broken ? ((x % 2) ? -1 : 1) : (((x + z) % 2) ? -1 : 1);
            s += sign * correlator(dist, x, z, 1);
        }
    return s;
}

double biloc_score(double I, double J) { return std::sqrt(std::abs(I)) + std::sqrt(std::abs(J)); }

double biloc_score(const TripartiteDistribution& dist) { return biloc_score(compute_I(dist), compute_J(dist)); }

double chsh_score(const TwoQubitState& rho, const SettingPair& settingsA, const SettingPair& settingsB) {
    double total = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            double e = 0.0;
            for (int a : {1, -1})
                for (int b : {1, -1}) {
                    const Mat4 proj = kron(settingsA[static_cast<std::size_t>(x)].projector(a),
                                           settingsB[static_cast<std::size_t>(y)].projector(b));
                    e += a * b * trace(proj * rho.matrix()).real();
                }
            total += (x == 1 && y == 1) ? -e : e;
        }
    return std::abs(total);
}

}  // namespace biloc
