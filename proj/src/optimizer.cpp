#include "biloc/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "biloc/random.hpp"

namespace biloc {

namespace {

constexpr std::size_t kOuterParams = 8;
constexpr std::size_t kGeneratorParams = 15;
constexpr double kGeneratorScale = 0.5;
constexpr double kRefineStep = 1e-4;

// Pauli product index m = 4 i + j - 1 for (i, j) != (0, 0).
const std::array<Mat4, 15>& generator_basis() {
    static const std::array<Mat4, 15> basis = [] {
        std::array<Mat4, 15> b;
        for (int m = 0; m < 15; ++m) b[static_cast<std::size_t>(m)] = pauli_product((m + 1) / 4, (m + 1) % 4);
        return b;
    }();
    return basis;
}

Mat4 unitary_from_generator(std::span<const double> h) {
    Mat4 herm;
    const auto& basis = generator_basis();
    for (std::size_t m = 0; m < kGeneratorParams; ++m)
        for (std::size_t e = 0; e < 16; ++e) herm.a[e] += h[m] * basis[m].a[e];
    return expm_i_hermitian(herm);
}

// Fixed references with C_y^dagger (Z (x) 1) C_y equal to Z (x) Z and X (x) X.
const std::array<Mat4, 2>& two_input_references() {
    static const std::array<Mat4, 2> refs = [] {
        Mat4 cnot21;  // control on the second qubit
        cnot21(0, 0) = 1.0;
        cnot21(1, 3) = 1.0;
        cnot21(2, 2) = 1.0;
        cnot21(3, 1) = 1.0;
        Mat2 had;
        const double h = 1.0 / std::sqrt(2.0);
        had(0, 0) = h;
        had(0, 1) = h;
        had(1, 0) = h;
        had(1, 1) = -h;
        return std::array<Mat4, 2>{cnot21, cnot21 * kron(had, had)};
    }();
    return refs;
}

SettingPair decode_pair(std::span<const double> p) {
    return {DichotomicSetting::spherical(p[0], p[1]), DichotomicSetting::spherical(p[2], p[3])};
}

// Two-input Bob: basis U^dagger e_k, with the first qubit's Z value carried on
// the bit that the input reads (B0 for input 0, B1 for input 1).
JointMeasurement dichotomic_measurement(const Mat4& u, int input) {
    const Mat4 ud = adjoint(u);
    std::array<CVec<4>, 4> basis{};
    std::array<BobBits, 4> bits{};
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t i = 0; i < 4; ++i) basis[k][i] = ud(i, k);
        const int first = k < 2 ? 1 : -1;
        const int second = (k % 2 == 0) ? 1 : -1;
        bits[k] = input == 0 ? BobBits{first, second} : BobBits{second, first};
    }
    return JointMeasurement::from_basis(basis, bits);
}

double score(SearchMode mode, const BornEvaluator& born, std::span<const double> params) {
    const DecodedSettings d = decode_settings(mode, params);
    if (mode == SearchMode::TwoInputBob) {
        const double I = compute_I(born.distribution(d.alice, d.charlie, d.bob[0]));
        const double J = compute_J(born.distribution(d.alice, d.charlie, d.bob[1]));
        return biloc_score(I, J);
    }
    return biloc_score(born.distribution(d.alice, d.charlie, d.bob[0]));
}

std::vector<double> random_start(SearchMode mode, std::mt19937_64& rng) {
    std::vector<double> x(parameter_count(mode));
    for (std::size_t i = 0; i < kOuterParams; i += 2) {
        x[i] = std::acos(1.0 - 2.0 * uniform01(rng));
        x[i + 1] = 2.0 * M_PI * uniform01(rng);
    }
    std::normal_distribution<double> gauss(0.0, kGeneratorScale);
    for (std::size_t i = kOuterParams; i < x.size(); ++i) x[i] = gauss(rng);
    return x;
}

template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) fn(i);
        });
}

SearchResult run_search(SearchMode mode, const TwoQubitState& rhoAB, const TwoQubitState& rhoBC, const OptimizerConfig& config,
                        const std::vector<std::vector<double>>& warmStarts) {
    if (config.restarts < 1) throw DomainError("optimizer needs at least one restart");
    if (!(config.tolerance > 0.0)) throw DomainError("optimizer tolerance must be positive");

    const BornEvaluator born(rhoAB, rhoBC);
    const Objective negScore = [&](std::span<const double> p) { return -score(mode, born, p); };

    const int total = config.restarts + static_cast<int>(warmStarts.size());
    std::vector<MinimizeResult> results(static_cast<std::size_t>(total));
    parallel_for(total, resolve_threads(config.threads), [&](int r) {
        std::vector<double> x0;
        if (r < config.restarts) {
            std::mt19937_64 rng(derive_seed(config.seed, static_cast<std::uint64_t>(r)));
            x0 = random_start(mode, rng);
        } else {
            x0 = warmStarts[static_cast<std::size_t>(r - config.restarts)];
        }
        results[static_cast<std::size_t>(r)] = local_search(negScore, std::move(x0), config.maxIterations, config.tolerance);
    });

    SearchResult out;
    out.mode = mode;
    std::size_t best = 0;
    for (std::size_t r = 0; r < results.size(); ++r) {
        out.evaluations += results[r].evaluations;
        if (results[r].value < results[best].value) best = r;
    }
    out.sBest = -results[best].value;
    out.settings = results[best].x;
    out.converged = results[best].converged;
    return out;
}

}  // namespace

std::string_view mode_name(SearchMode mode) {
    switch (mode) {
        case SearchMode::FixedBsm: return "fixed-bsm";
        case SearchMode::GeneralBob: return "general-bob";
        case SearchMode::TwoInputBob: return "two-input-bob";
    }
    return "fixed-bsm";
}

std::size_t parameter_count(SearchMode mode) {
    switch (mode) {
        case SearchMode::FixedBsm: return kOuterParams + 6;
        case SearchMode::GeneralBob: return kOuterParams + kGeneratorParams;
        case SearchMode::TwoInputBob: return kOuterParams + 2 * kGeneratorParams;
    }
    return 0;
}

DecodedSettings decode_settings(SearchMode mode, std::span<const double> params) {
    if (params.size() != parameter_count(mode)) throw DomainError("parameter vector has the wrong length for this mode");
    DecodedSettings d;
    d.alice = decode_pair(params.subspan(0, 4));
    d.charlie = decode_pair(params.subspan(4, 4));
    const auto bobParams = params.subspan(kOuterParams);
    switch (mode) {
        case SearchMode::FixedBsm: {
            const Mat2 left = su2_from_rotation_vector({bobParams[0], bobParams[1], bobParams[2]});
            const Mat2 right = su2_from_rotation_vector({bobParams[3], bobParams[4], bobParams[5]});
            d.bob.push_back(canonical_bsm(left, right));
            break;
        }
        case SearchMode::GeneralBob: {
            const Mat4 ud = adjoint(unitary_from_generator(bobParams));
            std::array<CVec<4>, 4> basis{};
            for (std::size_t k = 0; k < 4; ++k) basis[k] = ud * bell_states()[k];
            d.bob.push_back(JointMeasurement::from_basis(basis, kCanonicalBits));
            break;
        }
        case SearchMode::TwoInputBob: {
            const auto& refs = two_input_references();
            for (int y = 0; y < 2; ++y) {
                const Mat4 u = refs[static_cast<std::size_t>(y)] *
                               unitary_from_generator(bobParams.subspan(static_cast<std::size_t>(y) * kGeneratorParams, kGeneratorParams));
                d.bob.push_back(dichotomic_measurement(u, y));
            }
            break;
        }
    }
    return d;
}

double evaluate_settings(SearchMode mode, const TwoQubitState& rhoAB, const TwoQubitState& rhoBC, std::span<const double> params) {
    return score(mode, BornEvaluator(rhoAB, rhoBC), params);
}

std::vector<double> embed_fixed_bsm(SearchMode target, std::span<const double> fixedParams) {
    if (fixedParams.size() != parameter_count(SearchMode::FixedBsm)) throw DomainError("expected a fixed-BSM parameter vector");
    std::vector<double> x(parameter_count(target), 0.0);
    std::copy_n(fixedParams.begin(), kOuterParams, x.begin());
    if (target == SearchMode::FixedBsm) {
        std::copy(fixedParams.begin(), fixedParams.end(), x.begin());
        return x;
    }
    // exp(-i (rL.s (x) 1 + 1 (x) rR.s) / 2) = exp(i H)
    std::array<double, kGeneratorParams> h{};
    for (std::size_t i = 0; i < 3; ++i) {
        h[(i + 1) * 4 - 1] = -0.5 * fixedParams[kOuterParams + i];  // (i+1, 0)
        h[i] = -0.5 * fixedParams[kOuterParams + 3 + i];            // (0, i+1)
    }
    const int blocks = target == SearchMode::TwoInputBob ? 2 : 1;
    for (int b = 0; b < blocks; ++b)
        std::copy(h.begin(), h.end(), x.begin() + static_cast<std::ptrdiff_t>(kOuterParams + static_cast<std::size_t>(b) * kGeneratorParams));
    return x;
}

SearchResult maximize_fixed_bsm(const TwoQubitState& rhoAB, const TwoQubitState& rhoBC, const OptimizerConfig& config) {
    return run_search(SearchMode::FixedBsm, rhoAB, rhoBC, config, {});
}

SearchResult maximize_general_bob(const TwoQubitState& rhoAB, const TwoQubitState& rhoBC, const OptimizerConfig& config) {
    const SearchResult fixed = maximize_fixed_bsm(rhoAB, rhoBC, config);
    SearchResult r = run_search(SearchMode::GeneralBob, rhoAB, rhoBC, config, {embed_fixed_bsm(SearchMode::GeneralBob, fixed.settings)});
    r.evaluations += fixed.evaluations;
    return r;
}

SearchResult maximize_two_input_bob(const TwoQubitState& rhoAB, const TwoQubitState& rhoBC, const OptimizerConfig& config) {
    const SearchResult fixed = maximize_fixed_bsm(rhoAB, rhoBC, config);
    SearchResult r = run_search(SearchMode::TwoInputBob, rhoAB, rhoBC, config, {embed_fixed_bsm(SearchMode::TwoInputBob, fixed.settings)});
    r.evaluations += fixed.evaluations;
    return r;
}

ActivationReport activation_scan(const TwoQubitState& rho, const OptimizerConfig& config) {
    ActivationReport a;
    a.search = maximize_general_bob(rho, rho, config);
    a.activated = a.search.sBest > 2.0;
    return a;
}

MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, double initialStep, int maxIterations, double tolerance) {
    const std::size_t n = x0.size();
    const double dn = static_cast<double>(n);
    const double reflect = 1.0;
    const double expand = 1.0 + 2.0 / dn;
    const double contract = 0.75 - 1.0 / (2.0 * dn);
    const double shrink = 1.0 - 1.0 / dn;

    MinimizeResult out;
    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += initialStep;
    for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);
    out.evaluations = static_cast<std::int64_t>(n + 1);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    auto blend = [&](std::vector<double>& dst, double t, const std::vector<double>& worst) {
        for (std::size_t k = 0; k < n; ++k) dst[k] = centroid[k] + t * (centroid[k] - worst[k]);
    };

    for (; out.iterations < maxIterations; ++out.iterations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
        if (vals[worst] - vals[best] <= tolerance) {
            out.converged = true;
            break;
        }
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / dn;
        }

        blend(xr, reflect, pts[worst]);
        const double fr = f(xr);
        ++out.evaluations;
        if (fr < vals[best]) {
            blend(xe, reflect * expand, pts[worst]);
            const double fe = f(xe);
            ++out.evaluations;
            if (fe < fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = xr;
            vals[worst] = fr;
            continue;
        }
        const bool outside = fr < vals[worst];
        blend(xc, outside ? reflect * contract : -contract, pts[worst]);
        const double fc = f(xc);
        ++out.evaluations;
        if (fc < (outside ? fr : vals[worst])) {
            pts[worst] = xc;
            vals[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < n; ++k) pts[i][k] = pts[best][k] + shrink * (pts[i][k] - pts[best][k]);
            vals[i] = f(pts[i]);
        }
        out.evaluations += static_cast<std::int64_t>(n);
    }

    const auto bestIt = std::min_element(vals.begin(), vals.end());
    out.value = *bestIt;
    out.x = pts[static_cast<std::size_t>(bestIt - vals.begin())];
    return out;
}

MinimizeResult local_search(const Objective& f, std::vector<double> x0, int maxIterations, double tolerance) {
    // maxIterations is shared by all simplex rounds.
    MinimizeResult res = nelder_mead(f, std::move(x0), 0.5, maxIterations, tolerance);
    int used = res.iterations;
    std::int64_t evaluations = res.evaluations;
    double step = 0.05;
    bool settled = false;
    while (used < maxIterations) {
        MinimizeResult next = nelder_mead(f, res.x, step, maxIterations - used, tolerance);
        used += next.iterations;
        evaluations += next.evaluations;
        const double gain = res.value - next.value;
        if (next.value < res.value) {
            res.x = std::move(next.x);
            res.value = next.value;
        }
        if (gain <= tolerance && next.converged) {
            settled = true;
            break;
        }
        step = std::max(step * 0.5, 1e-3);
    }
    res.converged = settled;
    res.iterations = used;

    double fx = res.value;
    for (std::size_t i = 0; i < res.x.size(); ++i) {
        for (const double d : {kRefineStep, -kRefineStep}) {
            res.x[i] += d;
            const double ft = f(res.x);
            ++evaluations;
            if (ft < fx) {
                fx = ft;
                break;
            }
            res.x[i] -= d;
        }
    }
    res.value = fx;
    res.evaluations = evaluations;
    return res;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BILOC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace biloc
