#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "biloc/kernels.hpp"
#include "biloc/network.hpp"
#include "biloc/random.hpp"

namespace biloc {

namespace {

constexpr std::size_t kChunk = 4096;

// Cumulative distribution of one 16-outcome slice. Entries from the last
// outcome with positive probability onward are pinned to 1 so that zero
// probability tails can never be drawn.
std::array<double, 16> slice_cdf(const std::array<double, 16>& p) {
    std::array<double, 16> q{};
    double total = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
        q[i] = std::max(0.0, p[i]);
        total += q[i];
    }
    std::size_t last = 0;
    for (std::size_t i = 0; i < 16; ++i)
        if (q[i] > 0.0) last = i;
    std::array<double, 16> cdf{};
    double run = 0.0;
    for (std::size_t i = 0; i < 16; ++i) {
        run += q[i] / total;
        cdf[i] = i >= last ? 1.0 : std::min(run, 1.0);
    }
    return cdf;
}

}  // namespace

SampleEstimate sample_outcomes(const TripartiteDistribution& dist, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw DomainError("sampling requires at least one shot per setting pair");

    SampleEstimate est;
    est.shotsPerSettingPair = shots;
    const double n = static_cast<double>(shots);
    double varI = 0.0, varJ = 0.0, covIJ = 0.0;

    std::vector<double> uniforms(kChunk);
    for (int x = 0; x < 2; ++x)
        for (int z = 0; z < 2; ++z) {
            const auto stream = static_cast<std::uint64_t>(x * 2 + z);
            std::mt19937_64 rng(derive_seed(seed, stream));
            const auto cdf = slice_cdf(dist.slice(x, z));
            std::array<std::uint64_t, 16> counts{};
            std::uint64_t remaining = shots;
            while (remaining > 0) {
                const std::size_t take = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, kChunk));
                for (std::size_t i = 0; i < take; ++i) uniforms[i] = uniform01(rng);
                kernels::bucket_counts(std::span<const double>(uniforms.data(), take), cdf, counts);
                remaining -= take;
            }

            const std::size_t base = TripartiteDistribution::index(x, z, 1, 1, 1, 1);
            double s0 = 0.0, s1 = 0.0, s01 = 0.0;
            for (std::size_t k = 0; k < 16; ++k) {
                est.counts[base + k] = counts[k];
                const int a = (k & 8) ? -1 : 1;
                const int b0 = (k & 4) ? -1 : 1;
                const int b1 = (k & 2) ? -1 : 1;
                const int c = (k & 1) ? -1 : 1;
                const double w = static_cast<double>(counts[k]);
                s0 += w * a * b0 * c;
                s1 += w * a * b1 * c;
                s01 += w * b0 * b1;
            }
            const double e0 = s0 / n, e1 = s1 / n, e01 = s01 / n;
            est.correlators[static_cast<std::size_t>(x)][static_cast<std::size_t>(z)][0] = e0;
            est.correlators[static_cast<std::size_t>(x)][static_cast<std::size_t>(z)][1] = e1;

            const int sign = ((x + z) % 2) ? -1 : 1;
            est.I += e0;
            est.J += sign * e1;
            if (shots >= 2) {
                // Variance of the sample mean of a +-1 variable, unbiased.
                varI += (1.0 - e0 * e0) / (n - 1.0);
                varJ += (1.0 - e1 * e1) / (n - 1.0);
                covIJ += sign * (e01 - e0 * e1) / (n - 1.0);
            }
        }

    est.S = biloc_score(est.I, est.J);
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    if (shots < 2) {
        est.unreliable = true;
        est.stderr_I = est.stderr_J = est.stderr_S = nan;
        return est;
    }
    est.stderr_I = std::sqrt(varI);
    est.stderr_J = std::sqrt(varJ);
    if (est.I == 0.0 || est.J == 0.0) {
        est.unreliable = true;
        est.stderr_S = nan;
        return est;
    }
    // Delta method through sqrt|I| + sqrt|J|.
    const double gI = (est.I > 0 ? 1.0 : -1.0) / (2.0 * std::sqrt(std::abs(est.I)));
    const double gJ = (est.J > 0 ? 1.0 : -1.0) / (2.0 * std::sqrt(std::abs(est.J)));
    est.stderr_S = std::sqrt(std::max(0.0, gI * gI * varI + gJ * gJ * varJ + 2.0 * gI * gJ * covIJ));
    return est;
}

}  // namespace biloc
