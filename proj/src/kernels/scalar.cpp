#include "biloc/kernels.hpp"

#include <cassert>

namespace biloc::kernels::scalar {

void contract4(std::span<const double> lhs, std::span<const double> rhs, std::span<double> out) {
    const std::size_t n = lhs.size() / 4;
    const std::size_t m = rhs.size() / 4;
    assert(out.size() >= n * m);
    for (std::size_t i = 0; i < n; ++i) {
        const double* l = &lhs[i * 4];
        for (std::size_t j = 0; j < m; ++j) {
            const double* r = &rhs[j * 4];
            out[i * m + j] = l[0] * r[0] + l[1] * r[1] + l[2] * r[2] + l[3] * r[3];
        }
    }
}

void bucket_counts(std::span<const double> uniforms, std::span<const double> cdf, std::span<std::uint64_t> counts) {
    const std::size_t k = cdf.size();
    assert(k >= 1 && counts.size() >= k);
    for (const double u : uniforms) {
        std::size_t idx = 0;
        for (std::size_t j = 0; j + 1 < k; ++j) idx += (cdf[j] <= u) ? 1 : 0;
        ++counts[idx];
    }
}

}  // namespace biloc::kernels::scalar
