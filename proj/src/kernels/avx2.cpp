#include <immintrin.h>

#include <cassert>

#include "biloc/kernels.hpp"

namespace biloc::kernels::avx2 {

void contract4(std::span<const double> lhs, std::span<const double> rhs, std::span<double> out) {
    const std::size_t n = lhs.size() / 4;
    const std::size_t m = rhs.size() / 4;
    assert(out.size() >= n * m);
    const double* R = rhs.data();

    std::size_t j = 0;
    for (; j + 4 <= m; j += 4) {
        // Transpose four rhs rows into coefficient columns.
        const __m256d r0 = _mm256_loadu_pd(R + (j + 0) * 4);
        const __m256d r1 = _mm256_loadu_pd(R + (j + 1) * 4);
        const __m256d r2 = _mm256_loadu_pd(R + (j + 2) * 4);
        const __m256d r3 = _mm256_loadu_pd(R + (j + 3) * 4);
        const __m256d t0 = _mm256_unpacklo_pd(r0, r1);
        const __m256d t1 = _mm256_unpackhi_pd(r0, r1);
        const __m256d t2 = _mm256_unpacklo_pd(r2, r3);
        const __m256d t3 = _mm256_unpackhi_pd(r2, r3);
        const __m256d c0 = _mm256_permute2f128_pd(t0, t2, 0x20);
        const __m256d c1 = _mm256_permute2f128_pd(t1, t3, 0x20);
        const __m256d c2 = _mm256_permute2f128_pd(t0, t2, 0x31);
        const __m256d c3 = _mm256_permute2f128_pd(t1, t3, 0x31);
        for (std::size_t i = 0; i < n; ++i) {
            const double* l = lhs.data() + i * 4;
            __m256d acc = _mm256_mul_pd(_mm256_broadcast_sd(l + 0), c0);
            acc = _mm256_fmadd_pd(_mm256_broadcast_sd(l + 1), c1, acc);
            acc = _mm256_fmadd_pd(_mm256_broadcast_sd(l + 2), c2, acc);
            acc = _mm256_fmadd_pd(_mm256_broadcast_sd(l + 3), c3, acc);
            _mm256_storeu_pd(out.data() + i * m + j, acc);
        }
    }
    for (; j < m; ++j) {
        const __m256d r = _mm256_loadu_pd(R + j * 4);
        for (std::size_t i = 0; i < n; ++i) {
            const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(lhs.data() + i * 4), r);
            const __m128d lo = _mm256_castpd256_pd128(p);
            const __m128d hi = _mm256_extractf128_pd(p, 1);
            const __m128d s = _mm_add_pd(lo, hi);
            out[i * m + j] = _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
        }
    }
}

void bucket_counts(std::span<const double> uniforms, std::span<const double> cdf, std::span<std::uint64_t> counts) {
    const std::size_t k = cdf.size();
    assert(k >= 1 && counts.size() >= k);
    const std::size_t n = uniforms.size();
    alignas(32) std::int64_t idx[4];

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d u = _mm256_loadu_pd(uniforms.data() + i);
        __m256i acc = _mm256_setzero_si256();
        for (std::size_t j = 0; j + 1 < k; ++j) {
            const __m256d mask = _mm256_cmp_pd(_mm256_broadcast_sd(cdf.data() + j), u, _CMP_LE_OQ);
            acc = _mm256_sub_epi64(acc, _mm256_castpd_si256(mask));
        }
        _mm256_store_si256(reinterpret_cast<__m256i*>(idx), acc);
        ++counts[static_cast<std::size_t>(idx[0])];
        ++counts[static_cast<std::size_t>(idx[1])];
        ++counts[static_cast<std::size_t>(idx[2])];
        ++counts[static_cast<std::size_t>(idx[3])];
    }
    if (i < n) scalar::bucket_counts(uniforms.subspan(i), cdf, counts);
}

}  // namespace biloc::kernels::avx2
