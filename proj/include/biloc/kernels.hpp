#pragma once

// Data-parallel inner loops with a scalar reference and ISA-specific
// variants. The public entry points dispatch on the instruction set detected
// at first use; BILOC_SIMD=scalar in the environment forces the reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace biloc::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// ISA chosen for dispatch (detected once per process).
Isa active_isa();

/// True when `isa` was compiled in and the CPU supports it.
bool isa_available(Isa isa);

/// out[i * m + j] = sum_t lhs[i * 4 + t] * rhs[j * 4 + t] for n rows of lhs
/// and m rows of rhs, each a packed 4-vector.
void contract4(std::span<const double> lhs, std::span<const double> rhs, std::span<double> out);

/// Inverse-CDF bucketing: for each u, the outcome index is the number of
/// cdf entries (excluding the last) that are <= u. counts[k] is incremented
/// per outcome; cdf must be non-decreasing with cdf.back() == 1.
void bucket_counts(std::span<const double> uniforms, std::span<const double> cdf, std::span<std::uint64_t> counts);

namespace scalar {
void contract4(std::span<const double> lhs, std::span<const double> rhs, std::span<double> out);
void bucket_counts(std::span<const double> uniforms, std::span<const double> cdf, std::span<std::uint64_t> counts);
}  // namespace scalar

#if defined(BILOC_HAVE_AVX2)
namespace avx2 {
void contract4(std::span<const double> lhs, std::span<const double> rhs, std::span<double> out);
void bucket_counts(std::span<const double> uniforms, std::span<const double> cdf, std::span<std::uint64_t> counts);
}  // namespace avx2
#endif

}  // namespace biloc::kernels
