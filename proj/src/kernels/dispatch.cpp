#include <cstdlib>
#include <string>

#include "biloc/kernels.hpp"

namespace biloc::kernels {

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Avx2: return "avx2";
        case Isa::Scalar: break;
    }
    return "scalar";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2:
#if defined(BILOC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

namespace {

Isa detect() {
    if (const char* forced = std::getenv("BILOC_SIMD")) {
        if (std::string(forced) == "scalar") return Isa::Scalar;
    }
    if (isa_available(Isa::Avx2)) return Isa::Avx2;
    return Isa::Scalar;
}

}  // namespace

Isa active_isa() {
    static const Isa isa = detect();
    return isa;
}

void contract4(std::span<const double> lhs, std::span<const double> rhs, std::span<double> out) {
#if defined(BILOC_HAVE_AVX2)
    if (active_isa() == Isa::Avx2) return avx2::contract4(lhs, rhs, out);
#endif
    scalar::contract4(lhs, rhs, out);
}

void bucket_counts(std::span<const double> uniforms, std::span<const double> cdf, std::span<std::uint64_t> counts) {
#if defined(BILOC_HAVE_AVX2)
    if (active_isa() == Isa::Avx2) return avx2::bucket_counts(uniforms, cdf, counts);
#endif
    scalar::bucket_counts(uniforms, cdf, counts);
}

}  // namespace biloc::kernels
