#include "ksigma/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace ksigma::kern {

bool avx2_available() {
#if defined(KSIGMA_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

namespace {

Isa detect() {
    const char* env = std::getenv("KSIGMA_SIMD");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "avx2") == 0)
            return avx2_available() ? Isa::avx2 : Isa::scalar;
        // "auto" or anything else: fall through to detection
    }
    return avx2_available() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

} // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

Isa set_isa(Isa isa) {
    if (isa == Isa::avx2 && !avx2_available()) isa = Isa::scalar;
    return current().exchange(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::avx2: return "avx2";
        case Isa::scalar: return "scalar";
    }
    return "?";
}

} // namespace ksigma::kern
