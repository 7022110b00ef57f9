#pragma once

namespace ksigma::kern {

// Instruction set used by the bulk kernels. Every variant computes
// bit-identical results; the choice only affects speed.
enum class Isa {
    scalar,
    avx2,
};

// The kernel set selected for this process. Resolved once: the KSIGMA_SIMD
// environment variable ("scalar", "avx2", "auto") wins, otherwise the best
// set supported by the CPU is used. Requesting avx2 on a CPU without it
// falls back to scalar.
Isa active_isa();

// Force a kernel set (used by the equivalence tests). Returns the previous
// setting.
Isa set_isa(Isa isa);

// True if this build carries AVX2 kernels and the CPU can run them.
bool avx2_available();

const char* isa_name(Isa isa);

} // namespace ksigma::kern
