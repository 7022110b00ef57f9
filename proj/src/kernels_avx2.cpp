#include "ksigma/kernels.hpp"

#if defined(KSIGMA_HAVE_AVX2_TU)

#include <immintrin.h>

#include <cmath>

namespace ksigma::kern::avx2 {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

// 32x32 -> 64 bit multiply of every u32 lane against a broadcast constant,
// returning the high and low halves per lane.
inline void mulhilo8(__m256i x, __m256i m, __m256i& hi, __m256i& lo) {
    const __m256i prod_e = _mm256_mul_epu32(x, m);
    const __m256i prod_o = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), m);
    lo = _mm256_blend_epi32(prod_e, _mm256_slli_epi64(prod_o, 32), 0xAA);
    hi = _mm256_blend_epi32(_mm256_srli_epi64(prod_e, 32), prod_o, 0xAA);
}

// Exact u64 -> double for values < 2^53, assembled as hi32 * 2^32 + lo32.
// Both partial conversions and the combination are exact, so the result is
// bit-identical to a scalar static_cast<double>.
inline __m256d u64_to_f64(__m256i v) {
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000ll);
    const __m256d two52 = _mm256_set1_pd(0x1.0p52);
    const __m256i lo32 = _mm256_and_si256(v, _mm256_set1_epi64x(0xFFFFFFFFll));
    const __m256i hi32 = _mm256_srli_epi64(v, 32);
    const __m256d dlo =
        _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(lo32, magic)), two52);
    const __m256d dhi =
        _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(hi32, magic)), two52);
    return _mm256_add_pd(_mm256_mul_pd(dhi, _mm256_set1_pd(0x1.0p32)), dlo);
}

// ((double)(u >> 11) + 0.5) * 2^-53, matching u64_to_unit_open.
inline __m256d u64_to_unit(__m256i u) {
    const __m256d d = u64_to_f64(_mm256_srli_epi64(u, 11));
    return _mm256_mul_pd(_mm256_add_pd(d, _mm256_set1_pd(0.5)),
                         _mm256_set1_pd(0x1.0p-53));
}

} // namespace

void philox_u01_blocks(PhiloxKey key, std::uint64_t stream_id, std::uint64_t block0,
                       std::size_t nblocks, double* out) {
    const __m256i m0 = _mm256_set1_epi32(static_cast<int>(kM0));
    const __m256i m1 = _mm256_set1_epi32(static_cast<int>(kM1));
    const __m256i w0 = _mm256_set1_epi32(static_cast<int>(kW0));
    const __m256i w1 = _mm256_set1_epi32(static_cast<int>(kW1));

    std::size_t i = 0;
    for (; i + 8 <= nblocks; i += 8) {
        alignas(32) std::uint32_t blo[8];
        alignas(32) std::uint32_t bhi[8];
        for (int j = 0; j < 8; ++j) {
            const std::uint64_t b = block0 + i + j;
            blo[j] = static_cast<std::uint32_t>(b);
            bhi[j] = static_cast<std::uint32_t>(b >> 32);
        }
        __m256i x0 = _mm256_load_si256(reinterpret_cast<const __m256i*>(blo));
        __m256i x1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(bhi));
        __m256i x2 = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(stream_id)));
        __m256i x3 = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(stream_id >> 32)));
        __m256i k0 = _mm256_set1_epi32(static_cast<int>(key.k0));
        __m256i k1 = _mm256_set1_epi32(static_cast<int>(key.k1));

        for (int round = 0; round < 10; ++round) {
            __m256i hi0, lo0, hi1, lo1;
            mulhilo8(x0, m0, hi0, lo0);
            mulhilo8(x2, m1, hi1, lo1);
            const __m256i n0 = _mm256_xor_si256(_mm256_xor_si256(hi1, x1), k0);
            const __m256i n2 = _mm256_xor_si256(_mm256_xor_si256(hi0, x3), k1);
            x0 = n0;
            x1 = lo1;
            x2 = n2;
            x3 = lo0;
            k0 = _mm256_add_epi32(k0, w0);
            k1 = _mm256_add_epi32(k1, w1);
        }

        // Per block j the two outputs come from (w0|w1<<32) and (w2|w3<<32).
        const __m256i a_lo = _mm256_unpacklo_epi32(x0, x1); // a0 a1 | a4 a5
        const __m256i a_hi = _mm256_unpackhi_epi32(x0, x1); // a2 a3 | a6 a7
        const __m256i b_lo = _mm256_unpacklo_epi32(x2, x3);
        const __m256i b_hi = _mm256_unpackhi_epi32(x2, x3);

        const __m256d da_lo = u64_to_unit(a_lo);
        const __m256d da_hi = u64_to_unit(a_hi);
        const __m256d db_lo = u64_to_unit(b_lo);
        const __m256d db_hi = u64_to_unit(b_hi);

        const __m256d p = _mm256_unpacklo_pd(da_lo, db_lo); // d0_0 d1_0 | d0_4 d1_4
        const __m256d q = _mm256_unpackhi_pd(da_lo, db_lo); // d0_1 d1_1 | d0_5 d1_5
        const __m256d r = _mm256_unpacklo_pd(da_hi, db_hi);
        const __m256d s = _mm256_unpackhi_pd(da_hi, db_hi);

        double* o = out + 2 * i;
        _mm256_storeu_pd(o + 0, _mm256_permute2f128_pd(p, q, 0x20));
        _mm256_storeu_pd(o + 4, _mm256_permute2f128_pd(r, s, 0x20));
        _mm256_storeu_pd(o + 8, _mm256_permute2f128_pd(p, q, 0x31));
        _mm256_storeu_pd(o + 12, _mm256_permute2f128_pd(r, s, 0x31));
    }

    if (i < nblocks)
        scalar::philox_u01_blocks(key, stream_id, block0 + i, nblocks - i, out + 2 * i);
}

namespace {

// ((s0+s4)+(s1+s5)) + ((s2+s6)+(s3+s7)) for stripe accumulators held as
// a = {s0..s3}, b = {s4..s7}; identical order to the scalar reference.
inline double combine_stripes(__m256d a, __m256d b) {
    const __m256d v = _mm256_add_pd(a, b);
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const double l01 = _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
    const double l23 = _mm_cvtsd_f64(hi) + _mm_cvtsd_f64(_mm_unpackhi_pd(hi, hi));
    return l01 + l23;
}

} // namespace

double sum(const double* x, std::size_t n) {
    __m256d a = _mm256_setzero_pd();
    __m256d b = _mm256_setzero_pd();
    const std::size_t n8 = n & ~static_cast<std::size_t>(7);
    std::size_t i = 0;
    for (; i < n8; i += 8) {
        a = _mm256_add_pd(a, _mm256_loadu_pd(x + i));
        b = _mm256_add_pd(b, _mm256_loadu_pd(x + i + 4));
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += x[i];
    return combine_stripes(a, b) + tail;
}

double sum_sq_dev(const double* x, std::size_t n, double mean) {
    const __m256d mv = _mm256_set1_pd(mean);
    __m256d a = _mm256_setzero_pd();
    __m256d b = _mm256_setzero_pd();
    const std::size_t n8 = n & ~static_cast<std::size_t>(7);
    std::size_t i = 0;
    for (; i < n8; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), mv);
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 4), mv);
        a = _mm256_add_pd(a, _mm256_mul_pd(d0, d0));
        b = _mm256_add_pd(b, _mm256_mul_pd(d1, d1));
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        const double d = x[i] - mean;
        tail += d * d;
    }
    return combine_stripes(a, b) + tail;
}

std::size_t count_abs_gt(const double* x, std::size_t n, double center, double threshold) {
    const __m256d cv = _mm256_set1_pd(center);
    const __m256d tv = _mm256_set1_pd(threshold);
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFll));
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_and_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), cv), absmask);
        const __m256d m = _mm256_cmp_pd(d, tv, _CMP_GT_OQ);
        count += static_cast<std::size_t>(__builtin_popcount(
            static_cast<unsigned>(_mm256_movemask_pd(m))));
    }
    for (; i < n; ++i)
        if (std::fabs(x[i] - center) > threshold) ++count;
    return count;
}

} // namespace ksigma::kern::avx2

#endif // KSIGMA_HAVE_AVX2_TU
