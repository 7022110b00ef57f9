#include "ksigma/kernels.hpp"

#include <cmath>

namespace ksigma {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

} // namespace

PhiloxBlock philox4x32(PhiloxBlock c, PhiloxKey key) {
    std::uint32_t k0 = key.k0;
    std::uint32_t k1 = key.k1;
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, c.w[0], hi0, lo0);
        mulhilo(kPhiloxM1, c.w[2], hi1, lo1);
        const PhiloxBlock next{{hi1 ^ c.w[1] ^ k0, lo1, hi0 ^ c.w[3] ^ k1, lo0}};
        c = next;
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    return c;
}

namespace kern::scalar {

void philox_u01_blocks(PhiloxKey key, std::uint64_t stream_id, std::uint64_t block0,
                       std::size_t nblocks, double* out) {
    for (std::size_t i = 0; i < nblocks; ++i) {
        const std::uint64_t b = block0 + i;
        PhiloxBlock ctr;
        ctr.w[0] = static_cast<std::uint32_t>(b);
        ctr.w[1] = static_cast<std::uint32_t>(b >> 32);
        ctr.w[2] = static_cast<std::uint32_t>(stream_id);
        ctr.w[3] = static_cast<std::uint32_t>(stream_id >> 32);
        const PhiloxBlock r = philox4x32(ctr, key);
        const std::uint64_t a = static_cast<std::uint64_t>(r.w[0]) |
                                (static_cast<std::uint64_t>(r.w[1]) << 32);
        const std::uint64_t c = static_cast<std::uint64_t>(r.w[2]) |
                                (static_cast<std::uint64_t>(r.w[3]) << 32);
        out[2 * i] = u64_to_unit_open(a);
        out[2 * i + 1] = u64_to_unit_open(c);
    }
}

double sum(const double* x, std::size_t n) {
    double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    const std::size_t n8 = n & ~static_cast<std::size_t>(7);
    std::size_t i = 0;
    for (; i < n8; i += 8)
        for (int j = 0; j < 8; ++j) acc[j] += x[i + j];
    double tail = 0.0;
    for (; i < n; ++i) tail += x[i];
    return (((acc[0] + acc[4]) + (acc[1] + acc[5])) +
            ((acc[2] + acc[6]) + (acc[3] + acc[7]))) + tail;
}

double sum_sq_dev(const double* x, std::size_t n, double mean) {
    double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    const std::size_t n8 = n & ~static_cast<std::size_t>(7);
    std::size_t i = 0;
    for (; i < n8; i += 8) {
        for (int j = 0; j < 8; ++j) {
            const double d = x[i + j] - mean;
            acc[j] += d * d;
        }
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        const double d = x[i] - mean;
        tail += d * d;
    }
    return (((acc[0] + acc[4]) + (acc[1] + acc[5])) +
            ((acc[2] + acc[6]) + (acc[3] + acc[7]))) + tail;
}

std::size_t count_abs_gt(const double* x, std::size_t n, double center, double threshold) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (std::fabs(x[i] - center) > threshold) ++count;
    return count;
}

} // namespace kern::scalar

namespace kern {

void philox_u01_blocks(PhiloxKey key, std::uint64_t stream_id, std::uint64_t block0,
                       std::size_t nblocks, double* out) {
#if defined(KSIGMA_HAVE_AVX2_TU)
    if (active_isa() == Isa::avx2)
        return avx2::philox_u01_blocks(key, stream_id, block0, nblocks, out);
#endif
    scalar::philox_u01_blocks(key, stream_id, block0, nblocks, out);
}

double sum(const double* x, std::size_t n) {
#if defined(KSIGMA_HAVE_AVX2_TU)
    if (active_isa() == Isa::avx2) return avx2::sum(x, n);
#endif
    return scalar::sum(x, n);
}

double sum_sq_dev(const double* x, std::size_t n, double mean) {
#if defined(KSIGMA_HAVE_AVX2_TU)
    if (active_isa() == Isa::avx2) return avx2::sum_sq_dev(x, n, mean);
#endif
    return scalar::sum_sq_dev(x, n, mean);
}

std::size_t count_abs_gt(const double* x, std::size_t n, double center, double threshold) {
#if defined(KSIGMA_HAVE_AVX2_TU)
    if (active_isa() == Isa::avx2) return avx2::count_abs_gt(x, n, center, threshold);
#endif
    return scalar::count_abs_gt(x, n, center, threshold);
}

} // namespace kern

} // namespace ksigma
