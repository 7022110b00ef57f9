#pragma once

#include <cstddef>
#include <cstdint>

#include "ksigma/rng.hpp"
#include "ksigma/simd.hpp"

namespace ksigma::kern {

// Bulk kernels behind the hot loops: uniform generation, moment reductions
// and outlier counting. Each has a scalar reference implementation and an
// AVX2 variant; both follow the same 8-stripe accumulation order, so results
// are bit-identical whichever is active.

// Writes 2*nblocks doubles in (0,1): blocks block0, block0+1, ... of the
// (key, stream_id) Philox stream, two doubles per block.
void philox_u01_blocks(PhiloxKey key, std::uint64_t stream_id, std::uint64_t block0,
                       std::size_t nblocks, double* out);

// Sum of x[0..n) with 8 striped accumulators combined as
// ((s0+s4)+(s1+s5)) + ((s2+s6)+(s3+s7)), plus a left-to-right tail.
double sum(const double* x, std::size_t n);

// Sum of (x[i] - mean)^2 in the same stripe order.
double sum_sq_dev(const double* x, std::size_t n, double mean);

// Number of elements with |x[i] - center| > threshold (strict).
std::size_t count_abs_gt(const double* x, std::size_t n, double center, double threshold);

namespace scalar {
void philox_u01_blocks(PhiloxKey key, std::uint64_t stream_id, std::uint64_t block0,
                       std::size_t nblocks, double* out);
double sum(const double* x, std::size_t n);
double sum_sq_dev(const double* x, std::size_t n, double mean);
std::size_t count_abs_gt(const double* x, std::size_t n, double center, double threshold);
} // namespace scalar

#if defined(KSIGMA_HAVE_AVX2_TU)
namespace avx2 {
void philox_u01_blocks(PhiloxKey key, std::uint64_t stream_id, std::uint64_t block0,
                       std::size_t nblocks, double* out);
double sum(const double* x, std::size_t n);
double sum_sq_dev(const double* x, std::size_t n, double mean);
std::size_t count_abs_gt(const double* x, std::size_t n, double center, double threshold);
} // namespace avx2
#endif

} // namespace ksigma::kern
