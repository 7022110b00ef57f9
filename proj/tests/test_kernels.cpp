#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ksigma/kernels.hpp"
#include "ksigma/simd.hpp"

using namespace ksigma;

namespace {

// Runs f under a forced kernel set and restores the previous one.
template <class F>
auto with_isa(kern::Isa isa, const F& f) {
    const kern::Isa prev = kern::set_isa(isa);
    auto result = f();
    kern::set_isa(prev);
    return result;
}

std::vector<double> make_test_data(std::size_t n, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> dist(0.25, 1.7);
    std::vector<double> v(n);
    for (double& x : v) x = dist(gen);
    return v;
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("philox4x32-10 known-answer vectors") {
    // Reference vectors for the published Philox4x32-10 parametrization.
    {
        const PhiloxBlock r = philox4x32(PhiloxBlock{{0, 0, 0, 0}}, PhiloxKey{0, 0});
        CHECK(r.w[0] == 0x6627e8d5u);
        CHECK(r.w[1] == 0xe169c58du);
        CHECK(r.w[2] == 0xbc57ac4cu);
        CHECK(r.w[3] == 0x9b00dbd8u);
    }
    {
        const PhiloxBlock r = philox4x32(
            PhiloxBlock{{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}},
            PhiloxKey{0xffffffffu, 0xffffffffu});
        CHECK(r.w[0] == 0x408f276du);
        CHECK(r.w[1] == 0x41c83b0eu);
        CHECK(r.w[2] == 0xa20bc7c6u);
        CHECK(r.w[3] == 0x6d5451fdu);
    }
    {
        const PhiloxBlock r = philox4x32(
            PhiloxBlock{{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}},
            PhiloxKey{0xa4093822u, 0x299f31d0u});
        CHECK(r.w[0] == 0xd16cfe09u);
        CHECK(r.w[1] == 0x94fdccebu);
        CHECK(r.w[2] == 0x5001e420u);
        CHECK(r.w[3] == 0x24126ea1u);
    }
}

TEST_CASE("bulk uniform generation matches the block function") {
    const PhiloxKey key{0x12345678u, 0x9abcdef0u};
    const std::uint64_t stream = 0x0011223344556677ull;
    std::vector<double> bulk(2 * 37);
    kern::philox_u01_blocks(key, stream, 5, 37, bulk.data());
    for (std::size_t b = 0; b < 37; ++b) {
        PhiloxBlock ctr;
        const std::uint64_t idx = 5 + b;
        ctr.w[0] = static_cast<std::uint32_t>(idx);
        ctr.w[1] = static_cast<std::uint32_t>(idx >> 32);
        ctr.w[2] = static_cast<std::uint32_t>(stream);
        ctr.w[3] = static_cast<std::uint32_t>(stream >> 32);
        const PhiloxBlock r = philox4x32(ctr, key);
        const std::uint64_t a =
            static_cast<std::uint64_t>(r.w[0]) | (static_cast<std::uint64_t>(r.w[1]) << 32);
        const std::uint64_t c =
            static_cast<std::uint64_t>(r.w[2]) | (static_cast<std::uint64_t>(r.w[3]) << 32);
        CHECK(bulk[2 * b] == u64_to_unit_open(a));
        CHECK(bulk[2 * b + 1] == u64_to_unit_open(c));
    }
}

TEST_CASE("avx2 kernels are bit-identical to the scalar reference") {
    if (!kern::avx2_available()) {
        MESSAGE("avx2 not available; skipping equivalence checks");
        return;
    }
    const PhiloxKey key{0xdeadbeefu, 0x0badf00du};
    for (const std::size_t nblocks : {std::size_t{0}, std::size_t{1}, std::size_t{7},
                                      std::size_t{8}, std::size_t{9}, std::size_t{1023}}) {
        const auto a = with_isa(kern::Isa::scalar, [&] {
            std::vector<double> v(2 * nblocks);
            kern::philox_u01_blocks(key, 42, 1000, nblocks, v.data());
            return v;
        });
        const auto b = with_isa(kern::Isa::avx2, [&] {
            std::vector<double> v(2 * nblocks);
            kern::philox_u01_blocks(key, 42, 1000, nblocks, v.data());
            return v;
        });
        CHECK(a == b);
    }

    for (const std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{7}, std::size_t{8},
                                std::size_t{9}, std::size_t{31}, std::size_t{1000},
                                std::size_t{4099}}) {
        const std::vector<double> x = make_test_data(n, static_cast<unsigned>(17 + n));
        const double mean = 0.37;
        const double s_sum = with_isa(kern::Isa::scalar, [&] { return kern::sum(x.data(), n); });
        const double v_sum = with_isa(kern::Isa::avx2, [&] { return kern::sum(x.data(), n); });
        CHECK(s_sum == v_sum);

        const double s_dev =
            with_isa(kern::Isa::scalar, [&] { return kern::sum_sq_dev(x.data(), n, mean); });
        const double v_dev =
            with_isa(kern::Isa::avx2, [&] { return kern::sum_sq_dev(x.data(), n, mean); });
        CHECK(s_dev == v_dev);

        const std::size_t s_cnt = with_isa(
            kern::Isa::scalar, [&] { return kern::count_abs_gt(x.data(), n, 0.25, 1.7); });
        const std::size_t v_cnt = with_isa(
            kern::Isa::avx2, [&] { return kern::count_abs_gt(x.data(), n, 0.25, 1.7); });
        CHECK(s_cnt == v_cnt);
    }
}

TEST_CASE("reduction kernels agree with a high-precision reference") {
    const std::vector<double> x = make_test_data(4099, 99);
    long double lsum = 0.0L;
    long double ldev = 0.0L;
    std::size_t lcnt = 0;
    for (const double v : x) {
        lsum += v;
        const long double d = static_cast<long double>(v) - 0.25L;
        ldev += d * d;
        if (std::fabs(v - 0.25) > 1.7) ++lcnt;
    }
    CHECK(kern::sum(x.data(), x.size()) ==
          doctest::Approx(static_cast<double>(lsum)).epsilon(1e-12));
    CHECK(kern::sum_sq_dev(x.data(), x.size(), 0.25) ==
          doctest::Approx(static_cast<double>(ldev)).epsilon(1e-12));
    CHECK(kern::count_abs_gt(x.data(), x.size(), 0.25, 1.7) == lcnt);
}

} // TEST_SUITE
