#include <doctest.h>

#include <cmath>
#include <vector>

#include "ksigma/randomsums.hpp"
#include "ksigma/rng.hpp"

using namespace ksigma;

TEST_SUITE("rng") {

TEST_CASE("streams are pure functions of (seed, stream_id)") {
    RngStream a(123, 7);
    RngStream b(123, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u01() == b.next_u01());
}

TEST_CASE("distinct stream ids give distinct sequences") {
    RngStream a(123, 0);
    RngStream b(123, 1);
    int equal = 0;
    for (int i = 0; i < 1000; ++i)
        if (a.next_u01() == b.next_u01()) ++equal;
    CHECK(equal == 0);
}

TEST_CASE("advancing one stream never affects another") {
    RngStream a(55, 1);
    RngStream b(55, 2);
    std::vector<double> b_alone(100);
    {
        RngStream b2(55, 2);
        for (double& v : b_alone) v = b2.next_u01();
    }
    for (int i = 0; i < 100; ++i) {
        for (int burn = 0; burn < 17; ++burn) a.next_u01(); // interleaved traffic on a
        CHECK(b.next_u01() == b_alone[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("fill_u01 equals repeated next_u01 at any buffer phase") {
    for (const std::size_t warmup : {std::size_t{0}, std::size_t{1}, std::size_t{3}}) {
        for (const std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{5},
                                    std::size_t{64}, std::size_t{1001}}) {
            RngStream seq(77, 9);
            RngStream blk(77, 9);
            for (std::size_t i = 0; i < warmup; ++i) {
                const double a = seq.next_u01();
                const double b = blk.next_u01();
                CHECK(a == b);
            }
            std::vector<double> filled(n);
            blk.fill_u01(filled);
            for (std::size_t i = 0; i < n; ++i) CHECK(filled[i] == seq.next_u01());
            CHECK(blk.next_u01() == seq.next_u01()); // phases stay aligned afterwards
        }
    }
}

TEST_CASE("uniform variates are strictly inside (0,1) and uniform") {
    const std::size_t n = 1000000;
    RngStream stream(2024, 3);
    std::vector<double> u(n);
    stream.fill_u01(u);
    double lo = 1.0, hi = 0.0, total = 0.0;
    for (const double v : u) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        total += v;
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    const double mean = total / static_cast<double>(n);
    CHECK(mean == doctest::Approx(0.5).epsilon(5.0 / std::sqrt(12.0 * n) / 0.5));

    // Kolmogorov bound at the 0.999 level for the uniform reference.
    const double d = ks_distance(u, [](double x) { return x; });
    CHECK(d < 1.95 / std::sqrt(static_cast<double>(n)));
}

} // TEST_SUITE
