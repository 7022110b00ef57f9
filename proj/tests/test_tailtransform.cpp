#include <doctest.h>

#include <cmath>

#include "ksigma/charfn.hpp"
#include "ksigma/kernels.hpp"
#include "ksigma/samplers.hpp"
#include "ksigma/tailtransform.hpp"

using namespace ksigma;

namespace {

double gauss_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
double gauss_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

} // namespace

TEST_SUITE("tailtransform") {

TEST_CASE("transformed CDF: limits, atom and symmetry") {
    CHECK(put_tail_down_cdf(gauss_cdf, 0.3, -40.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(put_tail_down_cdf(gauss_cdf, 0.3, 40.0) == doctest::Approx(1.0).epsilon(1e-12));
    // Right-continuity at the atom: H(0) = 1.
    CHECK(put_tail_down_cdf(gauss_cdf, 0.5, 0.0) == doctest::Approx(0.75).epsilon(1e-12));

    for (const double p : {0.1, 0.5, 0.9})
        for (const double x : {0.25, 1.0, 3.0})
            CHECK(put_tail_down_cdf(gauss_cdf, p, -x) ==
                  doctest::Approx(1.0 - put_tail_down_cdf(gauss_cdf, p, x)).epsilon(1e-12));

    CHECK_THROWS_AS(put_tail_down_cdf(gauss_cdf, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(put_tail_down_cdf(gauss_cdf, 1.0, 1.0), std::domain_error);
}

TEST_CASE("transformed CDF is nondecreasing onto [0,1]") {
    double prev = -1.0;
    for (double x = -6.0; x <= 6.0; x += 0.01) {
        const double v = put_tail_down_cdf(gauss_cdf, 0.35, x);
        CHECK(v >= prev);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
    }
}

TEST_CASE("transformed outlier probability: identity limits and closed form") {
    // p -> 0 recovers the base law's own outlier probability.
    CHECK(outlier_prob_ptd(gauss_tail, 1e-12, 3.0, 1.0) ==
          doctest::Approx(2.0 * gauss_tail(3.0)).epsilon(1e-9));

    // Gaussian base, p = 1/2: 2 * 0.5 * tail(3/sqrt(2)).
    CHECK(outlier_prob_ptd(gauss_tail, 0.5, 3.0, 1.0) ==
          doctest::Approx(gauss_tail(3.0 / std::sqrt(2.0))).epsilon(1e-12));

    // Exponential-tail base with a = sqrt(2), sigma = 1, p = 0.2:
    // 2 * 0.8 * (1/2) e^{-sqrt(2) * 3 * sqrt(0.8)}.
    const auto exp_tail = [](double x) {
        return *closed_form_survival(DistributionSpec{ShiftedExponentialSym(std::sqrt(2.0))}, x);
    };
    CHECK(outlier_prob_ptd(exp_tail, 0.2, 3.0, 1.0) ==
          doctest::Approx(0.8 * std::exp(-std::sqrt(2.0) * 3.0 * std::sqrt(0.8)))
              .epsilon(1e-12));
}

TEST_CASE("transformed outlier probability matches the mixture sampler") {
    const DistributionSpecT base{Gaussian(0.0, 1.0)};
    const double p = 0.5, k = 3.0;
    const DistributionSpec ptd{PutTailDown(base, p)};
    const std::size_t n = 400000;
    RngStream stream(31, 0);
    std::vector<double> buf(n);
    sample(ptd, stream, std::span<double>(buf));
    const double threshold = k * std::sqrt(1.0 - p) * 1.0;
    const double mc = static_cast<double>(kern::count_abs_gt(buf.data(), n, 0.0, threshold)) /
                      static_cast<double>(n);
    const double predicted = outlier_prob_ptd(gauss_tail, p, k, 1.0);
    const double se = std::sqrt(mc * (1.0 - mc) / static_cast<double>(n));
    CHECK(std::fabs(mc - predicted) < 4.0 * se);
}

TEST_CASE("gain inequality: power tails always gain for alpha > 2") {
    const TailModel power{PowerTail(1.0, 3.0), 1.0};
    for (const double p : {0.01, 0.1, 0.5, 0.9, 0.999})
        CHECK(gain_inequality_holds(power, p, 3.0));
    for (const double k : {0.1, 1.0, 100.0})
        CHECK(gain_inequality_holds(power, 0.5, k));
}

TEST_CASE("gain inequality: exponential tails gain for large k only") {
    const TailModel expo{ExponentialTail(1.0, 1.0), 1.0};
    CHECK(gain_inequality_holds(expo, 0.5, 10.0));
    CHECK(!gain_inequality_holds(expo, 0.5, 1e-6));
}

TEST_CASE("exact power-tail law satisfies the raw inequality at finite k") {
    // For P{X > x} = c / x^alpha the asymptotic reduction is exact whenever
    // both thresholds are in the tail region, so the boolean must agree with
    // a direct evaluation of the inequality on the closed-form survival.
    const double sigma = std::sqrt(moments(DistributionSpec{SymmetricPareto(3.0, 1.0)}).variance);
    const auto tail = [](double x) {
        return *closed_form_survival(DistributionSpec{SymmetricPareto(3.0, 1.0)}, x);
    };
    const TailModel model{PowerTail(0.5, 3.0), sigma};
    for (const double p : {0.1, 0.4, 0.7}) {
        for (const double k : {1.0, 2.0, 5.0}) {
            if (k * std::sqrt(1.0 - p) * sigma < 1.0) continue; // below x_min
            const bool raw = (1.0 - p) * tail(k * std::sqrt(1.0 - p) * sigma) > tail(k * sigma);
            CHECK(raw == gain_inequality_holds(model, p, k));
            CHECK(raw);
        }
    }
}

TEST_CASE("exponential threshold k*") {
    const TailModel unit{ExponentialTail(1.0, 1.0), 1.0};
    // Small-p expansion: k* -> 2/(a sigma).
    CHECK(exponential_threshold_k(unit, 1e-6) == doctest::Approx(2.0).epsilon(1e-4));
    // Direct arithmetic at p = 3/4: -ln(1/4) / (1 - 1/2) = 2 ln 4.
    CHECK(exponential_threshold_k(unit, 0.75) ==
          doctest::Approx(2.0 * std::log(4.0)).epsilon(1e-12));

    const TailModel scaled{ExponentialTail(0.3, 2.0), 1.7};
    CHECK(exponential_threshold_k(scaled, 1e-8) ==
          doctest::Approx(2.0 / (2.0 * 1.7)).epsilon(1e-5));

    CHECK_THROWS_AS(exponential_threshold_k(TailModel{PowerTail(1.0, 3.0), 1.0}, 0.5),
                    std::invalid_argument);
}

TEST_CASE("k* is exactly the switching point of the gain inequality") {
    for (const double a : {0.5, 1.0, 2.0}) {
        for (const double sigma : {0.5, 1.0, 3.0}) {
            for (const double p : {0.05, 0.3, 0.75}) {
                const TailModel model{ExponentialTail(1.0, a), sigma};
                const double kstar = exponential_threshold_k(model, p);
                CAPTURE(a);
                CAPTURE(sigma);
                CAPTURE(p);
                CHECK(gain_inequality_holds(model, p, 1.01 * kstar));
                CHECK(!gain_inequality_holds(model, p, 0.99 * kstar));
            }
        }
    }
}

TEST_CASE("tail model parameters are validated") {
    CHECK_THROWS_AS(PowerTail(1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(ExponentialTail(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(TailModel(ExponentialTail(1.0, 1.0), 0.0), std::domain_error);
}

} // TEST_SUITE
