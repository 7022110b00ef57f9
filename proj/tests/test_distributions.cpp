#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ksigma/distributions.hpp"

using namespace ksigma;

TEST_SUITE("distributions") {

TEST_CASE("parameter ranges are enforced at construction") {
    CHECK_THROWS_AS(Gaussian(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(Gaussian(0.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(SymmetricStable(0.0), std::domain_error);
    CHECK_THROWS_AS(SymmetricStable(2.1), std::domain_error);
    CHECK_THROWS_AS(OneSidedStable(1.0), std::domain_error);
    CHECK_THROWS_AS(Laplace(0.0), std::domain_error);
    CHECK_THROWS_AS(SymmetricGamma(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(TemperedStableSym(1.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(TemperedStableSym(2.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(TemperedStableSym(1.5, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(SymmetricPareto(2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(ShiftedExponentialSym(0.0), std::domain_error);
    CHECK_NOTHROW(SymmetricStable(2.0));
    CHECK_NOTHROW(TemperedStableSym(1.5, 1.0, 1.0));
}

TEST_CASE("put tail down requires a finite-variance base") {
    const DistributionSpecT gauss{Gaussian(0.0, 1.0)};
    CHECK_NOTHROW(PutTailDown(gauss, 0.5));
    CHECK_THROWS_AS(PutTailDown(gauss, 0.0), std::domain_error);
    CHECK_THROWS_AS(PutTailDown(gauss, 1.0), std::domain_error);
    CHECK_THROWS_AS(PutTailDown(DistributionSpecT{SymmetricStable(1.5)}, 0.5),
                    std::domain_error);
    CHECK_THROWS_AS(PutTailDown(DistributionSpecT{OneSidedStable(0.5)}, 0.5),
                    std::domain_error);
    // alpha = 2 is the Gaussian member of the family and is allowed.
    CHECK_NOTHROW(PutTailDown(DistributionSpecT{SymmetricStable(2.0)}, 0.5));
}

TEST_CASE("closed-form survival functions") {
    const DistributionSpec gauss{Gaussian(0.0, 1.0)};
    CHECK(*closed_form_survival(gauss, 3.0) == doctest::Approx(0.00134989803163).epsilon(1e-9));
    CHECK(*closed_form_survival(gauss, 0.0) == doctest::Approx(0.5));

    const DistributionSpec laplace{Laplace(2.0)};
    CHECK(*closed_form_survival(laplace, 0.0) == doctest::Approx(0.5));
    CHECK(*closed_form_survival(laplace, 2.0) == doctest::Approx(0.5 * std::exp(-1.0)));

    const DistributionSpec cauchy{SymmetricStable(1.0)};
    CHECK(*closed_form_survival(cauchy, 1.0) == doctest::Approx(0.25).epsilon(1e-12));

    const DistributionSpec pareto{SymmetricPareto(3.0, 1.0)};
    CHECK(*closed_form_survival(pareto, 0.5) == doctest::Approx(0.5));
    CHECK(*closed_form_survival(pareto, 2.0) == doctest::Approx(0.5 / 8.0));

    const DistributionSpec symexp{ShiftedExponentialSym(2.0)};
    CHECK(*closed_form_survival(symexp, 1.0) == doctest::Approx(0.5 * std::exp(-2.0)));

    CHECK(!closed_form_survival(DistributionSpec{TemperedStableSym(1.5, 1.0, 1.0)}, 1.0));
    CHECK(!closed_form_survival(DistributionSpec{SymmetricStable(1.5)}, 1.0));
}

TEST_CASE("closed-form survival is symmetric where the law is") {
    const DistributionSpec specs[] = {
        DistributionSpec{Gaussian(0.0, 2.0)}, DistributionSpec{Laplace(0.7)},
        DistributionSpec{SymmetricPareto(4.0, 0.5)},
        DistributionSpec{ShiftedExponentialSym(1.3)}};
    for (const auto& spec : specs)
        for (const double x : {0.1, 0.5, 1.0, 2.5, 7.0})
            CHECK(*closed_form_survival(spec, -x) ==
                  doctest::Approx(1.0 - *closed_form_survival(spec, x)).epsilon(1e-12));
}

TEST_CASE("put-tail-down survival carries the atom on the left side") {
    const DistributionSpecT gauss{Gaussian(0.0, 1.0)};
    const DistributionSpec ptd{PutTailDown(gauss, 0.4)};
    const double base3 = *closed_form_survival(gauss.v, 3.0);
    CHECK(*closed_form_survival(ptd, 3.0) == doctest::Approx(0.6 * base3));
    CHECK(*closed_form_survival(ptd, -3.0) == doctest::Approx(0.6 * (1.0 - base3) + 0.4));
    // H(0) = 1: at zero the atom has already happened.
    CHECK(*closed_form_survival(ptd, 0.0) == doctest::Approx(0.6 * 0.5));
}

TEST_CASE("describe labels the family") {
    CHECK(describe(DistributionSpec{SymmetricStable(1.2)}).find("stable") != std::string::npos);
    CHECK(describe(DistributionSpec{PutTailDown(DistributionSpecT{Gaussian(0.0, 1.0)}, 0.3)})
              .find("ptd") != std::string::npos);
}

} // TEST_SUITE
