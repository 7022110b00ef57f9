#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>

namespace ksigma {

struct DistributionSpecT;

/// Gaussian with mean mu and standard deviation sigma > 0.
struct Gaussian {
    double mu = 0.0;
    double sigma = 1.0;
    Gaussian(double mu_, double sigma_);
};

/// Symmetric alpha-stable at standard scale, CF exp(-|u|^alpha), alpha in (0,2].
/// alpha = 2 is Gaussian with variance 2; alpha = 1 is the standard Cauchy.
struct SymmetricStable {
    double alpha = 1.0;
    explicit SymmetricStable(double alpha_);
};

/// Totally skewed positive stable with Laplace transform exp(-s^alpha),
/// alpha in (0,1).
struct OneSidedStable {
    double alpha = 0.5;
    explicit OneSidedStable(double alpha_);
};

/// Laplace with density exp(-|x|/b) / (2b).
struct Laplace {
    double scale = 1.0;
    explicit Laplace(double scale_);
};

/// Law of G1 - G2 with G1, G2 independent Gamma(shape, scale).
struct SymmetricGamma {
    double shape = 1.0;
    double scale = 1.0;
    SymmetricGamma(double shape_, double scale_);
};

/// Symmetric tempered stable with characteristic function
/// exp(A((lambda - iu)^alpha + (lambda + iu)^alpha - 2 lambda^alpha)),
/// alpha in (1,2), lambda > 0, A > 0.
struct TemperedStableSym {
    double alpha = 1.5;
    double lambda = 1.0;
    double intensity = 1.0; // the A factor
    TemperedStableSym(double alpha_, double lambda_, double intensity_);
};

/// Mixture (1-p) * base + p * delta_0: with probability p the variate is
/// exactly zero. The base must have finite variance (checked structurally:
/// not an infinite-variance stable family).
struct PutTailDown {
    std::shared_ptr<const DistributionSpecT> base;
    double p = 0.5;
    PutTailDown(const DistributionSpecT& base_, double p_);
};

/// Symmetric power tail: P{X > x} = (1/2)(x_min/x)^tail_index for x >= x_min,
/// tail_index > 2 so the variance is finite. |X| is Pareto, the sign is fair.
struct SymmetricPareto {
    double tail_index = 3.0;
    double x_min = 1.0;
    SymmetricPareto(double tail_index_, double x_min_);
};

/// Symmetric exponential tail: P{X > x} = (1/2) e^{-rate x} for x >= 0.
/// Coincides with Laplace(1/rate); kept as its own tag because the tail
/// checks want the rate parametrization.
struct ShiftedExponentialSym {
    double rate = 1.0;
    explicit ShiftedExponentialSym(double rate_);
};

using DistributionSpec =
    std::variant<Gaussian, SymmetricStable, OneSidedStable, Laplace, SymmetricGamma,
                 TemperedStableSym, PutTailDown, SymmetricPareto, ShiftedExponentialSym>;

// std::variant cannot name itself recursively, so PutTailDown points at this
// wrapper instead.
struct DistributionSpecT {
    DistributionSpec v;
    DistributionSpecT(DistributionSpec spec) : v(std::move(spec)) {} // NOLINT(google-explicit-constructor)
};

/// Mean/variance when they exist. finite == false means infinite variance
/// (symmetric stable with alpha < 2, one-sided stable); variance is then
/// unset.
struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    bool finite = true;
};

/// True when the family has finite variance (structural check on the tag).
bool has_finite_variance(const DistributionSpec& spec);

/// Short human-readable label, e.g. "stable(alpha=1.2)".
std::string describe(const DistributionSpec& spec);

/// Closed-form survival function P{X > x} where one exists
/// (Gaussian, Laplace, Cauchy, stable alpha=2, the synthetic tail families,
/// and PutTailDown over such a base); std::nullopt otherwise.
std::optional<double> closed_form_survival(const DistributionSpec& spec, double x);

/// 1 - closed_form_survival, with the same support.
std::optional<double> closed_form_cdf(const DistributionSpec& spec, double x);

} // namespace ksigma
