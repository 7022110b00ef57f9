#pragma once

#include <functional>
#include <variant>

#include "ksigma/distributions.hpp"

namespace ksigma {

/// Asymptotic tail of a symmetric finite-variance law, either
/// P{X > x} ~ c * exp(-a x) or P{X > x} ~ c / x^alpha (alpha > 2), together
/// with the law's standard deviation. The constant c cancels out of the gain
/// inequality and is kept only for completeness.
struct ExponentialTail {
    double c = 1.0;
    double a = 1.0;
    ExponentialTail(double c_, double a_);
};

struct PowerTail {
    double c = 1.0;
    double alpha = 3.0;
    PowerTail(double c_, double alpha_);
};

struct TailModel {
    std::variant<ExponentialTail, PowerTail> kind;
    double sigma = 1.0;
    TailModel(std::variant<ExponentialTail, PowerTail> kind_, double sigma_);
};

/// CDF of the transformed law (1-p) F + p H, where H is the unit step with
/// H(0) = 1 (the atom at the origin counts as <= 0).
double put_tail_down_cdf(const std::function<double(double)>& base_cdf, double p, double x);

/// P{|Y_p| > k sqrt(1-p) sigma} = 2 (1-p) * base_tail(k sqrt(1-p) sigma),
/// the transformed law's own k-sigma outlier probability.
double outlier_prob_ptd(const std::function<double(double)>& base_tail, double p, double k,
                        double sigma);

/// Whether the transformed law has more k-sigma outliers than the base,
/// evaluated on the model's asymptotic tail form:
/// exponential: (1-p) > exp(-a k sigma (1 - sqrt(1-p)));
/// power:       (1-p)^(1 - alpha/2) > 1 (k-independent, true for alpha > 2).
bool gain_inequality_holds(const TailModel& model, double p, double k);

/// For an exponential tail, the k above which the gain inequality holds:
/// k* = -ln(1-p) / (a sigma (1 - sqrt(1-p))).
double exponential_threshold_k(const TailModel& model, double p);

} // namespace ksigma
