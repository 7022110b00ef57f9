#include "ksigma/tailtransform.hpp"

#include <cmath>
#include <stdexcept>

namespace ksigma {

namespace {

void check_p(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("put tail down: requires p in (0,1)");
}

} // namespace

ExponentialTail::ExponentialTail(double c_, double a_) : c(c_), a(a_) {
    if (!(c > 0.0)) throw std::domain_error("ExponentialTail: requires c > 0");
    if (!(a > 0.0)) throw std::domain_error("ExponentialTail: requires a > 0");
}

PowerTail::PowerTail(double c_, double alpha_) : c(c_), alpha(alpha_) {
    if (!(c > 0.0)) throw std::domain_error("PowerTail: requires c > 0");
    if (!(alpha > 2.0)) throw std::domain_error("PowerTail: requires alpha > 2");
}

TailModel::TailModel(std::variant<ExponentialTail, PowerTail> kind_, double sigma_)
    : kind(std::move(kind_)), sigma(sigma_) {
    if (!(sigma > 0.0)) throw std::domain_error("TailModel: requires sigma > 0");
}

double put_tail_down_cdf(const std::function<double(double)>& base_cdf, double p, double x) {
    check_p(p);
    const double h = x >= 0.0 ? 1.0 : 0.0;
    return (1.0 - p) * base_cdf(x) + p * h;
}

double outlier_prob_ptd(const std::function<double(double)>& base_tail, double p, double k,
                        double sigma) {
    check_p(p);
    if (!(k > 0.0)) throw std::domain_error("outlier_prob_ptd: requires k > 0");
    if (!(sigma > 0.0)) throw std::domain_error("outlier_prob_ptd: requires sigma > 0");
    return 2.0 * (1.0 - p) * base_tail(k * std::sqrt(1.0 - p) * sigma);
}

bool gain_inequality_holds(const TailModel& model, double p, double k) {
    check_p(p);
    if (!(k > 0.0)) throw std::domain_error("gain_inequality_holds: requires k > 0");
    if (const auto* e = std::get_if<ExponentialTail>(&model.kind)) {
        const double rhs = std::exp(-e->a * k * model.sigma * (1.0 - std::sqrt(1.0 - p)));
        return (1.0 - p) > rhs;
    }
    // Reduction of the gain inequality for a power tail:
    // (1-p) / (sqrt(1-p))^alpha = (1-p)^(1-alpha/2) > 1, since the exponent
    // is negative for alpha > 2.
    const auto& pw = std::get<PowerTail>(model.kind);
    return std::pow(1.0 - p, 1.0 - 0.5 * pw.alpha) > 1.0;
}

double exponential_threshold_k(const TailModel& model, double p) {
    check_p(p);
    const auto* e = std::get_if<ExponentialTail>(&model.kind);
    if (e == nullptr)
        throw std::invalid_argument("exponential_threshold_k: model has a power tail");
    return -std::log(1.0 - p) / (e->a * model.sigma * (1.0 - std::sqrt(1.0 - p)));
}

} // namespace ksigma
