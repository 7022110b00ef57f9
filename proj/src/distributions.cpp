#include "ksigma/distributions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ksigma {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

double gauss_survival(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

} // namespace

Gaussian::Gaussian(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
    require(std::isfinite(mu) && std::isfinite(sigma) && sigma > 0.0,
            "Gaussian: requires finite mu and sigma > 0");
}

SymmetricStable::SymmetricStable(double alpha_) : alpha(alpha_) {
    require(alpha > 0.0 && alpha <= 2.0, "SymmetricStable: requires alpha in (0,2]");
}

OneSidedStable::OneSidedStable(double alpha_) : alpha(alpha_) {
    require(alpha > 0.0 && alpha < 1.0, "OneSidedStable: requires alpha in (0,1)");
}

Laplace::Laplace(double scale_) : scale(scale_) {
    require(std::isfinite(scale) && scale > 0.0, "Laplace: requires scale > 0");
}

SymmetricGamma::SymmetricGamma(double shape_, double scale_) : shape(shape_), scale(scale_) {
    require(std::isfinite(shape) && shape > 0.0, "SymmetricGamma: requires shape > 0");
    require(std::isfinite(scale) && scale > 0.0, "SymmetricGamma: requires scale > 0");
}

TemperedStableSym::TemperedStableSym(double alpha_, double lambda_, double intensity_)
    : alpha(alpha_), lambda(lambda_), intensity(intensity_) {
    require(alpha > 1.0 && alpha < 2.0, "TemperedStableSym: requires alpha in (1,2)");
    require(std::isfinite(lambda) && lambda > 0.0, "TemperedStableSym: requires lambda > 0");
    require(std::isfinite(intensity) && intensity > 0.0, "TemperedStableSym: requires A > 0");
}

PutTailDown::PutTailDown(const DistributionSpecT& base_, double p_)
    : base(std::make_shared<DistributionSpecT>(base_)), p(p_) {
    require(p > 0.0 && p < 1.0, "PutTailDown: requires p in (0,1)");
    require(has_finite_variance(base->v), "PutTailDown: base must have finite variance");
}

SymmetricPareto::SymmetricPareto(double tail_index_, double x_min_)
    : tail_index(tail_index_), x_min(x_min_) {
    require(tail_index > 2.0, "SymmetricPareto: requires tail index > 2");
    require(std::isfinite(x_min) && x_min > 0.0, "SymmetricPareto: requires x_min > 0");
}

ShiftedExponentialSym::ShiftedExponentialSym(double rate_) : rate(rate_) {
    require(std::isfinite(rate) && rate > 0.0, "ShiftedExponentialSym: requires rate > 0");
}

bool has_finite_variance(const DistributionSpec& spec) {
    if (const auto* s = std::get_if<SymmetricStable>(&spec)) return s->alpha == 2.0;
    if (std::holds_alternative<OneSidedStable>(spec)) return false;
    return true;
}

std::string describe(const DistributionSpec& spec) {
    std::ostringstream os;
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Gaussian>)
                os << "gaussian(mu=" << d.mu << ",sigma=" << d.sigma << ")";
            else if constexpr (std::is_same_v<T, SymmetricStable>)
                os << "stable(alpha=" << d.alpha << ")";
            else if constexpr (std::is_same_v<T, OneSidedStable>)
                os << "onesided_stable(alpha=" << d.alpha << ")";
            else if constexpr (std::is_same_v<T, Laplace>)
                os << "laplace(b=" << d.scale << ")";
            else if constexpr (std::is_same_v<T, SymmetricGamma>)
                os << "symgamma(r=" << d.shape << ",scale=" << d.scale << ")";
            else if constexpr (std::is_same_v<T, TemperedStableSym>)
                os << "tempered(alpha=" << d.alpha << ",lambda=" << d.lambda
                   << ",A=" << d.intensity << ")";
            else if constexpr (std::is_same_v<T, PutTailDown>)
                os << "ptd(" << describe(d.base->v) << ",p=" << d.p << ")";
            else if constexpr (std::is_same_v<T, SymmetricPareto>)
                os << "sympareto(alpha=" << d.tail_index << ",xmin=" << d.x_min << ")";
            else if constexpr (std::is_same_v<T, ShiftedExponentialSym>)
                os << "symexp(a=" << d.rate << ")";
        },
        spec);
    return os.str();
}

std::optional<double> closed_form_survival(const DistributionSpec& spec, double x) {
    if (const auto* g = std::get_if<Gaussian>(&spec))
        return gauss_survival((x - g->mu) / g->sigma);
    if (const auto* s = std::get_if<SymmetricStable>(&spec)) {
        if (s->alpha == 2.0) return gauss_survival(x / std::sqrt(2.0));
        if (s->alpha == 1.0) return 0.5 - std::atan(x) / M_PI;
        return std::nullopt;
    }
    if (const auto* l = std::get_if<Laplace>(&spec)) {
        if (x >= 0.0) return 0.5 * std::exp(-x / l->scale);
        return 1.0 - 0.5 * std::exp(x / l->scale);
    }
    if (const auto* e = std::get_if<ShiftedExponentialSym>(&spec)) {
        if (x >= 0.0) return 0.5 * std::exp(-e->rate * x);
        return 1.0 - 0.5 * std::exp(e->rate * x);
    }
    if (const auto* p = std::get_if<SymmetricPareto>(&spec)) {
        const double ax = std::fabs(x);
        const double tail = ax <= p->x_min ? 0.5 : 0.5 * std::pow(p->x_min / ax, p->tail_index);
        return x >= 0.0 ? tail : 1.0 - tail;
    }
    if (const auto* t = std::get_if<PutTailDown>(&spec)) {
        const auto base = closed_form_survival(t->base->v, x);
        if (!base) return std::nullopt;
        // H(0) = 1: the atom at zero counts as <= 0.
        return x >= 0.0 ? (1.0 - t->p) * *base : (1.0 - t->p) * *base + t->p;
    }
    return std::nullopt;
}

std::optional<double> closed_form_cdf(const DistributionSpec& spec, double x) {
    const auto s = closed_form_survival(spec, x);
    if (!s) return std::nullopt;
    return 1.0 - *s;
}

} // namespace ksigma
