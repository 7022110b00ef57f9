#include "ksigma/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace ksigma {

namespace {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7-15 pair on [-1,1]: abscissa, Gauss weight, Kronrod weight.
// First row is the center node, the rest are +- pairs.
constexpr double kGK15[8][3] = {
    {0.000000000000000000, 0.417959183673469388, 0.209482141084727828},
    {0.405845151377397167, 0.381830050505118945, 0.190350578064785410},
    {0.741531185599394440, 0.279705391489276668, 0.140653259715525919},
    {0.949107912342758525, 0.129484966168869693, 0.063092092629978553},
    {0.207784955007898468, 0.0, 0.204432940075298892},
    {0.586087235467691130, 0.0, 0.169004726639267903},
    {0.864864423359769073, 0.0, 0.104790010322250184},
    {0.991455371120812639, 0.0, 0.022935322010529225},
};

template <class F>
double gk15(const F& f, double a, double b, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double g7 = kGK15[0][1] * f0;
    double k15 = kGK15[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGK15[i][0];
        const double fi = f(mid + dx) + f(mid - dx);
        g7 += kGK15[i][1] * fi;
        k15 += kGK15[i][2] * fi;
    }
    g7 *= half;
    k15 *= half;
    const double diff = 200.0 * std::fabs(g7 - k15);
    err = std::max(diff * std::sqrt(diff), std::fabs(k15) * 5e-16);
    return k15;
}

// Adaptive bisection on [a,b] with an absolute tolerance; error budget is
// spread proportionally to segment length.
template <class F>
double integrate_adaptive(const F& f, double a, double b, double abs_tol, double& achieved) {
    struct Seg {
        double a, b;
    };
    std::vector<Seg> stack{{a, b}};
    const double len = b - a;
    double total = 0.0;
    achieved = 0.0;
    int evals_guard = 0;
    while (!stack.empty()) {
        const Seg s = stack.back();
        stack.pop_back();
        double err = 0.0;
        const double v = gk15(f, s.a, s.b, err);
        const double budget = abs_tol * (s.b - s.a) / len;
        if (err <= budget || (s.b - s.a) < 1e-13 * len || ++evals_guard > 20000) {
            total += v;
            achieved += err;
        } else {
            const double m = 0.5 * (s.a + s.b);
            stack.push_back({s.a, m});
            stack.push_back({m, s.b});
        }
    }
    return total;
}

// Integrates g over [0, infinity) where g oscillates with angular frequency
// freq and decays with the characteristic function. Dyadic panels, each cut
// into chunks no wider than pi/(4*freq); stops when the running tail bound
// drops below tol.
template <class G, class Envelope>
double oscillatory_integral(const G& g, const Envelope& envelope, double freq, double tol,
                            double& achieved) {
    const double wmax = freq > 0.0 ? M_PI / (4.0 * freq) : std::numeric_limits<double>::infinity();
    double total = 0.0;
    achieved = 0.0;
    double a = 0.0;
    double width = std::min(0.5, wmax);
    int small_panels = 0;
    for (int panel = 0; panel < 64; ++panel) {
        const double b = a + width;
        if ((b - a) / std::min(width, wmax) > 2e5) break; // decay too slow to resolve
        const int nchunks = static_cast<int>(std::ceil((b - a) / std::min(width, wmax)));
        const double chunk = (b - a) / nchunks;
        const double panel_tol = 0.5 * tol / ((panel + 1) * (panel + 2));
        double panel_val = 0.0;
        for (int c = 0; c < nchunks; ++c) {
            double err = 0.0;
            panel_val += integrate_adaptive(g, a + c * chunk, a + (c + 1) * chunk,
                                            panel_tol / nchunks, err);
            achieved += err;
        }
        total += panel_val;
        small_panels = std::fabs(panel_val) < 0.25 * tol ? small_panels + 1 : 0;

        // Alternating-series style bound on the neglected tail.
        const double env = envelope(b);
        const double tail_bound =
            freq > 0.0 ? env / (b * freq) : (env < 1e-14 ? env : std::numeric_limits<double>::infinity());
        if (small_panels >= 2 && tail_bound < 0.5 * tol) {
            achieved += tail_bound;
            return total;
        }
        a = b;
        width = std::min(a, 1e6); // dyadic growth: [a, 2a]
    }
    achieved = std::numeric_limits<double>::infinity();
    return total;
}

bool is_symmetric_about_mean(const DistributionSpec& spec) {
    if (std::holds_alternative<OneSidedStable>(spec)) return false;
    if (const auto* t = std::get_if<PutTailDown>(&spec))
        return moments(t->base->v).mean == 0.0;
    return true;
}

} // namespace

bool has_analytic_cf(const DistributionSpec& spec) {
    if (std::holds_alternative<SymmetricPareto>(spec)) return false;
    if (const auto* t = std::get_if<PutTailDown>(&spec)) return has_analytic_cf(t->base->v);
    return true;
}

std::complex<double> cf_eval(const DistributionSpec& spec, double u) {
    if (const auto* g = std::get_if<Gaussian>(&spec)) {
        const double mag = std::exp(-0.5 * g->sigma * g->sigma * u * u);
        return cplx(mag * std::cos(g->mu * u), mag * std::sin(g->mu * u));
    }
    if (const auto* s = std::get_if<SymmetricStable>(&spec))
        return cplx(std::exp(-std::pow(std::fabs(u), s->alpha)), 0.0);
    if (const auto* o = std::get_if<OneSidedStable>(&spec)) {
        // Laplace transform exp(-s^alpha) continued to s = -iu.
        return std::exp(-std::pow(cplx(0.0, -u), o->alpha));
    }
    if (const auto* l = std::get_if<Laplace>(&spec))
        return cplx(1.0 / (1.0 + l->scale * l->scale * u * u), 0.0);
    if (const auto* sg = std::get_if<SymmetricGamma>(&spec))
        return cplx(std::pow(1.0 + sg->scale * sg->scale * u * u, -sg->shape), 0.0);
    if (const auto* t = std::get_if<TemperedStableSym>(&spec)) {
        const double re = 2.0 * std::real(std::pow(cplx(t->lambda, u), t->alpha)) -
                          2.0 * std::pow(t->lambda, t->alpha);
        return cplx(std::exp(t->intensity * re), 0.0);
    }
    if (const auto* p = std::get_if<PutTailDown>(&spec))
        return (1.0 - p->p) * cf_eval(p->base->v, u) + p->p;
    if (const auto* e = std::get_if<ShiftedExponentialSym>(&spec)) {
        const double a2 = e->rate * e->rate;
        return cplx(a2 / (a2 + u * u), 0.0);
    }
    throw std::invalid_argument("cf_eval: no analytic characteristic function for " +
                                describe(spec));
}

Moments moments(const DistributionSpec& spec) {
    Moments m;
    if (const auto* g = std::get_if<Gaussian>(&spec)) {
        m.mean = g->mu;
        m.variance = g->sigma * g->sigma;
    } else if (const auto* s = std::get_if<SymmetricStable>(&spec)) {
        if (s->alpha == 2.0) {
            m.variance = 2.0; // CF exp(-u^2)
        } else {
            m.finite = false;
        }
    } else if (std::holds_alternative<OneSidedStable>(spec)) {
        m.finite = false;
    } else if (const auto* l = std::get_if<Laplace>(&spec)) {
        m.variance = 2.0 * l->scale * l->scale;
    } else if (const auto* sg = std::get_if<SymmetricGamma>(&spec)) {
        m.variance = 2.0 * sg->shape * sg->scale * sg->scale;
    } else if (const auto* t = std::get_if<TemperedStableSym>(&spec)) {
        m.variance = 2.0 * t->intensity * t->alpha * (t->alpha - 1.0) *
                     std::pow(t->lambda, t->alpha - 2.0);
    } else if (const auto* p = std::get_if<PutTailDown>(&spec)) {
        const Moments base = moments(p->base->v);
        const double q = 1.0 - p->p;
        m.mean = q * base.mean;
        m.variance = q * (base.variance + base.mean * base.mean) - m.mean * m.mean;
    } else if (const auto* sp = std::get_if<SymmetricPareto>(&spec)) {
        m.variance = sp->tail_index * sp->x_min * sp->x_min / (sp->tail_index - 2.0);
    } else if (const auto* e = std::get_if<ShiftedExponentialSym>(&spec)) {
        m.variance = 2.0 / (e->rate * e->rate);
    }
    if (!m.finite) m.variance = std::numeric_limits<double>::quiet_NaN();
    return m;
}

double tail_prob(const DistributionSpec& spec, double x) {
    // The atom of a put-tail-down law is handled exactly; only the continuous
    // base goes through the quadrature.
    if (const auto* p = std::get_if<PutTailDown>(&spec)) {
        const double base = tail_prob(p->base->v, x);
        return (1.0 - p->p) * base + (x < 0.0 ? p->p : 0.0);
    }
    if (!has_analytic_cf(spec))
        throw std::invalid_argument("tail_prob: no analytic characteristic function for " +
                                    describe(spec));

    constexpr double tol = 1e-9;
    double achieved = 0.0;
    double value = 0.0;

    if (is_symmetric_about_mean(spec)) {
        const Moments m = moments(spec);
        const double center = m.finite ? m.mean : 0.0;
        const double t = x - center;
        if (t == 0.0) return 0.5;
        // P{Y > x} = 1/2 - (1/pi) Int_0^inf sin(ut) Re cf0(u) / u du with cf0
        // the centered (real, even) characteristic function.
        const auto cf0 = [&](double u) {
            const cplx c = cf_eval(spec, u);
            return center == 0.0
                       ? std::real(c)
                       : std::real(c * std::exp(cplx(0.0, -center * u)));
        };
        const auto integrand = [&](double u) {
            if (u == 0.0) return t;
            return std::sin(u * t) * cf0(u) / u;
        };
        const auto envelope = [&](double u) { return std::fabs(cf0(u)); };
        const double integral =
            oscillatory_integral(integrand, envelope, std::fabs(t), tol, achieved);
        value = 0.5 - integral / M_PI;
    } else {
        // General Gil-Pelaez: P{Y > x} = 1/2 + (1/pi) Int Im(e^{-iux} cf(u))/u du.
        const auto integrand = [&](double u) {
            if (u == 0.0) return 0.0;
            return std::imag(std::exp(cplx(0.0, -u * x)) * cf_eval(spec, u)) / u;
        };
        const auto envelope = [&](double u) { return std::abs(cf_eval(spec, u)); };
        const double integral =
            oscillatory_integral(integrand, envelope, std::fabs(x), tol, achieved);
        value = 0.5 + integral / M_PI;
    }

    if (!(achieved < 1e-6))
        throw QuadratureError("tail_prob: quadrature did not converge for " + describe(spec),
                              value, achieved);
    return std::clamp(value, 0.0, 1.0);
}

double limit_outlier_prob(const DistributionSpec& spec, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("limit_outlier_prob: requires k > 0");
    const Moments m = moments(spec);
    if (!m.finite)
        throw std::invalid_argument("limit_outlier_prob: infinite variance for " +
                                    describe(spec));
    const double sigma = std::sqrt(m.variance);
    if (is_symmetric_about_mean(spec)) return 2.0 * tail_prob(spec, m.mean + k * sigma);
    return tail_prob(spec, m.mean + k * sigma) + (1.0 - tail_prob(spec, m.mean - k * sigma));
}

// ---------------------------------------------------------------------------
// CharFnGrid

CharFnGrid::CharFnGrid(DistributionSpec spec, std::vector<double> abscissae,
                       std::vector<double> cdf_values, double max_repair)
    : spec_(std::move(spec)), x_(std::move(abscissae)), cdf_(std::move(cdf_values)),
      max_repair_(max_repair) {
    const std::size_t n = x_.size();
    if (n < 2 || cdf_.size() != n)
        throw GridError("CharFnGrid: need at least two matching abscissae/values");
    if (max_repair_ > 1e-6) throw GridError("CharFnGrid: repair budget exceeded");
    for (std::size_t i = 0; i < n; ++i) {
        if (cdf_[i] < 0.0 || cdf_[i] > 1.0 || (i > 0 && (x_[i] <= x_[i - 1] || cdf_[i] < cdf_[i - 1])))
            throw GridError("CharFnGrid: values must be a nondecreasing CDF over increasing abscissae");
    }

    // Fritsch-Carlson monotone slopes (harmonic mean of adjacent secants).
    slope_.assign(n, 0.0);
    std::vector<double> sec(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) sec[i] = (cdf_[i + 1] - cdf_[i]) / (x_[i + 1] - x_[i]);
    slope_[0] = sec[0];
    slope_[n - 1] = sec[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (sec[i - 1] <= 0.0 || sec[i] <= 0.0)
            slope_[i] = 0.0;
        else
            slope_[i] = 2.0 * sec[i - 1] * sec[i] / (sec[i - 1] + sec[i]);
    }
}

namespace {

double hermite(double f0, double f1, double d0, double d1, double h, double t) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    return f0 * (2 * t3 - 3 * t2 + 1) + h * d0 * (t3 - 2 * t2 + t) + f1 * (-2 * t3 + 3 * t2) +
           h * d1 * (t3 - t2);
}

double hermite_dt(double f0, double f1, double d0, double d1, double h, double t) {
    const double t2 = t * t;
    return f0 * (6 * t2 - 6 * t) + h * d0 * (3 * t2 - 4 * t + 1) + f1 * (-6 * t2 + 6 * t) +
           h * d1 * (3 * t2 - 2 * t);
}

} // namespace

double CharFnGrid::cdf_at(double x) const {
    if (x <= x_.front()) return x == x_.front() ? cdf_.front() : 0.0;
    if (x >= x_.back()) return x == x_.back() ? cdf_.back() : 1.0;
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    return hermite(cdf_[i], cdf_[i + 1], slope_[i], slope_[i + 1], h, t);
}

double CharFnGrid::quantile(double p) const {
    if (p <= cdf_.front()) return x_.front();
    if (p >= cdf_.back()) return x_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), p);
    std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
    i = i == 0 ? 0 : i - 1;
    while (i + 2 < cdf_.size() && cdf_[i + 1] <= p && cdf_[i + 1] == cdf_[i]) ++i;
    const double f0 = cdf_[i];
    const double f1 = cdf_[i + 1];
    if (f1 <= f0) return x_[i];
    const double h = x_[i + 1] - x_[i];

    // Newton with bisection safety; the cubic is monotone on the interval.
    double lo = 0.0, hi = 1.0;
    double t = (p - f0) / (f1 - f0);
    for (int iter = 0; iter < 100; ++iter) {
        const double ft = hermite(f0, f1, slope_[i], slope_[i + 1], h, t) - p;
        if (std::fabs(ft) < 1e-15) break;
        if (ft > 0.0)
            hi = t;
        else
            lo = t;
        const double dft = hermite_dt(f0, f1, slope_[i], slope_[i + 1], h, t);
        double next = dft > 0.0 ? t - ft / dft : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - t) < 1e-16) {
            t = next;
            break;
        }
        t = next;
    }
    return x_[i] + t * h;
}

CharFnGrid build_cdf_grid(const DistributionSpec& spec, double target_error) {
    if (!(target_error > 0.0 && target_error <= 1e-3))
        throw std::invalid_argument("build_cdf_grid: target_error must be in (0, 1e-3]");
    const Moments m = moments(spec);
    if (!m.finite)
        throw GridError("build_cdf_grid: finite variance required for " + describe(spec));
    const double sigma = std::sqrt(m.variance);

    double c = 6.0;
    while (tail_prob(spec, m.mean + c * sigma) > 0.5 * target_error ||
           1.0 - tail_prob(spec, m.mean - c * sigma) > 0.5 * target_error) {
        c *= 1.5;
        if (c > 200.0)
            throw GridError("build_cdf_grid: tail mass budget unreachable for " + describe(spec));
    }

    constexpr std::size_t kPoints = 2049; // odd, so the center is a grid point
    std::vector<double> xs(kPoints);
    std::vector<double> cdf(kPoints);
    const double lo = m.mean - c * sigma;
    const double step = 2.0 * c * sigma / static_cast<double>(kPoints - 1);
    for (std::size_t i = 0; i < kPoints; ++i) xs[i] = lo + step * static_cast<double>(i);

    const bool symmetric = is_symmetric_about_mean(spec);
    const std::size_t mid = kPoints / 2;
    if (symmetric) {
        xs[mid] = m.mean;
        cdf[mid] = 0.5;
        for (std::size_t i = mid + 1; i < kPoints; ++i) {
            cdf[i] = 1.0 - tail_prob(spec, xs[i]);
            cdf[kPoints - 1 - i] = 1.0 - cdf[i];
        }
    } else {
        for (std::size_t i = 0; i < kPoints; ++i) cdf[i] = 1.0 - tail_prob(spec, xs[i]);
    }

    // Monotonicity repair: running maximum, tracking the largest adjustment.
    double max_repair = 0.0;
    double run = 0.0;
    for (std::size_t i = 0; i < kPoints; ++i) {
        cdf[i] = std::clamp(cdf[i], 0.0, 1.0);
        if (cdf[i] < run) {
            max_repair = std::max(max_repair, run - cdf[i]);
            cdf[i] = run;
        }
        run = cdf[i];
    }
    if (max_repair > 1e-6)
        throw GridError("build_cdf_grid: monotonicity repair budget exceeded for " +
                        describe(spec));
    if (!(cdf.front() <= 1e-3 && cdf.back() >= 1.0 - 1e-3))
        throw GridError("build_cdf_grid: grid does not span the distribution");

    return CharFnGrid(spec, std::move(xs), std::move(cdf), max_repair);
}

} // namespace ksigma
