#include "ksigma/samplers.hpp"

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "ksigma/charfn.hpp"

namespace ksigma {

namespace {

constexpr std::size_t kChunk = 2048; // uniforms per bulk fill

double normal01(RngStream& stream) {
    const double u1 = stream.next_u01();
    const double u2 = stream.next_u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

// Marsaglia-Tsang for shape >= 1; shape < 1 boosted via gamma(r+1) * u^(1/r).
double gamma_unit(double shape, RngStream& stream) {
    if (shape < 1.0) {
        const double u = stream.next_u01();
        return gamma_unit(shape + 1.0, stream) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double z = normal01(stream);
        const double t = 1.0 + c * z;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = stream.next_u01();
        const double z2 = z * z;
        if (u < 1.0 - 0.0331 * z2 * z2) return d * v;
        if (std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double laplace_transform(double u, double scale) {
    return u < 0.5 ? scale * std::log(2.0 * u) : -scale * std::log(2.0 * (1.0 - u));
}

// Chambers-Mallows-Stuck, symmetric case. Consumes exactly two uniforms.
double stable_sym_from(double u1, double u2, double alpha) {
    const double angle = M_PI * (u1 - 0.5); // uniform on (-pi/2, pi/2)
    if (alpha == 1.0) return std::tan(angle); // standard Cauchy
    const double w = -std::log(u2);
    const double inv_alpha = 1.0 / alpha;
    const double ratio = (1.0 - alpha) / alpha;
    return std::sin(alpha * angle) * std::pow(std::cos(angle), -inv_alpha) *
           std::pow(std::cos((1.0 - alpha) * angle) / w, ratio);
}

// Kanter's method for the totally skewed positive law, alpha in (0,1).
double stable_onesided_from(double u1, double u2, double alpha) {
    const double angle = M_PI * u1; // uniform on (0, pi)
    const double w = -std::log(u2);
    return std::sin(alpha * angle) * std::pow(std::sin(angle), -1.0 / alpha) *
           std::pow(std::sin((1.0 - alpha) * angle) / w, (1.0 - alpha) / alpha);
}

// Grids for tempered stable inverse-transform sampling are deterministic and
// immutable, so they are shared process-wide.
const CharFnGrid& tempered_grid(const TemperedStableSym& t) {
    static std::mutex mutex;
    static std::map<std::tuple<double, double, double>, std::unique_ptr<CharFnGrid>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_tuple(t.alpha, t.lambda, t.intensity);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto grid = std::make_unique<CharFnGrid>(build_cdf_grid(DistributionSpec{t}, 1e-6));
        it = cache.emplace(key, std::move(grid)).first;
    }
    return *it->second;
}

// Families whose transform consumes a fixed number of uniforms per variate
// go through bulk-filled chunks; the rest draw from the stream one by one.
template <int kUniformsPerDraw, class Transform>
void sample_chunked(RngStream& stream, std::span<double> out, const Transform& transform) {
    std::array<double, kChunk> u;
    std::size_t produced = 0;
    while (produced < out.size()) {
        const std::size_t want = std::min<std::size_t>(
            kChunk / kUniformsPerDraw, out.size() - produced);
        const std::span<double> chunk(u.data(), want * kUniformsPerDraw);
        stream.fill_u01(chunk);
        for (std::size_t i = 0; i < want; ++i)
            out[produced + i] = transform(&u[i * kUniformsPerDraw]);
        produced += want;
    }
}

void sample_gaussian_pairs(double mu, double sigma, RngStream& stream, std::span<double> out) {
    std::array<double, kChunk> u;
    std::size_t produced = 0;
    while (produced < out.size()) {
        const std::size_t pairs =
            std::min<std::size_t>(kChunk / 2, (out.size() - produced + 1) / 2);
        const std::span<double> chunk(u.data(), pairs * 2);
        stream.fill_u01(chunk);
        for (std::size_t i = 0; i < pairs; ++i) {
            const double r = std::sqrt(-2.0 * std::log(u[2 * i]));
            const double theta = 2.0 * M_PI * u[2 * i + 1];
            out[produced++] = mu + sigma * (r * std::cos(theta));
            if (produced < out.size()) out[produced++] = mu + sigma * (r * std::sin(theta));
        }
    }
}

} // namespace

void sample(const DistributionSpec& spec, RngStream& stream, std::span<double> out) {
    if (out.empty()) throw std::invalid_argument("sample: n must be >= 1");

    if (const auto* g = std::get_if<Gaussian>(&spec)) {
        sample_gaussian_pairs(g->mu, g->sigma, stream, out);
    } else if (const auto* s = std::get_if<SymmetricStable>(&spec)) {
        const double alpha = s->alpha;
        sample_chunked<2>(stream, out,
                          [alpha](const double* u) { return stable_sym_from(u[0], u[1], alpha); });
    } else if (const auto* o = std::get_if<OneSidedStable>(&spec)) {
        const double alpha = o->alpha;
        sample_chunked<2>(stream, out, [alpha](const double* u) {
            return stable_onesided_from(u[0], u[1], alpha);
        });
    } else if (const auto* l = std::get_if<Laplace>(&spec)) {
        const double b = l->scale;
        sample_chunked<1>(stream, out,
                          [b](const double* u) { return laplace_transform(u[0], b); });
    } else if (const auto* e = std::get_if<ShiftedExponentialSym>(&spec)) {
        const double b = 1.0 / e->rate;
        sample_chunked<1>(stream, out,
                          [b](const double* u) { return laplace_transform(u[0], b); });
    } else if (const auto* sp = std::get_if<SymmetricPareto>(&spec)) {
        const double inv = -1.0 / sp->tail_index;
        const double xm = sp->x_min;
        sample_chunked<1>(stream, out, [inv, xm](const double* u) {
            return u[0] < 0.5 ? -xm * std::pow(2.0 * u[0], inv)
                              : xm * std::pow(2.0 * (1.0 - u[0]), inv);
        });
    } else if (const auto* t = std::get_if<TemperedStableSym>(&spec)) {
        const CharFnGrid& grid = tempered_grid(*t);
        sample_chunked<1>(stream, out, [&grid](const double* u) { return grid.quantile(u[0]); });
    } else if (const auto* sg = std::get_if<SymmetricGamma>(&spec)) {
        for (double& v : out)
            v = sg->scale * (gamma_unit(sg->shape, stream) - gamma_unit(sg->shape, stream));
    } else if (const auto* p = std::get_if<PutTailDown>(&spec)) {
        for (double& v : out) {
            if (stream.next_u01() < p->p) {
                v = 0.0;
            } else {
                sample(p->base->v, stream, std::span<double>(&v, 1));
            }
        }
    } else {
        throw std::invalid_argument("sample: unsupported spec " + describe(spec));
    }
}

std::vector<double> sample(const DistributionSpec& spec, RngStream& stream, std::size_t n) {
    std::vector<double> out(n);
    sample(spec, stream, std::span<double>(out));
    return out;
}

Geometric::Geometric(double q_) : q(q_) {
    if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("Geometric: requires q in (0,1]");
}

NegativeBinomial::NegativeBinomial(double r_, double q_) : r(r_), q(q_) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::domain_error("NegativeBinomial: requires r > 0");
    if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("NegativeBinomial: requires q in (0,1]");
}

namespace {

std::uint64_t geometric_trials(double q, RngStream& stream) {
    if (q == 1.0) return 1;
    const double u = stream.next_u01();
    const double g = std::floor(std::log(u) / std::log1p(-q));
    return 1 + static_cast<std::uint64_t>(g);
}

std::uint64_t poisson_knuth(double mean, RngStream& stream) {
    if (mean <= 0.0) return 0;
    if (mean > 500.0) {
        // Split to keep the running product above the underflow threshold.
        const std::uint64_t half = poisson_knuth(0.5 * mean, stream);
        return half + poisson_knuth(0.5 * mean, stream);
    }
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = 1.0;
    do {
        ++k;
        prod *= stream.next_u01();
    } while (prod > limit);
    return k - 1;
}

} // namespace

std::uint64_t sample_count(const CountLaw& law, RngStream& stream) {
    if (const auto* g = std::get_if<Geometric>(&law)) return geometric_trials(g->q, stream);
    const auto& nb = std::get<NegativeBinomial>(law);
    const double r_int = std::floor(nb.r);
    if (nb.r == r_int && nb.r <= 64.0) {
        std::uint64_t total = 0;
        for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(r_int); ++i)
            total += geometric_trials(nb.q, stream);
        return total;
    }
    if (nb.q == 1.0) return static_cast<std::uint64_t>(std::ceil(nb.r));
    const double mixing = gamma_unit(nb.r, stream) * (1.0 - nb.q) / nb.q;
    return poisson_knuth(mixing, stream) + static_cast<std::uint64_t>(std::ceil(nb.r));
}

double count_law_mean(const CountLaw& law) {
    if (const auto* g = std::get_if<Geometric>(&law)) return 1.0 / g->q;
    const auto& nb = std::get<NegativeBinomial>(law);
    const double r_int = std::floor(nb.r);
    if (nb.r == r_int && nb.r <= 64.0) return nb.r / nb.q;
    return nb.r * (1.0 - nb.q) / nb.q + std::ceil(nb.r);
}

} // namespace ksigma
