#include "ksigma/outlier.hpp"

#include <cmath>
#include <stdexcept>

#include "ksigma/kernels.hpp"
#include "ksigma/parallel.hpp"
#include "ksigma/samplers.hpp"

namespace ksigma {

SampleStats empirical_stats(std::span<const double> sample) {
    if (sample.empty()) throw std::invalid_argument("empirical_stats: empty sample");
    const double n = static_cast<double>(sample.size());
    SampleStats s;
    s.mean = kern::sum(sample.data(), sample.size()) / n;
    s.variance = kern::sum_sq_dev(sample.data(), sample.size(), s.mean) / n;
    return s;
}

OutlierFraction outlier_fraction(std::span<const double> sample, double k) {
    if (sample.size() < 2) throw std::invalid_argument("outlier_fraction: need >= 2 points");
    if (!(k > 0.0)) throw std::invalid_argument("outlier_fraction: requires k > 0");
    const SampleStats s = empirical_stats(sample);
    if (s.variance == 0.0) return {0.0, true};
    const double threshold = k * std::sqrt(s.variance);
    const std::size_t count =
        kern::count_abs_gt(sample.data(), sample.size(), s.mean, threshold);
    return {static_cast<double>(count) / static_cast<double>(sample.size()), false};
}

OutlierEstimate estimate_pn(const DistributionSpec& spec, std::size_t n, double k,
                            std::size_t m, std::uint64_t seed, std::uint64_t stream_base,
                            int threads) {
    if (n < 2) throw std::invalid_argument("estimate_pn: requires n >= 2");
    if (m < 2) throw std::invalid_argument("estimate_pn: requires m >= 2");
    if (!(k > 0.0)) throw std::invalid_argument("estimate_pn: requires k > 0");

    std::vector<double> fractions(m, 0.0);
    std::vector<unsigned char> degenerate(m, 0);

    parallel_for(m, threads, [&](std::size_t i) {
        thread_local std::vector<double> buf;
        buf.resize(n);
        RngStream stream(seed, stream_base + i);
        sample(spec, stream, std::span<double>(buf));
        const OutlierFraction f = outlier_fraction(buf, k);
        fractions[i] = f.fraction;
        degenerate[i] = f.degenerate ? 1 : 0;
    });

    OutlierEstimate est;
    est.n = n;
    est.m = m;
    est.k = k;
    est.spec = spec;
    est.seed = seed;
    est.stream_base = stream_base;

    double total = 0.0;
    for (const double f : fractions) total += f;
    est.p_hat = total / static_cast<double>(m);

    double ss = 0.0;
    for (const double f : fractions) {
        const double d = f - est.p_hat;
        ss += d * d;
    }
    est.std_error = std::sqrt(ss / static_cast<double>(m - 1)) / std::sqrt(static_cast<double>(m));

    for (const unsigned char d : degenerate) est.degenerate_replicates += d;
    return est;
}

std::vector<OutlierEstimate> pn_curve(const DistributionSpec& spec, double k,
                                      std::span<const std::size_t> n_values, std::size_t m,
                                      std::uint64_t seed, int threads) {
    if (n_values.empty()) throw std::invalid_argument("pn_curve: empty n grid");
    for (std::size_t i = 0; i + 1 < n_values.size(); ++i)
        if (n_values[i] >= n_values[i + 1])
            throw std::invalid_argument("pn_curve: n values must be strictly increasing");

    std::vector<OutlierEstimate> curve;
    curve.reserve(n_values.size());
    for (std::size_t i = 0; i < n_values.size(); ++i)
        curve.push_back(estimate_pn(spec, n_values[i], k, m, seed, i * m, threads));
    return curve;
}

} // namespace ksigma
