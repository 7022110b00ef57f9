#include "ksigma/randomsums.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "ksigma/charfn.hpp"
#include "ksigma/kernels.hpp"
#include "ksigma/parallel.hpp"

namespace ksigma {

std::vector<double> random_sum_sample(const RandomSumConfig& config) {
    if (config.replicates < 1)
        throw std::invalid_argument("random_sum_sample: requires replicates >= 1");
    const Moments m = moments(config.base);
    if (!m.finite)
        throw std::invalid_argument("random_sum_sample: base must have finite variance");
    const double inv_sigma = 1.0 / std::sqrt(m.variance);
    const double mean = m.mean;
    const double scale = 1.0 / std::sqrt(count_law_mean(config.count_law));

    std::vector<double> out(config.replicates, 0.0);
    parallel_for(config.replicates, config.threads, [&](std::size_t i) {
        thread_local std::vector<double> buf;
        RngStream stream(config.seed, config.stream_base + i);
        const std::uint64_t n = sample_count(config.count_law, stream);
        buf.resize(n);
        sample(config.base, stream, std::span<double>(buf));
        double total = kern::sum(buf.data(), buf.size());
        // Standardized sum: (sum - N*mean)/sigma, then the 1/sqrt(E N) scaling.
        total = (total - static_cast<double>(n) * mean) * inv_sigma;
        out[i] = scale * total;
    });
    return out;
}

double ks_distance(std::span<const double> sample,
                   const std::function<double(double)>& reference_cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_distance: empty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = reference_cdf(sorted[i]);
        const double below = f - static_cast<double>(i) / n;
        const double above = static_cast<double>(i + 1) / n - f;
        d = std::max(d, std::max(below, above));
    }
    return d;
}

std::function<double(double)> limit_law_cdf(CountFamily family, double nb_r) {
    if (family == CountFamily::geometric) {
        const Laplace limit(1.0 / std::sqrt(2.0));
        return [limit](double x) { return *closed_form_cdf(DistributionSpec{limit}, x); };
    }
    if (!(nb_r > 0.0)) throw std::domain_error("limit_law_cdf: requires nb_r > 0");
    const SymmetricGamma limit(nb_r, 1.0 / std::sqrt(2.0 * nb_r)); // unit variance
    auto grid = std::make_shared<CharFnGrid>(build_cdf_grid(DistributionSpec{limit}, 1e-6));
    return [grid](double x) { return grid->cdf_at(x); };
}

std::vector<ConvergenceRow> convergence_table(CountFamily family, double nb_r,
                                              std::span<const double> q_values,
                                              const DistributionSpec& base,
                                              std::size_t replicates, std::uint64_t seed,
                                              int threads) {
    if (q_values.empty()) throw std::invalid_argument("convergence_table: empty q grid");
    for (std::size_t i = 0; i + 1 < q_values.size(); ++i)
        if (q_values[i] <= q_values[i + 1])
            throw std::invalid_argument("convergence_table: q values must decrease toward 0");

    const auto limit_cdf = limit_law_cdf(family, nb_r);
    std::vector<ConvergenceRow> rows;
    rows.reserve(q_values.size());
    for (std::size_t i = 0; i < q_values.size(); ++i) {
        const double q = q_values[i];
        RandomSumConfig config{
            family == CountFamily::geometric ? CountLaw{Geometric(q)}
                                             : CountLaw{NegativeBinomial(nb_r, q)},
            base, replicates, seed, i * replicates, threads};
        const std::vector<double> sums = random_sum_sample(config);
        rows.push_back({q, ks_distance(sums, limit_cdf)});
    }
    return rows;
}

} // namespace ksigma
