#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ksigma/distributions.hpp"
#include "ksigma/samplers.hpp"

namespace ksigma {

/// Normalized sums of a random number of i.i.d. variables: each replicate
/// draws N from count_law and returns sum(X_1..X_N) / sqrt(E N), with the
/// X_i standardized (mean 0, variance 1) draws from base. By Wald's
/// identity the replicate variance is 1 for every q; as q -> 0 the geometric
/// case converges to Laplace(1/sqrt(2)) and NegativeBinomial(r) to the
/// unit-variance symmetric gamma with shape r.
struct RandomSumConfig {
    CountLaw count_law;
    DistributionSpec base;
    std::size_t replicates = 1;
    std::uint64_t seed = 0;
    std::uint64_t stream_base = 0;
    int threads = 0;
};

std::vector<double> random_sum_sample(const RandomSumConfig& config);

/// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of the
/// sample and a reference CDF.
double ks_distance(std::span<const double> sample,
                   const std::function<double(double)>& reference_cdf);

enum class CountFamily { geometric, negative_binomial };

/// CDF of the q -> 0 limit law: Laplace(1/sqrt(2)) for geometric counts,
/// SymmetricGamma(nb_r, 1/sqrt(2 nb_r)) for negative binomial (tabulated by
/// characteristic-function inversion).
std::function<double(double)> limit_law_cdf(CountFamily family, double nb_r = 1.0);

struct ConvergenceRow {
    double q = 0.0;
    double ks_to_limit = 0.0;
};

/// One row per q (strictly decreasing toward 0): KS distance between the
/// normalized random-sum sample and the family's limit law.
std::vector<ConvergenceRow> convergence_table(CountFamily family, double nb_r,
                                              std::span<const double> q_values,
                                              const DistributionSpec& base,
                                              std::size_t replicates, std::uint64_t seed,
                                              int threads = 0);

} // namespace ksigma
