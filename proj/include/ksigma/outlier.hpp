#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ksigma/distributions.hpp"

namespace ksigma {

/// Empirical mean and variance with divisor n (not n-1):
/// mean = (1/n) sum x_j, variance = (1/n) sum (x_j - mean)^2.
struct SampleStats {
    double mean = 0.0;
    double variance = 0.0;
};

SampleStats empirical_stats(std::span<const double> sample);

/// Fraction of points with |x_j - mean| > k * s, strict inequality. A
/// degenerate sample (s == 0, all points equal) has fraction 0 and is
/// flagged.
struct OutlierFraction {
    double fraction = 0.0;
    bool degenerate = false;
};

OutlierFraction outlier_fraction(std::span<const double> sample, double k);

/// Monte Carlo estimate of the probability that one observation deviates
/// from the empirical mean by more than k empirical standard deviations.
/// p_hat averages the within-sample outlier fractions of m independent
/// replicates; std_error is their standard deviation over sqrt(m).
struct OutlierEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
    std::size_t m = 0;
    double k = 0.0;
    DistributionSpec spec = Gaussian(0.0, 1.0);
    std::uint64_t seed = 0;
    std::uint64_t stream_base = 0;
    std::size_t degenerate_replicates = 0;
};

/// Replicate i draws n variates from stream (seed, stream_base + i).
/// Aggregation runs in replicate order, so the result is identical for any
/// thread count.
OutlierEstimate estimate_pn(const DistributionSpec& spec, std::size_t n, double k,
                            std::size_t m, std::uint64_t seed,
                            std::uint64_t stream_base = 0, int threads = 0);

/// One estimate per n value; point i uses stream_base = i * m, so every
/// (n, replicate) pair has its own stream.
std::vector<OutlierEstimate> pn_curve(const DistributionSpec& spec, double k,
                                      std::span<const std::size_t> n_values, std::size_t m,
                                      std::uint64_t seed, int threads = 0);

} // namespace ksigma
