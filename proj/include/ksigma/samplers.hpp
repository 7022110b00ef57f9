#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "ksigma/distributions.hpp"
#include "ksigma/rng.hpp"

namespace ksigma {

/// Fills `out` with i.i.d. draws from the law of `spec`. Deterministic:
/// equal (spec, seed, stream_id, n) gives bit-identical output.
void sample(const DistributionSpec& spec, RngStream& stream, std::span<double> out);

/// Convenience overload; n must be >= 1.
std::vector<double> sample(const DistributionSpec& spec, RngStream& stream, std::size_t n);

/// Number-of-summands laws. Geometric counts trials to the first success:
/// support {1, 2, ...}, P{N = j} = q (1-q)^(j-1), mean 1/q. NegativeBinomial
/// follows the analogous trials convention: for integer r it is the number
/// of trials to the r-th success (support >= r, mean r/q); for fractional r
/// it is the standard failures count plus ceil(r), sampled by a
/// gamma-Poisson mixture. q = 1 is the degenerate one-summand case.
struct Geometric {
    double q = 0.5;
    explicit Geometric(double q_);
};

struct NegativeBinomial {
    double r = 1.0;
    double q = 0.5;
    NegativeBinomial(double r_, double q_);
};

using CountLaw = std::variant<Geometric, NegativeBinomial>;

std::uint64_t sample_count(const CountLaw& law, RngStream& stream);

/// Exact E[N] for the conventions above.
double count_law_mean(const CountLaw& law);

} // namespace ksigma
