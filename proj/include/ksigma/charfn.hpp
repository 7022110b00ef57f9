#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "ksigma/distributions.hpp"

namespace ksigma {

/// Thrown when the oscillatory quadrature cannot reach the requested
/// accuracy; carries the best value found and its error estimate.
struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& what, double estimate_, double error_estimate_)
        : std::runtime_error(what), estimate(estimate_), error_estimate(error_estimate_) {}
    double estimate;
    double error_estimate;
};

/// Thrown by build_cdf_grid when the repair or tail-mass budgets cannot be met.
struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Tabulated CDF obtained by characteristic-function inversion. Immutable
/// after construction; interpolation is monotone piecewise-cubic so the grid
/// can back inverse-transform sampling.
class CharFnGrid {
  public:
    CharFnGrid(DistributionSpec spec, std::vector<double> abscissae,
               std::vector<double> cdf_values, double max_repair);

    const DistributionSpec& spec() const { return spec_; }
    const std::vector<double>& abscissae() const { return x_; }
    const std::vector<double>& cdf_values() const { return cdf_; }
    double max_monotonicity_repair() const { return max_repair_; }

    /// Interpolated CDF; clamps to 0/1 outside the tabulated range.
    double cdf_at(double x) const;

    /// Inverse CDF; clamps to the grid end points in the extreme tails.
    double quantile(double p) const;

  private:
    DistributionSpec spec_;
    std::vector<double> x_;
    std::vector<double> cdf_;
    std::vector<double> slope_; // monotone Hermite slopes
    double max_repair_ = 0.0;
};

/// True when cf_eval supports the distribution (everything except SymmetricPareto).
bool has_analytic_cf(const DistributionSpec& spec);

/// Characteristic function E exp(iuY). For symmetric laws the imaginary part
/// is zero by construction.
std::complex<double> cf_eval(const DistributionSpec& spec, double u);

/// Mean and variance; finite == false for the infinite-variance families.
Moments moments(const DistributionSpec& spec);

/// P{Y > x} by numerical inversion of the characteristic function
/// (Gil-Pelaez), absolute error <= 1e-6. For laws with an atom at zero the
/// atom is handled analytically.
double tail_prob(const DistributionSpec& spec, double x);

/// P{|Y - mean| > k * stddev}: the large-sample limit of the studentized
/// outlier probability for finite-variance laws.
double limit_outlier_prob(const DistributionSpec& spec, double k);

/// Tabulates the CDF over mean +- c*sigma, growing c until the truncated
/// tail mass is below target_error.
CharFnGrid build_cdf_grid(const DistributionSpec& spec, double target_error = 1e-6);

} // namespace ksigma
