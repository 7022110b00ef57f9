#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ksigma/distributions.hpp"
#include "ksigma/outlier.hpp"

namespace ksigma {

/// Reference values the experiments report against.
struct ReferenceConstants {
    /// 2 * (standard normal tail at 3): k=3 limit probability, Gaussian law.
    static constexpr double gaussian_k3 = 0.0026998;
    /// Monte Carlo value for the symmetric alpha=1.8 stable law, n=50,000, k=3.
    static constexpr double stable18_k3_n50000 = 0.00591093;
    /// exp(-3 sqrt 2): k=3 limit probability, Laplace law.
    static constexpr double laplace_k3 = 0.0143696;
    /// Range of k=3 outlier frequencies observed in financial index returns.
    static constexpr double observed_outlier_min = 0.009;
    static constexpr double observed_outlier_max = 0.013;
};

struct SeriesPoint {
    double x = 0.0;  // n for curves, alpha for the surface
    double x2 = 0.0; // lambda for the surface, unused for curves
    double y = 0.0;
    double y_err = 0.0; // Monte Carlo standard error; 0 for analytic points
};

struct Series {
    std::string label;
    std::vector<SeriesPoint> points;
};

/// A named scalar check: passes iff lo <= observed <= hi. Boolean checks use
/// observed in {0,1} with a degenerate interval.
struct CheckRow {
    std::string name;
    double observed = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool pass = false;
};

CheckRow make_check(std::string name, double observed, double lo, double hi);

enum class ResultKind { curve, surface, table };

/// Everything a run produces. Re-running with the same parameters and seed
/// reproduces the series and checks bit-for-bit; runtime is provenance only
/// and never serialized.
struct ExperimentResult {
    std::string experiment_id;
    ResultKind kind = ResultKind::table;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<Series> series;
    std::vector<CheckRow> checks;
    std::uint64_t seed = 0;
    std::size_t m = 0;
    double runtime_seconds = 0.0;

    bool all_pass() const;
};

struct ExperimentOptions {
    std::size_t m = 300;
    std::uint64_t seed = 42;
    int threads = 0; // 0 = hardware concurrency
    double fig3_k = 3.0;
    std::size_t fig3_grid = 20;
    std::size_t mc_n = 1000000;          // put-tail-down Monte Carlo sample size
    std::size_t rs_replicates = 100000;  // random-sum replicates per table row
};

/// p_n curves over n = 1,000..25,000 step 2,000 at k=3 for the symmetric
/// alpha=1.2 stable law against the Gaussian, with the sustained-crossover
/// point.
ExperimentResult run_figure1(const ExperimentOptions& opt);

/// Same layout for alpha=1.8 at k=2.5.
ExperimentResult run_figure2(const ExperimentOptions& opt);

/// Limit outlier probability surface for the tempered stable family over
/// alpha x lambda (A=1), plus two Monte Carlo spot checks.
ExperimentResult run_figure3(const ExperimentOptions& opt);
ExperimentResult run_figure3(std::span<const double> alpha_grid,
                             std::span<const double> lambda_grid, double k,
                             std::uint64_t seed, int threads = 0);

/// The three headline numbers against ReferenceConstants.
ExperimentResult run_claims_table(const ExperimentOptions& opt);

/// Put-tail-down identities: variance shrinkage, the transformed outlier
/// probability, the gain inequality pattern and the more-outliers effect.
ExperimentResult run_ptd_demo(const ExperimentOptions& opt);

/// Random-sum convergence to the Laplace / symmetric gamma limits and the
/// limit outlier probability.
ExperimentResult run_randomsum_demo(const ExperimentOptions& opt);

/// The n grid shared by the two curve experiments.
std::vector<std::size_t> figure_n_grid();

/// The n of the first grid point where the candidate curve drops below the
/// reference and stays below through the end of the grid; 0 when there is
/// no sustained crossing.
std::size_t sustained_crossover_n(std::span<const OutlierEstimate> candidate,
                                  std::span<const OutlierEstimate> reference);

} // namespace ksigma
