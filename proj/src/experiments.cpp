#include "ksigma/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "ksigma/charfn.hpp"
#include "ksigma/kernels.hpp"
#include "ksigma/parallel.hpp"
#include "ksigma/randomsums.hpp"
#include "ksigma/samplers.hpp"
#include "ksigma/tailtransform.hpp"

namespace ksigma {

CheckRow make_check(std::string name, double observed, double lo, double hi) {
    CheckRow row;
    row.name = std::move(name);
    row.observed = observed;
    row.lo = lo;
    row.hi = hi;
    row.pass = std::isfinite(observed) && observed >= lo && observed <= hi;
    return row;
}

bool ExperimentResult::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRow& c) { return c.pass; });
}

std::vector<std::size_t> figure_n_grid() {
    std::vector<std::size_t> grid;
    for (std::size_t n = 1000; n <= 25000; n += 2000) grid.push_back(n);
    return grid;
}

std::size_t sustained_crossover_n(std::span<const OutlierEstimate> candidate,
                                  std::span<const OutlierEstimate> reference) {
    std::size_t cross = 0;
    for (std::size_t i = candidate.size(); i-- > 0;) {
        if (candidate[i].p_hat < reference[i].p_hat)
            cross = i + 1; // 1-based marker while scanning backwards
        else
            break;
    }
    return cross == 0 ? 0 : candidate[cross - 1].n;
}

namespace {

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(clock::now() - start_).count();
    }

  private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(9);
    os << v;
    return os.str();
}

// Monte Carlo estimate of P{|Y| > threshold} over n_total draws split into
// per-stream chunks; deterministic for any thread count.
struct TailFraction {
    double fraction = 0.0;
    double std_error = 0.0;
};

TailFraction mc_abs_tail_fraction(const DistributionSpec& spec, double threshold,
                                  std::size_t n_total, std::uint64_t seed,
                                  std::uint64_t stream_base, int threads) {
    constexpr std::size_t kChunk = 1000000;
    const std::size_t nchunks = (n_total + kChunk - 1) / kChunk;
    std::vector<std::size_t> counts(nchunks, 0);
    parallel_for(nchunks, threads, [&](std::size_t c) {
        thread_local std::vector<double> buf;
        const std::size_t lo = c * kChunk;
        const std::size_t len = std::min(kChunk, n_total - lo);
        buf.resize(len);
        RngStream stream(seed, stream_base + c);
        sample(spec, stream, std::span<double>(buf));
        counts[c] = kern::count_abs_gt(buf.data(), len, 0.0, threshold);
    });
    std::size_t hits = 0;
    for (const std::size_t c : counts) hits += c;
    TailFraction f;
    f.fraction = static_cast<double>(hits) / static_cast<double>(n_total);
    f.std_error = std::sqrt(f.fraction * (1.0 - f.fraction) / static_cast<double>(n_total));
    return f;
}

ExperimentResult run_curve_experiment(const std::string& id, double stable_alpha, double k,
                                      std::size_t cross_lo, std::size_t cross_hi,
                                      const ExperimentOptions& opt) {
    Stopwatch timer;
    ExperimentResult result;
    result.experiment_id = id;
    result.kind = ResultKind::curve;
    result.seed = opt.seed;
    result.m = opt.m;
    result.parameters = {{"alpha", fmt(stable_alpha)},
                         {"k", fmt(k)},
                         {"m", std::to_string(opt.m)},
                         {"seed", std::to_string(opt.seed)}};

    const std::vector<std::size_t> grid = figure_n_grid();
    const DistributionSpec stable{SymmetricStable(stable_alpha)};
    const DistributionSpec gauss{Gaussian(0.0, 1.0)};

    std::vector<OutlierEstimate> stable_curve;
    std::vector<OutlierEstimate> gauss_curve;
    for (std::size_t i = 0; i < grid.size(); ++i)
        stable_curve.push_back(
            estimate_pn(stable, grid[i], k, opt.m, opt.seed, i * opt.m, opt.threads));
    for (std::size_t i = 0; i < grid.size(); ++i)
        gauss_curve.push_back(estimate_pn(gauss, grid[i], k, opt.m, opt.seed,
                                          (grid.size() + i) * opt.m, opt.threads));

    const auto to_series = [&](const char* label, const std::vector<OutlierEstimate>& curve) {
        Series s;
        s.label = label;
        for (const OutlierEstimate& e : curve)
            s.points.push_back({static_cast<double>(e.n), 0.0, e.p_hat, e.std_error});
        return s;
    };
    std::ostringstream stable_label;
    stable_label << "stable_alpha_" << stable_alpha;
    result.series.push_back(to_series(stable_label.str().c_str(), stable_curve));
    result.series.push_back(to_series("gaussian", gauss_curve));

    const std::size_t crossover = sustained_crossover_n(stable_curve, gauss_curve);
    result.checks.push_back(make_check("crossover_n", static_cast<double>(crossover),
                                       static_cast<double>(cross_lo),
                                       static_cast<double>(cross_hi)));

    // Empirical vanishing-limit trend: the stable curve at the last grid
    // point sits below the first by more than 4 combined standard errors.
    const OutlierEstimate& first = stable_curve.front();
    const OutlierEstimate& last = stable_curve.back();
    const double combined =
        std::sqrt(first.std_error * first.std_error + last.std_error * last.std_error);
    result.checks.push_back(
        make_check("stable_decrease_zscore", (first.p_hat - last.p_hat) / combined, 4.0, 1e12));

    result.runtime_seconds = timer.seconds();
    return result;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return v;
}

} // namespace

ExperimentResult run_figure1(const ExperimentOptions& opt) {
    return run_curve_experiment("fig1", 1.2, 3.0, 11000, 25000, opt);
}

ExperimentResult run_figure2(const ExperimentOptions& opt) {
    return run_curve_experiment("fig2", 1.8, 2.5, 1000, 9000, opt);
}

ExperimentResult run_figure3(std::span<const double> alpha_grid,
                             std::span<const double> lambda_grid, double k,
                             std::uint64_t seed, int threads) {
    Stopwatch timer;
    ExperimentResult result;
    result.experiment_id = "fig3";
    result.kind = ResultKind::surface;
    result.seed = seed;
    result.parameters = {{"k", fmt(k)},
                         {"alpha_cells", std::to_string(alpha_grid.size())},
                         {"lambda_cells", std::to_string(lambda_grid.size())},
                         {"A", "1"},
                         {"seed", std::to_string(seed)}};

    const std::size_t cells = alpha_grid.size() * lambda_grid.size();
    std::vector<double> z(cells, 0.0);
    std::vector<unsigned char> failed(cells, 0);
    parallel_for(cells, threads, [&](std::size_t idx) {
        const double alpha = alpha_grid[idx / lambda_grid.size()];
        const double lambda = lambda_grid[idx % lambda_grid.size()];
        try {
            z[idx] = limit_outlier_prob(DistributionSpec{TemperedStableSym(alpha, lambda, 1.0)}, k);
        } catch (const QuadratureError&) {
            z[idx] = std::numeric_limits<double>::quiet_NaN();
            failed[idx] = 1;
        }
    });

    Series surface;
    surface.label = "limit_p";
    double max_p = 0.0;
    std::size_t failures = 0;
    for (std::size_t idx = 0; idx < cells; ++idx) {
        const double alpha = alpha_grid[idx / lambda_grid.size()];
        const double lambda = lambda_grid[idx % lambda_grid.size()];
        surface.points.push_back({alpha, lambda, z[idx], 0.0});
        failures += failed[idx];
        if (failed[idx] == 0) max_p = std::max(max_p, z[idx]);
    }
    result.series.push_back(std::move(surface));

    result.checks.push_back(make_check("quadrature_failures", static_cast<double>(failures), 0, 0));
    result.checks.push_back(
        make_check("surface_max_p", max_p, 0.0, ReferenceConstants::observed_outlier_min));

    // Two cells cross-validated by sampling: the grid-backed sampler must
    // reproduce the inverted limit probability within Monte Carlo noise.
    const std::pair<double, double> spots[2] = {{1.5, 1.0}, {1.8, 0.5}};
    for (int s = 0; s < 2; ++s) {
        const TemperedStableSym ts(spots[s].first, spots[s].second, 1.0);
        const DistributionSpec spec{ts};
        const double analytic = limit_outlier_prob(spec, k);
        const double sigma = std::sqrt(moments(spec).variance);
        const TailFraction mc = mc_abs_tail_fraction(
            spec, k * sigma, 10000000, seed, 1000000 + static_cast<std::uint64_t>(s) * 1000,
            threads);
        std::ostringstream name;
        name << "spot_a" << spots[s].first << "_l" << spots[s].second << "_zscore";
        result.checks.push_back(
            make_check(name.str(), (mc.fraction - analytic) / mc.std_error, -4.0, 4.0));
    }

    result.runtime_seconds = timer.seconds();
    return result;
}

ExperimentResult run_figure3(const ExperimentOptions& opt) {
    if (opt.fig3_grid < 2) throw std::invalid_argument("run_figure3: grid needs >= 2 cells per axis");
    const std::vector<double> alphas = linspace(1.1, 1.9, opt.fig3_grid);
    const std::vector<double> lambdas = linspace(0.2, 4.0, opt.fig3_grid);
    ExperimentResult result = run_figure3(alphas, lambdas, opt.fig3_k, opt.seed, opt.threads);
    result.m = opt.m;
    return result;
}

ExperimentResult run_claims_table(const ExperimentOptions& opt) {
    Stopwatch timer;
    ExperimentResult result;
    result.experiment_id = "claims";
    result.kind = ResultKind::table;
    result.seed = opt.seed;
    result.m = opt.m;
    result.parameters = {{"n", "50000"},
                         {"k", "3"},
                         {"m", std::to_string(opt.m)},
                         {"seed", std::to_string(opt.seed)}};

    const std::size_t n = 50000;
    const double k = 3.0;

    // Gaussian: inversion against the reference constant, Monte Carlo
    // against the inversion.
    const DistributionSpec gauss{Gaussian(0.0, 1.0)};
    const double gauss_limit = limit_outlier_prob(gauss, k);
    result.checks.push_back(make_check("gaussian_limit", gauss_limit,
                                       ReferenceConstants::gaussian_k3 - 1e-4,
                                       ReferenceConstants::gaussian_k3 + 1e-4));
    const OutlierEstimate gauss_est = estimate_pn(gauss, n, k, opt.m, opt.seed, 0, opt.threads);
    result.checks.push_back(make_check(
        "gaussian_mc_zscore", (gauss_est.p_hat - gauss_limit) / gauss_est.std_error, -3.0, 3.0));

    // Symmetric stable alpha=1.8 at n=50,000: fixed acceptance band at desk
    // scale, 3 standard errors around the reference at full scale.
    const OutlierEstimate stable_est = estimate_pn(DistributionSpec{SymmetricStable(1.8)}, n, k,
                                                   opt.m, opt.seed, opt.m, opt.threads);
    if (opt.m >= 1500) {
        result.checks.push_back(make_check(
            "stable18_p50000", stable_est.p_hat,
            ReferenceConstants::stable18_k3_n50000 - 3.0 * stable_est.std_error,
            ReferenceConstants::stable18_k3_n50000 + 3.0 * stable_est.std_error));
    } else {
        result.checks.push_back(make_check("stable18_p50000", stable_est.p_hat, 0.0049, 0.0069));
    }

    // Laplace: closed form and inversion against the reference constant.
    const double laplace_analytic = std::exp(-3.0 * std::sqrt(2.0));
    const double laplace_limit = limit_outlier_prob(DistributionSpec{Laplace(1.0)}, k);
    result.checks.push_back(make_check("laplace_analytic", laplace_analytic,
                                       ReferenceConstants::laplace_k3 - 1e-5,
                                       ReferenceConstants::laplace_k3 + 1e-5));
    result.checks.push_back(make_check("laplace_limit", laplace_limit,
                                       ReferenceConstants::laplace_k3 - 1e-5,
                                       ReferenceConstants::laplace_k3 + 1e-5));

    result.runtime_seconds = timer.seconds();
    return result;
}

ExperimentResult run_ptd_demo(const ExperimentOptions& opt) {
    Stopwatch timer;
    ExperimentResult result;
    result.experiment_id = "ptd";
    result.kind = ResultKind::table;
    result.seed = opt.seed;
    result.m = opt.m;
    result.parameters = {{"mc_n", std::to_string(opt.mc_n)},
                         {"k", "3"},
                         {"seed", std::to_string(opt.seed)}};

    const double k = 3.0;
    const std::size_t n = opt.mc_n;

    // Variance shrinkage and the transformed outlier probability, checked by
    // Monte Carlo on the exact mixture sampler.
    const std::pair<std::string, DistributionSpec> bases[2] = {
        {"gaussian", DistributionSpec{Gaussian(0.0, 1.0)}},
        {"laplace", DistributionSpec{Laplace(1.0)}}};
    const double ps[3] = {0.1, 0.3, 0.5};
    std::uint64_t stream_base = 0;
    for (const auto& [base_name, base] : bases) {
        const double base_var = moments(base).variance;
        const double sigma = std::sqrt(base_var);
        for (const double p : ps) {
            const DistributionSpec ptd{PutTailDown(DistributionSpecT{base}, p)};
            std::vector<double> buf(n);
            RngStream stream(opt.seed, 5000 + stream_base);
            stream_base += 16;
            sample(ptd, stream, std::span<double>(buf));

            const SampleStats stats = empirical_stats(buf);
            const double target_var = (1.0 - p) * base_var;
            std::ostringstream vname;
            vname << "variance_" << base_name << "_p" << p;
            result.checks.push_back(make_check(vname.str(), stats.variance,
                                               0.98 * target_var, 1.02 * target_var));

            // P{|Y_p| > k sqrt(1-p) sigma} against the closed identity.
            const double threshold = k * std::sqrt(1.0 - p) * sigma;
            const double frac =
                static_cast<double>(kern::count_abs_gt(buf.data(), n, 0.0, threshold)) /
                static_cast<double>(n);
            const auto base_tail = [&](double x) { return *closed_form_survival(base, x); };
            const double predicted = outlier_prob_ptd(base_tail, p, k, sigma);
            const double se = std::sqrt(frac * (1.0 - frac) / static_cast<double>(n));
            std::ostringstream ename;
            ename << "identity_" << base_name << "_p" << p << "_zscore";
            result.checks.push_back(make_check(ename.str(), (frac - predicted) / se, -4.0, 4.0));
        }
    }

    // Gain inequality pattern: power tails always gain, exponential tails
    // gain exactly above the threshold k*.
    const TailModel power{PowerTail(1.0, 3.0), 1.0};
    for (const double p : ps) {
        std::ostringstream name;
        name << "gain_power_p" << p;
        result.checks.push_back(
            make_check(name.str(), gain_inequality_holds(power, p, k) ? 1.0 : 0.0, 1.0, 1.0));
    }
    const TailModel expo{ExponentialTail(1.0, 1.0), 1.0};
    const double kstar = exponential_threshold_k(expo, 0.5);
    result.checks.push_back(make_check(
        "gain_exp_above_kstar", gain_inequality_holds(expo, 0.5, 1.01 * kstar) ? 1.0 : 0.0, 1.0, 1.0));
    result.checks.push_back(make_check(
        "gain_exp_below_kstar", gain_inequality_holds(expo, 0.5, 0.99 * kstar) ? 1.0 : 0.0, 0.0, 0.0));

    // More-outliers effect on exact synthetic tail laws: studentized k-sigma
    // fraction of the transformed law beats the base beyond 3 combined
    // standard errors.
    const std::pair<std::string, DistributionSpec> tails[2] = {
        {"symexp", DistributionSpec{ShiftedExponentialSym(std::sqrt(2.0))}},
        {"sympareto", DistributionSpec{SymmetricPareto(3.0, 1.0 / std::sqrt(3.0))}}};
    const double p_gain = 0.3;
    std::uint64_t spot = 6000;
    for (const auto& [tail_name, base] : tails) {
        std::vector<double> base_buf(n);
        std::vector<double> ptd_buf(n);
        RngStream base_stream(opt.seed, spot);
        RngStream ptd_stream(opt.seed, spot + 1);
        spot += 16;
        sample(base, base_stream, std::span<double>(base_buf));
        const DistributionSpec ptd{PutTailDown(DistributionSpecT{base}, p_gain)};
        sample(ptd, ptd_stream, std::span<double>(ptd_buf));
        const double f_base = outlier_fraction(base_buf, k).fraction;
        const double f_ptd = outlier_fraction(ptd_buf, k).fraction;
        const double se = std::sqrt((f_base * (1.0 - f_base) + f_ptd * (1.0 - f_ptd)) /
                                    static_cast<double>(n));
        std::ostringstream name;
        name << "more_outliers_" << tail_name << "_zscore";
        result.checks.push_back(make_check(name.str(), (f_ptd - f_base) / se, 3.0, 1e12));
    }

    result.runtime_seconds = timer.seconds();
    return result;
}

ExperimentResult run_randomsum_demo(const ExperimentOptions& opt) {
    Stopwatch timer;
    ExperimentResult result;
    result.experiment_id = "randomsums";
    result.kind = ResultKind::table;
    result.seed = opt.seed;
    result.m = opt.m;
    result.parameters = {{"replicates", std::to_string(opt.rs_replicates)},
                         {"seed", std::to_string(opt.seed)}};

    const DistributionSpec gauss{Gaussian(0.0, 1.0)};

    // Geometric sums approach the Laplace limit as q -> 0.
    const std::vector<double> qs = {0.2, 0.05, 0.01};
    const auto rows = convergence_table(CountFamily::geometric, 1.0, qs, gauss,
                                        opt.rs_replicates, opt.seed, opt.threads);
    bool decreasing = true;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        decreasing = decreasing && rows[i + 1].ks_to_limit < rows[i].ks_to_limit;
    for (const ConvergenceRow& row : rows) {
        std::ostringstream name;
        name << "geom_ks_q" << row.q;
        // Only the smallest q carries a hard threshold; the larger ones are
        // reported for the trend.
        const double hi = row.q <= 0.011 ? 0.02 : 1.0;
        result.checks.push_back(make_check(name.str(), row.ks_to_limit, 0.0, hi));
    }
    result.checks.push_back(make_check("geom_ks_decreasing", decreasing ? 1.0 : 0.0, 1.0, 1.0));

    // The limit does not depend on the base law.
    const auto laplace_limit_cdf = limit_law_cdf(CountFamily::geometric);
    const DistributionSpec pareto_base{SymmetricPareto(3.0, 1.0)};
    const std::pair<std::string, DistributionSpec> alt_bases[2] = {
        {"laplace_base", DistributionSpec{Laplace(1.0)}}, {"pareto_base", pareto_base}};
    for (std::size_t b = 0; b < 2; ++b) {
        RandomSumConfig config{CountLaw{Geometric(0.01)}, alt_bases[b].second,
                               opt.rs_replicates, opt.seed,
                               10000 + b * opt.rs_replicates, opt.threads};
        const auto sums = random_sum_sample(config);
        result.checks.push_back(make_check("universality_" + alt_bases[b].first,
                                           ks_distance(sums, laplace_limit_cdf), 0.0, 0.02));
    }

    // Negative binomial counts: provisional against the symmetric gamma
    // limit, with the documented looser threshold.
    {
        RandomSumConfig config{CountLaw{NegativeBinomial(2.0, 0.01)}, gauss, opt.rs_replicates,
                               opt.seed, 20000, opt.threads};
        const auto sums = random_sum_sample(config);
        const auto nb_limit = limit_law_cdf(CountFamily::negative_binomial, 2.0);
        result.checks.push_back(
            make_check("nb_r2_ks_q0.01", ks_distance(sums, nb_limit), 0.0, 0.03));
    }

    // k=3 studentized outlier fraction at q=0.005 against the Laplace limit
    // probability; the standard error is measured across batches so it
    // includes the studentization noise.
    {
        const double q = 0.005;
        const std::size_t batches = 10;
        const std::size_t per_batch = std::max<std::size_t>(opt.rs_replicates / 5, 1000);
        std::vector<double> fractions(batches, 0.0);
        for (std::size_t b = 0; b < batches; ++b) {
            RandomSumConfig config{CountLaw{Geometric(q)}, gauss, per_batch, opt.seed,
                                   30000 + b * per_batch, opt.threads};
            const auto sums = random_sum_sample(config);
            fractions[b] = outlier_fraction(sums, 3.0).fraction;
        }
        double mean = 0.0;
        for (const double f : fractions) mean += f;
        mean /= static_cast<double>(batches);
        double ss = 0.0;
        for (const double f : fractions) ss += (f - mean) * (f - mean);
        const double se = std::sqrt(ss / static_cast<double>(batches - 1)) /
                          std::sqrt(static_cast<double>(batches));
        result.checks.push_back(make_check(
            "outlier_limit_zscore", (mean - ReferenceConstants::laplace_k3) / se, -3.0, 3.0));
        result.checks.push_back(
            make_check("outlier_limit_fraction", mean, ReferenceConstants::laplace_k3 - 0.0015,
                       ReferenceConstants::laplace_k3 + 0.0015));
    }

    result.runtime_seconds = timer.seconds();
    return result;
}

} // namespace ksigma
