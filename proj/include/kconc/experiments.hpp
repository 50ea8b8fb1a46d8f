#pragma once

#include "kconc/kernel.hpp"
#include "kconc/stats.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kconc {

/// Bounds the Monte Carlo harness can evaluate per trial.
enum class Theorem {
    trace_uniform,
    theta_top,
    gap,
    topk_gap,
    tail_gap,
    covariance_distance,
    covariance_inner,
    second_order,
    second_order_unsquared,
    kta_jl,
    kta_new,
    kta_new_bdiff,
};

std::string theorem_id(Theorem t);
Theorem parse_theorem(const std::string& id);

enum class ExperimentStatistic { eigenvalue, topk_sum, tail_sum, kta };

std::string to_string(ExperimentStatistic s);
ExperimentStatistic parse_experiment_statistic(const std::string& text);

/// 40 log-spaced points spanning [1e-4, 1].
std::vector<double> default_epsilon_grid();

/// splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Per-trial seed derived from the master seed and the trial index only.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

struct ExperimentConfig {
    std::string label = "run";
    std::string generator = "gaussian";
    Index p = 1;
    Index n = 100;
    Index trials = 1000;
    std::uint64_t seed = 0;
    KernelSpec kernel = KernelSpec::gaussian(1.0);
    /// raw: statistic lambda_i(G)/n on the unscaled Gram matrix G.
    /// one_over_n: statistic lambda_i(G/n)/n.
    GramScaling scaling = GramScaling::raw;
    bool centered = false;
    std::vector<double> epsilons = default_epsilon_grid();
    std::vector<Index> indices{1, 2, 3};  // 1-based eigenvalue orders / k values
    std::vector<ExperimentStatistic> statistics{ExperimentStatistic::eigenvalue};
    std::vector<Theorem> bounds{Theorem::gap};
    /// Every trial reuses the trial-0 seed (zero-deviation check).
    bool identical_trials = false;
    /// Thread count; results do not depend on it.
    unsigned workers = 1;

    void validate() const;
};

/// Mean of a theorem's trial-dependent right-hand side over the eps grid.
struct TheoremCurve {
    Theorem theorem = Theorem::gap;
    std::vector<double> mean;
    std::vector<double> p10;
    std::vector<double> std_error;
    std::size_t flagged = 0;  // trials where a precondition failed; excluded here only
    /// The closed form is evaluated at eps_factor * eps: the theorem is stated
    /// for a statistic that differs from the reported one by this factor.
    double eps_factor = 1.0;
};

struct StatisticSeries {
    ExperimentStatistic statistic = ExperimentStatistic::eigenvalue;
    Index order = 1;  // 1-based; 0 for kta
    std::vector<double> values;        // per trial
    std::vector<double> next_gaps;     // eigenvalue series: s_i - s_{i+1} per trial
    double mc_mean = 0.0;
    double mc_stderr = 0.0;
    std::vector<double> empirical_freq;  // (1/T) #{t : |s_t - mc_mean| > eps}
    std::vector<double> freq_stderr;     // sqrt(f (1 - f) / T)
    FiveNumber box;
    double mean_gap = 0.0;
    std::vector<TheoremCurve> curves;

    std::string name() const;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<std::uint64_t> subseeds;
    std::vector<StatisticSeries> series;
};

/// Fraction of |values - center| > eps, computed for each eps.
std::vector<double> deviation_frequencies(const std::vector<double>& values, double center,
                                          const std::vector<double>& epsilons);

ExperimentResult run_concentration(const ExperimentConfig& cfg);

struct BoxplotSummary {
    std::vector<Index> orders;
    std::vector<FiveNumber> boxes;
    std::vector<double> mean_gap;
    std::vector<double> iqr;
    double spearman_gap_iqr = 0.0;
};

BoxplotSummary summarize_boxplot(const ExperimentResult& result);
BoxplotSummary boxplot_stats(const ExperimentConfig& cfg);

struct OracleConfig {
    Index n = 100;
    Index p = 5;
    double sigma = 1.0;
    Index trials = 500;
    std::uint64_t seed = 0;
    bool centered = false;
    bool zero_perturbation = false;
    std::vector<Index> indices{1, 2, 3};
    unsigned workers = 1;

    void validate() const;
};

struct OracleRow {
    std::string inequality;
    std::size_t trials = 0;
    std::size_t violations = 0;
    double max_violation = 0.0;  // largest excess of the left side over the right, 0 if none
};

/// Replace-one perturbation audit on Gaussian samples and the 1/n-scaled
/// Gaussian-kernel Gram matrix. Rows: interlacing, weyl, error_norm_printed,
/// error_norm_conservative, second_order_eigenvalue, first_order_eigvec_quadratic,
/// inner_product_error_norm.
std::vector<OracleRow> run_oracles(const OracleConfig& cfg);

/// Named configurations: example1-fig2-top, example1-fig2-bottom (two runs,
/// p = 2 and p = 5), fig1-boxplot.
std::vector<ExperimentConfig> experiment_preset(const std::string& name, std::uint64_t seed);
std::vector<std::string> experiment_preset_names();

/// gaussian-p5 (default audit) and gaussian-p2.
OracleConfig oracle_preset(const std::string& name, std::uint64_t seed);

}  // namespace kconc
