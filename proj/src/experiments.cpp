#include "kconc/experiments.hpp"

#include "kconc/alignment.hpp"
#include "kconc/bounds.hpp"
#include "kconc/dataset.hpp"
#include "kconc/error.hpp"
#include "kconc/parallel.hpp"
#include "kconc/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

namespace kconc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TheoremName {
    Theorem theorem;
    const char* id;
};

constexpr TheoremName kTheoremNames[] = {
    {Theorem::trace_uniform, "trace_uniform"},
    {Theorem::theta_top, "theta_top"},
    {Theorem::gap, "gap"},
    {Theorem::topk_gap, "topk_gap"},
    {Theorem::tail_gap, "tail_gap"},
    {Theorem::covariance_distance, "covariance_distance"},
    {Theorem::covariance_inner, "covariance_inner"},
    {Theorem::second_order, "second_order"},
    {Theorem::second_order_unsquared, "second_order_unsquared"},
    {Theorem::kta_jl, "kta_jl"},
    {Theorem::kta_new, "kta_new"},
    {Theorem::kta_new_bdiff, "kta_new_bdiff"},
};

bool applies(Theorem t, ExperimentStatistic s)
{
    switch (t) {
    case Theorem::trace_uniform:
    case Theorem::theta_top:
    case Theorem::gap:
    case Theorem::covariance_distance:
    case Theorem::covariance_inner:
    case Theorem::second_order:
    case Theorem::second_order_unsquared:
        return s == ExperimentStatistic::eigenvalue;
    case Theorem::topk_gap:
        return s == ExperimentStatistic::topk_sum;
    case Theorem::tail_gap:
        return s == ExperimentStatistic::tail_sum;
    case Theorem::kta_jl:
    case Theorem::kta_new:
    case Theorem::kta_new_bdiff:
        return s == ExperimentStatistic::kta;
    }
    return false;
}

/// Theorems stated for (1/n) lambda_i of the 1/n-scaled Gram matrix, i.e. lambda_i(G)/n^2.
bool covariance_scaled(Theorem t)
{
    return t == Theorem::covariance_distance || t == Theorem::covariance_inner ||
           t == Theorem::second_order || t == Theorem::second_order_unsquared;
}

struct SeriesPlan {
    ExperimentStatistic statistic;
    Index order;
    std::vector<Theorem> theorems;
};

std::vector<SeriesPlan> plan_series(const ExperimentConfig& cfg)
{
    std::vector<SeriesPlan> plans;
    for (ExperimentStatistic stat : cfg.statistics) {
        std::vector<Theorem> theorems;
        for (Theorem t : cfg.bounds) {
            if (applies(t, stat)) {
                theorems.push_back(t);
            }
        }
        if (stat == ExperimentStatistic::kta) {
            plans.push_back({stat, 0, theorems});
            continue;
        }
        for (Index order : cfg.indices) {
            plans.push_back({stat, order, theorems});
        }
    }
    return plans;
}

struct TrialRecord {
    std::vector<double> values;
    std::vector<double> next_gaps;
    std::vector<std::vector<std::vector<double>>> rhs;  // [series][theorem][eps]; empty = flagged
};

/// Lazily computed per-trial quantities shared between theorems.
class TrialContext {
public:
    TrialContext(const ExperimentConfig& cfg, std::uint64_t seed)
        : cfg_(cfg),
          sample_(gen_gaussian(cfg.n, cfg.p, seed)),
          gram_(gram(sample_, cfg.kernel, GramScaling::raw)),
          spectrum_(eig_sym(gram_, false))
    {
    }

    const SampleSet& sample() const { return sample_; }
    const GramMatrix& gram_matrix() const { return gram_; }
    const Spectrum& spectrum() const { return spectrum_; }

    const CovarianceStats& cov()
    {
        if (!cov_) {
            cov_ = covariance_stats(sample_, cfg_.centered);
        }
        return *cov_;
    }

    double lip()
    {
        if (!lip_) {
            lip_ = lipschitz(cfg_.kernel, sample_);
        }
        return *lip_;
    }

    double theta_value()
    {
        if (!theta_) {
            theta_ = theta(gram_.entries, ThetaMode::drop, 1);
        }
        return *theta_;
    }

    const Spectrum& scaled_spectrum()
    {
        if (!scaled_) {
            scaled_ = Spectrum{spectrum_.eigenvalues / static_cast<double>(cfg_.n), {}};
        }
        return *scaled_;
    }

    const LabelVector& labels()
    {
        if (!labels_) {
            std::vector<int> y(static_cast<std::size_t>(cfg_.n));
            for (Index i = 0; i < cfg_.n; ++i) {
                y[i] = sample_.rows()(i, 0) >= 0.0 ? 1 : -1;
            }
            labels_ = LabelVector(std::move(y));
        }
        return *labels_;
    }

private:
    const ExperimentConfig& cfg_;
    SampleSet sample_;
    GramMatrix gram_;
    Spectrum spectrum_;
    std::optional<CovarianceStats> cov_;
    std::optional<double> lip_;
    std::optional<double> theta_;
    std::optional<Spectrum> scaled_;
    std::optional<LabelVector> labels_;
};

double statistic_divisor(const ExperimentConfig& cfg)
{
    const double n = static_cast<double>(cfg.n);
    return cfg.scaling == GramScaling::raw ? n : n * n;
}

double eps_factor(const ExperimentConfig& cfg, Theorem t)
{
    if (t == Theorem::kta_jl || t == Theorem::kta_new || t == Theorem::kta_new_bdiff) {
        return 1.0;
    }
    const double n = static_cast<double>(cfg.n);
    const double native = covariance_scaled(t) ? n * n : n;
    return statistic_divisor(cfg) / native;
}

std::vector<double> evaluate_theorem(const ExperimentConfig& cfg, TrialContext& ctx,
                                     const SeriesPlan& plan, Theorem t)
{
    const Index n = cfg.n;
    const double f = eps_factor(cfg, t);
    const Index i = plan.order - 1;
    const Spectrum& spec = ctx.spectrum();
    std::vector<double> out;
    out.reserve(cfg.epsilons.size());
    auto fill = [&](auto&& fn) {
        for (double eps : cfg.epsilons) {
            out.push_back(fn(f * eps));
        }
    };
    switch (t) {
    case Theorem::trace_uniform: {
        const double r2 = diag_sup(ctx.sample(), cfg.kernel);
        fill([&](double e) { return bound_trace_uniform(n, r2, e); });
        break;
    }
    case Theorem::theta_top: {
        const double th = ctx.theta_value();
        if (!(th > 0.0)) {
            throw DegenerateError("theta bound undefined at theta = 0");
        }
        fill([&](double e) { return bound_theta(th, spec.eigenvalues(0), e); });
        break;
    }
    case Theorem::gap: {
        const GapProfile g = gaps(spec, i);
        fill([&](double e) { return bound_gap(n, g, e); });
        break;
    }
    case Theorem::topk_gap:
        fill([&](double e) { return bound_topk_sum(n, spec, plan.order, e); });
        break;
    case Theorem::tail_gap:
        fill([&](double e) { return bound_tail_sum(n, spec, plan.order, e); });
        break;
    case Theorem::covariance_distance:
    case Theorem::covariance_inner: {
        const auto& cov = ctx.cov();
        const double lip = ctx.lip();
        const ProfileKind kind = t == Theorem::covariance_distance ? ProfileKind::distance
                                                                   : ProfileKind::inner_product;
        fill([&](double e) { return bound_covariance(kind, n, cov, lip, e); });
        break;
    }
    case Theorem::second_order:
    case Theorem::second_order_unsquared: {
        const auto& cov = ctx.cov();
        const double lip = ctx.lip();
        const GapProfile g = gaps(ctx.scaled_spectrum(), i);
        const ProfileKind kind = cfg.kernel.kind();
        if (t == Theorem::second_order) {
            fill([&](double e) { return bound_second_order(n, cov, lip, g, e, kind); });
        } else {
            fill([&](double e) { return bound_second_order_unsquared(n, cov, lip, g, e, kind); });
        }
        break;
    }
    case Theorem::kta_jl: {
        const double a = kta(ctx.gram_matrix(), ctx.labels());
        const double frob = ctx.gram_matrix().entries.norm();
        const double c = c_theta(a, ctx.theta_value(), static_cast<double>(n), n, frob);
        fill([&](double e) { return kta_bound_jl(n, c, e); });
        break;
    }
    case Theorem::kta_new:
    case Theorem::kta_new_bdiff: {
        const double a = kta(ctx.gram_matrix(), ctx.labels());
        const double frob = ctx.gram_matrix().entries.norm();
        const double l = middle_eigen_norm(spec);
        const double d = alignment_deviation(a, n, frob / l, l);
        if (t == Theorem::kta_new) {
            fill([&](double e) { return kta_bound_new(d, e); });
        } else {
            fill([&](double e) { return kta_bound_new_bdiff(n, d, e); });
        }
        break;
    }
    }
    return out;
}

TrialRecord run_trial(const ExperimentConfig& cfg, const std::vector<SeriesPlan>& plans,
                      std::uint64_t seed)
{
    TrialContext ctx(cfg, seed);
    const double div = statistic_divisor(cfg);
    const Eigen::VectorXd& lam = ctx.spectrum().eigenvalues;
    const Index n = cfg.n;
    TrialRecord rec;
    rec.values.resize(plans.size());
    rec.next_gaps.assign(plans.size(), kNaN);
    rec.rhs.resize(plans.size());
    for (std::size_t s = 0; s < plans.size(); ++s) {
        const SeriesPlan& plan = plans[s];
        const Index i = plan.order - 1;
        switch (plan.statistic) {
        case ExperimentStatistic::eigenvalue:
            rec.values[s] = lam(i) / div;
            if (i + 1 < n) {
                rec.next_gaps[s] = (lam(i) - lam(i + 1)) / div;
            }
            break;
        case ExperimentStatistic::topk_sum:
            rec.values[s] = lam.head(plan.order).sum() / div;
            break;
        case ExperimentStatistic::tail_sum:
            rec.values[s] = lam.tail(n - i).sum() / div;
            break;
        case ExperimentStatistic::kta:
            rec.values[s] = kta(ctx.gram_matrix(), ctx.labels());
            break;
        }
        rec.rhs[s].resize(plan.theorems.size());
        for (std::size_t k = 0; k < plan.theorems.size(); ++k) {
            try {
                rec.rhs[s][k] = evaluate_theorem(cfg, ctx, plan, plan.theorems[k]);
            } catch (const DegenerateError&) {
                rec.rhs[s][k].clear();
            }
        }
    }
    return rec;
}

}  // namespace

std::string theorem_id(Theorem t)
{
    for (const auto& entry : kTheoremNames) {
        if (entry.theorem == t) {
            return entry.id;
        }
    }
    return "unknown";
}

Theorem parse_theorem(const std::string& id)
{
    for (const auto& entry : kTheoremNames) {
        if (id == entry.id) {
            return entry.theorem;
        }
    }
    throw ConfigError("unknown theorem id '" + id + "'");
}

std::string to_string(ExperimentStatistic s)
{
    switch (s) {
    case ExperimentStatistic::eigenvalue:
        return "eigenvalue";
    case ExperimentStatistic::topk_sum:
        return "topk_sum";
    case ExperimentStatistic::tail_sum:
        return "tail_sum";
    case ExperimentStatistic::kta:
        return "kta";
    }
    return {};
}

ExperimentStatistic parse_experiment_statistic(const std::string& text)
{
    for (auto s : {ExperimentStatistic::eigenvalue, ExperimentStatistic::topk_sum,
                   ExperimentStatistic::tail_sum, ExperimentStatistic::kta}) {
        if (text == to_string(s)) {
            return s;
        }
    }
    throw ConfigError("unknown statistic '" + text + "'");
}

std::string StatisticSeries::name() const
{
    return to_string(statistic);
}

std::vector<double> default_epsilon_grid()
{
    std::vector<double> grid(40);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        grid[k] = std::pow(10.0, -4.0 + 4.0 * static_cast<double>(k) / 39.0);
    }
    return grid;
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial)
{
    return splitmix64(splitmix64(master) ^ (trial * 0xD1B54A32D192ED03ULL));
}

void ExperimentConfig::validate() const
{
    if (generator != "gaussian") {
        throw ConfigError("unknown generator '" + generator + "' (only gaussian is available)");
    }
    if (p < 1) {
        throw ConfigError("dimension p must be >= 1");
    }
    if (n < 3) {
        throw ConfigError("sample size n must be >= 3");
    }
    if (trials < 2) {
        throw ConfigError("at least T = 2 trials are required");
    }
    validate_epsilons(epsilons);
    if (statistics.empty()) {
        throw ConfigError("no statistics requested");
    }
    for (ExperimentStatistic s : statistics) {
        if (s == ExperimentStatistic::kta) {
            continue;
        }
        if (indices.empty()) {
            throw ConfigError("no eigenvalue indices requested");
        }
        for (Index i : indices) {
            if (i < 1 || i > n) {
                throw ConfigError("index " + std::to_string(i) + " outside 1.." + std::to_string(n));
            }
            if (s == ExperimentStatistic::topk_sum && i >= n) {
                throw ConfigError("top-k sums need k < n");
            }
        }
    }
    for (Theorem t : bounds) {
        if (t == Theorem::covariance_distance && kernel.kind() != ProfileKind::distance) {
            throw ConfigError("covariance_distance needs a distance kernel");
        }
        if (t == Theorem::covariance_inner && kernel.kind() != ProfileKind::inner_product) {
            throw ConfigError("covariance_inner needs an inner-product kernel");
        }
    }
}

std::vector<double> deviation_frequencies(const std::vector<double>& values, double center,
                                          const std::vector<double>& epsilons)
{
    std::vector<double> dev(values.size());
    for (std::size_t t = 0; t < values.size(); ++t) {
        dev[t] = std::abs(values[t] - center);
    }
    std::sort(dev.begin(), dev.end());
    std::vector<double> freq;
    freq.reserve(epsilons.size());
    for (double eps : epsilons) {
        const auto above = dev.end() - std::upper_bound(dev.begin(), dev.end(), eps);
        freq.push_back(static_cast<double>(above) / static_cast<double>(values.size()));
    }
    return freq;
}

ExperimentResult run_concentration(const ExperimentConfig& cfg)
{
    cfg.validate();
    const auto plans = plan_series(cfg);
    const auto trials = static_cast<std::size_t>(cfg.trials);

    ExperimentResult result;
    result.config = cfg;
    result.subseeds.resize(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        result.subseeds[t] = trial_seed(cfg.seed, cfg.identical_trials ? 0 : t);
    }

    std::vector<TrialRecord> records(trials);
    parallel_for(trials, cfg.workers,
                 [&](std::size_t t) { records[t] = run_trial(cfg, plans, result.subseeds[t]); });

    const std::size_t n_eps = cfg.epsilons.size();
    for (std::size_t s = 0; s < plans.size(); ++s) {
        StatisticSeries series;
        series.statistic = plans[s].statistic;
        series.order = plans[s].order;
        series.values.resize(trials);
        series.next_gaps.resize(trials);
        for (std::size_t t = 0; t < trials; ++t) {
            series.values[t] = records[t].values[s];
            series.next_gaps[t] = records[t].next_gaps[s];
        }
        series.mc_mean = mean(series.values);
        series.mc_stderr = standard_error(series.values);
        series.empirical_freq = deviation_frequencies(series.values, series.mc_mean, cfg.epsilons);
        for (double f : series.empirical_freq) {
            series.freq_stderr.push_back(std::sqrt(f * (1.0 - f) / static_cast<double>(trials)));
        }
        series.box = five_number(series.values);
        series.mean_gap = mean(series.next_gaps);

        for (std::size_t k = 0; k < plans[s].theorems.size(); ++k) {
            TheoremCurve curve;
            curve.theorem = plans[s].theorems[k];
            curve.eps_factor = eps_factor(cfg, curve.theorem);
            std::vector<std::vector<double>> per_eps(n_eps);
            for (std::size_t t = 0; t < trials; ++t) {
                const auto& rhs = records[t].rhs[s][k];
                if (rhs.empty()) {
                    ++curve.flagged;
                    continue;
                }
                for (std::size_t e = 0; e < n_eps; ++e) {
                    per_eps[e].push_back(rhs[e]);
                }
            }
            for (std::size_t e = 0; e < n_eps; ++e) {
                if (per_eps[e].empty()) {
                    curve.mean.push_back(kNaN);
                    curve.p10.push_back(kNaN);
                    curve.std_error.push_back(kNaN);
                    continue;
                }
                curve.mean.push_back(mean(per_eps[e]));
                curve.p10.push_back(quantile(per_eps[e], 0.1));
                curve.std_error.push_back(standard_error(per_eps[e]));
            }
            series.curves.push_back(std::move(curve));
        }
        result.series.push_back(std::move(series));
    }
    return result;
}

BoxplotSummary summarize_boxplot(const ExperimentResult& result)
{
    BoxplotSummary summary;
    std::vector<double> gap_for_rank;
    std::vector<double> iqr_for_rank;
    for (const auto& series : result.series) {
        if (series.statistic != ExperimentStatistic::eigenvalue) {
            continue;
        }
        summary.orders.push_back(series.order);
        summary.boxes.push_back(series.box);
        summary.mean_gap.push_back(series.mean_gap);
        summary.iqr.push_back(series.box.iqr());
        if (std::isfinite(series.mean_gap)) {
            gap_for_rank.push_back(series.mean_gap);
            iqr_for_rank.push_back(series.box.iqr());
        }
    }
    summary.spearman_gap_iqr = spearman(gap_for_rank, iqr_for_rank);
    return summary;
}

BoxplotSummary boxplot_stats(const ExperimentConfig& cfg)
{
    ExperimentConfig eig_only = cfg;
    eig_only.statistics = {ExperimentStatistic::eigenvalue};
    eig_only.bounds.clear();
    return summarize_boxplot(run_concentration(eig_only));
}

void OracleConfig::validate() const
{
    if (trials < 100) {
        throw ConfigError("oracle audit needs at least 100 trials");
    }
    if (n < 4 || p < 1) {
        throw ConfigError("oracle audit needs n >= 4 and p >= 1");
    }
    if (!(sigma > 0.0)) {
        throw ConfigError("kernel bandwidth must be positive");
    }
    for (Index i : indices) {
        if (i < 1 || i > n) {
            throw ConfigError("oracle index " + std::to_string(i) + " outside 1.." + std::to_string(n));
        }
    }
}

namespace {

struct RowTally {
    std::size_t trials = 0;
    std::size_t violations = 0;
    double max_excess = 0.0;

    /// Counts a violation when lhs > rhs (rhs already carries any tolerance).
    void record(double lhs, double rhs)
    {
        ++trials;
        const double excess = lhs - rhs;
        if (excess > 0.0) {
            ++violations;
            max_excess = std::max(max_excess, excess);
        }
    }

    void merge(const RowTally& other)
    {
        trials += other.trials;
        violations += other.violations;
        max_excess = std::max(max_excess, other.max_excess);
    }
};

constexpr std::size_t kOracleRows = 7;
constexpr const char* kOracleRowNames[kOracleRows] = {
    "interlacing",
    "weyl",
    "error_norm_printed",
    "error_norm_conservative",
    "second_order_eigenvalue",
    "first_order_eigvec_quadratic",
    "inner_product_error_norm",
};

using OracleTrial = std::array<RowTally, kOracleRows>;

OracleTrial run_oracle_trial(const OracleConfig& cfg, std::uint64_t seed)
{
    OracleTrial rows;
    const Index n = cfg.n;
    const SampleSet draws = gen_gaussian(n + 1, cfg.p, seed);
    const SampleSet sample(draws.rows().topRows(n), draws.provenance());
    const auto index = static_cast<Index>(splitmix64(seed ^ 0x5851F42D4C957F2DULL) % static_cast<std::uint64_t>(n));
    const Eigen::VectorXd replacement = cfg.zero_perturbation
                                            ? Eigen::VectorXd(sample.rows().row(index).transpose())
                                            : Eigen::VectorXd(draws.rows().row(n).transpose());

    const KernelSpec kernel = KernelSpec::gaussian(cfg.sigma);
    const GramMatrix k = gram(sample, kernel, GramScaling::one_over_n);
    const Spectrum base = eig_sym(k);
    const PerturbationPair pair = perturb_replace(sample, k, index, replacement);
    const double e_norm = pair.spectral_norm_e;
    const Spectrum moved = eig_sym(pair.perturbed, false);

    // interlacing: parent K, child K with the replaced row/column dropped
    const InterlacingResult inter = interlacing_check(base, eig_sym(principal_submatrix(k, index), false));
    rows[0].record(inter.max_violation, inter.tolerance);

    const double max_shift = (moved.eigenvalues - base.eigenvalues).cwiseAbs().maxCoeff();
    rows[1].record(max_shift, e_norm + 1e-9);

    CovarianceStats cov = covariance_stats(sample, cfg.centered);
    cov.whitened_radius = std::max(cov.whitened_radius, cov.whitened_norm(replacement));
    const double lip = lipschitz(kernel);
    const ErrorNormBound dist = error_norm_bound(ProfileKind::distance, cov, lip, n);
    const double rel = 1e-12 * (1.0 + e_norm);
    rows[2].record(e_norm, dist.printed + rel);
    rows[3].record(e_norm, dist.conservative + rel);

    double t = 1.0;
    std::vector<Index> expandable;
    for (Index order : cfg.indices) {
        const GapProfile g = gaps(base, order - 1);
        if (g.degenerate) {
            continue;
        }
        if (e_norm < 0.5 * g.min_gap) {
            const Index i = order - 1;
            rows[4].record(std::abs(moved.eigenvalues(i) - base.eigenvalues(i)),
                           e_norm + e_norm * e_norm * g.resolvent_sum + 1e-9);
        }
        expandable.push_back(order - 1);
        if (e_norm > 0.0) {
            t = std::min(t, g.min_gap / (8.0 * e_norm));
        }
    }
    if (!expandable.empty()) {
        const Spectrum full = eig_sym(Eigen::MatrixXd(k.entries + t * pair.e));
        const Spectrum half = eig_sym(Eigen::MatrixXd(k.entries + 0.5 * t * pair.e));
        for (Index i : expandable) {
            const Eigen::VectorXd& ui = base.eigenvectors.col(i);
            const Eigen::MatrixXd e_full = t * pair.e;
            const Eigen::MatrixXd e_half = 0.5 * t * pair.e;
            const double r_full =
                (align_sign(full.eigenvectors.col(i), ui) - eigvec_first_order(base, e_full, i, t * e_norm).vector).norm();
            const double r_half =
                (align_sign(half.eigenvectors.col(i), ui) - eigvec_first_order(base, e_half, i, 0.5 * t * e_norm).vector).norm();
            rows[5].record(r_half, 0.35 * r_full);
        }
    }

    const GramMatrix k_lin = gram(sample, KernelSpec::linear(), GramScaling::one_over_n);
    const PerturbationPair lin = perturb_replace(sample, k_lin, index, replacement);
    const ErrorNormBound inner = error_norm_bound(ProfileKind::inner_product, cov, 1.0, n);
    rows[6].record(lin.spectral_norm_e, inner.printed + 1e-12 * (1.0 + lin.spectral_norm_e));
    return rows;
}

}  // namespace

std::vector<OracleRow> run_oracles(const OracleConfig& cfg)
{
    cfg.validate();
    const auto trials = static_cast<std::size_t>(cfg.trials);
    std::vector<OracleTrial> per_trial(trials);
    parallel_for(trials, cfg.workers, [&](std::size_t t) {
        per_trial[t] = run_oracle_trial(cfg, trial_seed(cfg.seed, t));
    });
    OracleTrial total;
    for (const auto& trial : per_trial) {
        for (std::size_t r = 0; r < kOracleRows; ++r) {
            total[r].merge(trial[r]);
        }
    }
    std::vector<OracleRow> rows;
    for (std::size_t r = 0; r < kOracleRows; ++r) {
        rows.push_back(OracleRow{kOracleRowNames[r], total[r].trials, total[r].violations, total[r].max_excess});
    }
    return rows;
}

std::vector<std::string> experiment_preset_names()
{
    return {"example1-fig2-top", "example1-fig2-bottom", "fig1-boxplot"};
}

std::vector<ExperimentConfig> experiment_preset(const std::string& name, std::uint64_t seed)
{
    ExperimentConfig base;
    base.seed = seed;
    base.n = 100;
    base.trials = 1000;
    base.kernel = KernelSpec::gaussian(1.0);
    if (name == "example1-fig2-top") {
        base.label = "fig2-top";
        base.p = 1;
        base.indices = {1, 2, 3};
        base.bounds = {Theorem::gap, Theorem::trace_uniform};
        return {base};
    }
    if (name == "example1-fig2-bottom") {
        base.indices = {1, 2, 3};
        base.bounds = {Theorem::covariance_distance};
        ExperimentConfig p2 = base;
        p2.label = "fig2-bottom-p2";
        p2.p = 2;
        ExperimentConfig p5 = base;
        p5.label = "fig2-bottom-p5";
        p5.p = 5;
        return {p2, p5};
    }
    if (name == "fig1-boxplot") {
        base.label = "fig1-boxplot";
        base.p = 5;
        base.indices.clear();
        for (Index i = 1; i <= 15; ++i) {
            base.indices.push_back(i);
        }
        base.bounds = {Theorem::gap};
        return {base};
    }
    throw ConfigError("unknown preset '" + name + "'");
}

OracleConfig oracle_preset(const std::string& name, std::uint64_t seed)
{
    OracleConfig cfg;
    cfg.seed = seed;
    if (name == "gaussian-p5") {
        cfg.p = 5;
    } else if (name == "gaussian-p2") {
        cfg.p = 2;
    } else {
        throw ConfigError("unknown audit preset '" + name + "'");
    }
    return cfg;
}

}  // namespace kconc
