// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include "kconc/alignment.hpp"
#include "kconc/bounds.hpp"
#include "kconc/dataset.hpp"
#include "kconc/experiments.hpp"
#include "kconc/kernel.hpp"
#include "kconc/spectral.hpp"

#include "hp_oracle.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>

namespace fs = std::filesystem;
using namespace kconc;
using boost::multiprecision::exp;
using boost::multiprecision::sqrt;
using test::hp;
using test::rel_close;

namespace {

constexpr std::uint64_t kSeed = 20240611;

unsigned hardware_workers()
{
    return std::max(2u, std::thread::hardware_concurrency());
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, double limit_seconds, const std::function<Outcome()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_seconds > 0 && secs >= limit_seconds) {
        o.pass = false;
        o.detail += "; runtime limit " + std::to_string(limit_seconds) + " s exceeded";
    }
    if (!o.pass) {
        ++failures;
    }
    std::printf("%s %s %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* pattern, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

const OracleRow& find_row(const std::vector<OracleRow>& rows, const std::string& name)
{
    for (const auto& r : rows) {
        if (r.inequality == name) {
            return r;
        }
    }
    throw std::runtime_error("oracle row '" + name + "' missing");
}

const TheoremCurve& find_curve(const StatisticSeries& s, Theorem t)
{
    for (const auto& c : s.curves) {
        if (c.theorem == t) {
            return c;
        }
    }
    throw std::runtime_error("curve " + theorem_id(t) + " missing for " + s.name());
}

/// Empirical frequency <= mean RHS + 2 stderr wherever the mean RHS is below 1.
struct Dominance {
    std::size_t checked = 0;
    std::size_t violations = 0;
    std::string worst;
};

void check_dominance(const ExperimentResult& r, Theorem t, Dominance& d)
{
    for (const auto& s : r.series) {
        const TheoremCurve& c = find_curve(s, t);
        for (std::size_t e = 0; e < c.mean.size(); ++e) {
            if (!(c.mean[e] < 1.0)) {
                continue;
            }
            ++d.checked;
            if (s.empirical_freq[e] > c.mean[e] + 2.0 * s.freq_stderr[e]) {
                ++d.violations;
                d.worst = fmt("%s %s eps=%.3g freq=%.4g rhs=%.4g", r.config.label.c_str(), s.name().c_str(),
                              r.config.epsilons[e], s.empirical_freq[e], c.mean[e]);
            }
        }
    }
}

// ------------------------------------------------------------------ AC1

Outcome interlacing_oracle()
{
    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<int> dim(3, 40);
    std::normal_distribution<double> normal;
    std::size_t drops = 0;
    std::size_t violations = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (int m = 0; m < 200; ++m) {
        const int n = dim(rng);
        // rank varies from 1 to n so that repeated zero eigenvalues are exercised too
        const int rank = std::uniform_int_distribution<int>(1, n)(rng);
        Eigen::MatrixXd b(n, rank);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < rank; ++j) {
                b(i, j) = normal(rng);
            }
        }
        const Eigen::MatrixXd a = b * b.transpose();
        const Spectrum parent = eig_sym(a, false);
        for (int s = 0; s < n; ++s) {
            const InterlacingResult r = interlacing_check(parent, eig_sym(principal_submatrix(a, s), false));
            ++drops;
            violations += r.holds ? 0 : 1;
            worst = std::max(worst, r.max_violation / (1.0 + std::abs(parent.eigenvalues(0))));
        }
    }
    return {violations == 0,
            fmt("200 PSD matrices, %zu drops, %zu violations, worst relative excess %.3g", drops, violations, worst)};
}

// ------------------------------------------------------------------ AC2 / AC3

std::vector<OracleRow> audit_rows()
{
    static std::vector<OracleRow> rows = [] {
        OracleConfig cfg = oracle_preset("gaussian-p5", kSeed);
        cfg.trials = 500;
        cfg.workers = hardware_workers();
        return run_oracles(cfg);
    }();
    return rows;
}

Outcome weyl_oracle()
{
    const auto rows = audit_rows();
    const OracleRow& w = find_row(rows, "weyl");
    const OracleRow& i = find_row(rows, "interlacing");
    return {w.trials == 500 && w.violations == 0,
            fmt("%zu replace-one trials (n=100, p=5, gaussian sigma=1), %zu violations of max|dlambda| <= |E| + 1e-9; "
                "interlacing row %zu/%zu",
                w.trials, w.violations, i.violations, i.trials)};
}

Outcome error_norm_oracle()
{
    const auto rows = audit_rows();
    const OracleRow& c = find_row(rows, "error_norm_conservative");
    const OracleRow& p = find_row(rows, "error_norm_printed");
    return {c.trials == 500 && c.violations == 0,
            fmt("conservative 12 M^2 L lambda_1 / sqrt(n): %zu/%zu violations; printed 6 M^2 L lambda_1p / sqrt(n) "
                "(reported only): violation rate %.4f, max excess %.3g",
                c.violations, c.trials, static_cast<double>(p.violations) / static_cast<double>(p.trials),
                p.max_violation)};
}

// ------------------------------------------------------------------ AC4

Outcome quadratic_residual()
{
    const Index n = 100;
    const Index p = 5;
    const KernelSpec spec = KernelSpec::gaussian(1.0);
    std::size_t cases = 0;
    std::size_t passed = 0;
    std::size_t bases = 0;
    double worst_ratio = 0.0;
    for (std::uint64_t b = 0; bases < 50; ++b) {
        const std::uint64_t seed = trial_seed(kSeed, b);
        const SampleSet draw = gen_gaussian(n + 1, p, seed);
        const SampleSet sample(draw.rows().topRows(n), draw.provenance());
        const Eigen::VectorXd replacement = draw.rows().row(n).transpose();
        const Index replaced = static_cast<Index>(splitmix64(seed) % static_cast<std::uint64_t>(n));
        const PerturbationPair pair = perturb_replace(sample, spec, replaced, replacement, GramScaling::one_over_n);
        const Spectrum base = eig_sym(pair.original);
        bool usable = true;
        for (Index i = 0; i < 3; ++i) {
            usable = usable && !gaps(base, i).degenerate;
        }
        if (!usable || !(pair.spectral_norm_e > 0.0)) {
            continue;
        }
        ++bases;
        for (Index i = 0; i < 3; ++i) {
            const GapProfile g = gaps(base, i);
            const double t = std::min(1.0, g.min_gap / (8.0 * pair.spectral_norm_e));
            const double full = eigvec_residual(pair.original.entries, base, pair.e, i, t);
            const double half = eigvec_residual(pair.original.entries, base, pair.e, i, t / 2.0);
            ++cases;
            const double ratio = full > 0.0 ? half / full : 0.0;
            worst_ratio = std::max(worst_ratio, ratio);
            passed += half <= 0.35 * full ? 1 : 0;
        }
    }
    const double rate = static_cast<double>(passed) / static_cast<double>(cases);
    return {rate >= 0.95, fmt("%zu base matrices x eigenvectors 1..3 = %zu cases, r(t/2) <= 0.35 r(t) in %.1f%%, "
                              "largest r(t/2)/r(t) = %.3f",
                              bases, cases, 100.0 * rate, worst_ratio)};
}

// ------------------------------------------------------------------ AC5 / AC6 / AC7

ExperimentResult run_preset_run(const ExperimentConfig& c)
{
    ExperimentConfig cfg = c;
    cfg.workers = hardware_workers();
    return run_concentration(cfg);
}

Outcome fig2_top()
{
    const auto runs = experiment_preset("example1-fig2-top", kSeed);
    Dominance d;
    const ExperimentResult r = run_preset_run(runs.at(0));
    check_dominance(r, Theorem::gap, d);
    return {d.violations == 0 && d.checked > 0,
            fmt("gap bound mean RHS vs empirical frequency, T=%lld, i in {1,2,3}: %zu grid points with RHS < 1, "
                "%zu violations%s",
                static_cast<long long>(r.config.trials), d.checked, d.violations,
                d.worst.empty() ? "" : ("; last " + d.worst).c_str())};
}

Outcome fig2_bottom()
{
    const auto runs = experiment_preset("example1-fig2-bottom", kSeed);
    Dominance d;
    std::vector<ExperimentResult> results;
    for (const auto& c : runs) {
        results.push_back(run_preset_run(c));
        check_dominance(results.back(), Theorem::covariance_distance, d);
    }
    const auto& p2 = find_curve(results.at(0).series.at(0), Theorem::covariance_distance).mean;
    const auto& p5 = find_curve(results.at(1).series.at(0), Theorem::covariance_distance).mean;
    double max_diff = 0.0;
    for (std::size_t e = 0; e < p2.size(); ++e) {
        max_diff = std::max(max_diff, std::abs(p2[e] - p5[e]));
    }
    const bool differs = max_diff > 1e-9;
    return {d.violations == 0 && differs,
            fmt("distance-kernel covariance bound, p=2 and p=5: %zu grid points with RHS < 1, %zu violations; "
                "max |RHS_p2 - RHS_p5| at i=1 = %.3g%s",
                d.checked, d.violations, max_diff, d.worst.empty() ? "" : ("; last " + d.worst).c_str())};
}

Outcome fig1_boxplot()
{
    ExperimentConfig cfg = experiment_preset("fig1-boxplot", kSeed).at(0);
    cfg.workers = hardware_workers();
    const BoxplotSummary s = boxplot_stats(cfg);
    return {s.boxes.size() == 15 && s.spearman_gap_iqr > 0.3,
            fmt("15 eigenvalues, T=%lld: Spearman(mean gap, IQR) = %.4f", static_cast<long long>(cfg.trials),
                s.spearman_gap_iqr)};
}

// ------------------------------------------------------------------ AC8

struct Checks {
    int total = 0;
    std::vector<std::string> failed;

    void close(const std::string& name, double actual, const hp& expected, double tol = 1e-9)
    {
        ++total;
        if (!rel_close(actual, expected, tol)) {
            failed.push_back(fmt("%s: got %.17g, expected %.17g", name.c_str(), actual, test::to_double(expected)));
        }
    }
};

Spectrum spectrum_of(std::initializer_list<double> values)
{
    Spectrum s;
    s.eigenvalues = Eigen::Map<const Eigen::VectorXd>(values.begin(), static_cast<Index>(values.size()));
    return s;
}

CovarianceStats cov_fixture(double m, double top, double gap)
{
    CovarianceStats c;
    c.eigs_sigma = Eigen::Vector2d(top, top - gap);
    c.gap_1p = gap;
    c.whitened_radius = m;
    c.sigma = c.eigs_sigma.asDiagonal();
    return c;
}

Outcome closed_forms()
{
    Checks k;
    const hp e2 = exp(hp(-2));

    // Law of large numbers on the Gaussian generator, within 0.05 of unit variance.
    {
        const SampleSet s = gen_gaussian(100000, 3, kSeed);
        for (Index j = 0; j < 3; ++j) {
            const Eigen::VectorXd col = s.rows().col(j);
            const double var = (col.array() - col.mean()).square().sum() / static_cast<double>(col.size() - 1);
            k.close("gaussian variance col " + std::to_string(j), var, hp(1), 0.05);
        }
    }
    // Covariance fixture rows (1,0), (0,2), (-1,0), (0,-2).
    {
        Eigen::MatrixXd rows(4, 2);
        rows << 1, 0, 0, 2, -1, 0, 0, -2;
        const CovarianceStats c = covariance_stats(SampleSet(rows, Provenance{"fixture", std::nullopt}));
        k.close("cov lambda_1", c.lambda_max(), hp(2));
        k.close("cov lambda_p", c.lambda_min(), hp(1) / 2);
        k.close("cov gap", c.gap_1p, hp(3) / 2);
        k.close("cov M", c.whitened_radius, sqrt(hp(2)));
    }
    // Kernel values, Lipschitz constants and diagonal suprema.
    {
        Eigen::MatrixXd pts(2, 1);
        pts << 0, 1;
        const GramMatrix g = gram(SampleSet(pts, Provenance{"fixture", std::nullopt}), KernelSpec::gaussian(1.0),
                                  GramScaling::raw);
        k.close("gaussian off-diagonal", g.entries(0, 1), exp(hp(-1) / 2));
        k.close("gaussian lipschitz", lipschitz(KernelSpec::gaussian(1.0)), hp(1) / 2);
        k.close("polynomial lipschitz B=3", lipschitz(KernelSpec::polynomial(2, 0.0), 3.0), hp(6));
        Eigen::MatrixXd r(2, 2);
        r << 3, 4, 0, 1;
        const SampleSet rs(r, Provenance{"fixture", std::nullopt});
        k.close("linear R^2", diag_sup(rs, KernelSpec::linear()), hp(25));
        k.close("polynomial R^2", diag_sup(rs, KernelSpec::polynomial(2, 1.0)), hp(676));
    }
    // Eigendecomposition fixtures.
    {
        Eigen::Matrix2d a;
        a << 2, 1, 1, 2;
        const Spectrum s = eig_sym(a);
        k.close("eig 1", s.eigenvalues(0), hp(3));
        k.close("eig 2", s.eigenvalues(1), hp(1));
        const hp h = 1 / sqrt(hp(2));
        k.close("u1[0]", s.eigenvectors(0, 0), h);
        k.close("u1[1]", s.eigenvectors(1, 0), h);
        k.close("u2[0]", s.eigenvectors(0, 1), h);
        k.close("u2[1]", s.eigenvectors(1, 1), -h);

        std::mt19937_64 rng(kSeed);
        std::normal_distribution<double> normal;
        Eigen::MatrixXd z(12, 12);
        for (Index i = 0; i < z.size(); ++i) {
            z.data()[i] = normal(rng);
        }
        const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(z).householderQ();
        Eigen::VectorXd lam(12);
        for (Index i = 0; i < 12; ++i) {
            lam(i) = 5.0 - static_cast<double>(i);
        }
        const Spectrum rt = eig_sym(Eigen::MatrixXd(q * lam.asDiagonal() * q.transpose()), false);
        for (Index i = 0; i < 12; ++i) {
            k.close("round-trip eigenvalue " + std::to_string(i + 1), rt.eigenvalues(i), hp(lam(i)), 1e-9);
        }
    }
    // Gap profiles.
    {
        const GapProfile g = gaps(spectrum_of({3, 2, 1}), 0);
        k.close("gap_next (3,2,1)", *g.gap_next, hp(1));
        k.close("R_1 (3,2,1)", g.resolvent_sum, hp(3) / 2);
        k.close("inv_gap_sq_sum (4,2,1) i=2", gaps(spectrum_of({4, 2, 1}), 1).inv_gap_sq_sum, hp(5) / 4);
    }
    // Replace-one perturbation norms.
    {
        const SampleSet s(Eigen::Matrix2d::Identity(), Provenance{"fixture", std::nullopt});
        const PerturbationPair pp =
            perturb_replace(s, KernelSpec::linear(), 1, Eigen::Vector2d(1, 0), GramScaling::raw);
        k.close("E off-diagonal", pp.e(0, 1), hp(1));
        k.close("E diagonal", pp.e(1, 1), hp(0));
        k.close("|E| two-point", pp.spectral_norm_e, hp(1));

        const SampleSet draw = gen_gaussian(31, 3, kSeed);
        const SampleSet sample(draw.rows().topRows(30), draw.provenance());
        const PerturbationPair rp = perturb_replace(sample, KernelSpec::gaussian(1.0), 7,
                                                    draw.rows().row(30).transpose(), GramScaling::one_over_n);
        k.close("|E| structured vs dense", replace_one_spectral_norm(rp.e, 7), hp(spectral_norm(rp.e)), 1e-10);
    }
    // First-order eigenvector: diag(2, 1) with E = [[0, d], [d, 0]]. The expansion
    // u_1 + (u_2^T E u_1) / (lambda_1 - lambda_2) u_2 gives (1, d) for K + E.
    {
        const double d = 1e-3;
        Eigen::Matrix2d e;
        e << 0, d, d, 0;
        const FirstOrderEigvec f = eigvec_first_order(eig_sym(Eigen::Matrix2d(Eigen::Vector2d(2, 1).asDiagonal())), e, 0);
        k.close("first-order u1[0]", f.vector(0), hp(1));
        k.close("first-order u1[1]", f.vector(1), hp(d) / (hp(2) - 1));
    }
    // Bound closed forms.
    {
        k.close("trace_uniform(100,1,0.1)", bound_trace_uniform(100, 1.0, 0.1), 2 * e2);
        const double v = bound_trace_uniform(100, 1.0, 0.1);
        k.close("trace_uniform doubling n", bound_trace_uniform(200, 1.0, 0.1), hp(v) * hp(v) / 2);
        k.close("theta(1,1,1)", bound_theta(1.0, 1.0, 1.0), 2 * e2);
        k.close("gap(100,1,0.1)", bound_gap_value(100, 1.0, 0.1), exp(hp(-2)));
        const Spectrum s = spectrum_of({3, 2, 1});
        k.close("topk (3,2,1) k=1", bound_topk_sum(3, s, 1, 1.0), exp(hp(-6)));
        k.close("tail (3,2,1) k=1", bound_tail_sum(3, s, 1, 1.0), exp(hp(-3) / 2));

        const CovarianceStats c = cov_fixture(std::sqrt(2.0), 2.0, 1.5);
        k.close("printed |E|", error_norm_bound(ProfileKind::distance, c, 0.5, 100).printed, hp(9) / 10);

        const CovarianceStats unit = cov_fixture(1.0, 2.0, 1.0);
        k.close("distance bound", bound_distance(100, unit, 1.0, 0.1), exp(hp(-100) / 18));
        k.close("inner bound", bound_inner(100, unit, 1.0, 0.1), exp(hp(-25)));

        // gamma = 0.9 + 0.1: printed |E| 0.9 (M^2 = 3, L = 0.5, gap = 1) and
        // |E|^2 sum 1/gap^2 = 0.1 from the spectrum (10, 10 - a, 0).
        const CovarianceStats so = cov_fixture(std::sqrt(3.0), 2.0, 1.0);
        const hp target = hp(1) / 10 / (hp(81) / 100);
        const hp a = 1 / sqrt(target - hp(1) / 100);
        const GapProfile g = gaps(spectrum_of({10.0, 10.0 - test::to_double(a), 0.0}), 0);
        k.close("second-order gamma", second_order_terms(100, so, 0.5, g).gamma, hp(1));
        k.close("second-order at eps=0.01", bound_second_order(100, so, 0.5, g, 0.01), exp(hp(-1)));
        k.close("second-order at eps=0.1", bound_second_order(100, so, 0.5, g, 0.1), exp(hp(-100)));

        const double lip = 1.0 / std::sqrt(18.0);
        const GapProfile r1 = gaps(spectrum_of({2, 1}), 0);
        k.close("eigvec pointwise", bound_eigvec_pointwise(unit, lip, r1, 1.0), exp(hp(-1)));
        k.close("eigvec uniform", bound_eigvec_uniform(1, unit, lip, r1, 2.0), 2 * e2);
    }
    // Alignment.
    {
        const LabelVector y({1, -1, 1, 1, -1, -1});
        const Eigen::VectorXd v = y.as_vector();
        k.close("kta rank-1", kta(Eigen::MatrixXd(v * v.transpose()), y), hp(1));
        k.close("kta identity", kta(Eigen::MatrixXd::Identity(6, 6), y), 1 / sqrt(hp(6)));
        Eigen::MatrixXd spike = Eigen::MatrixXd::Identity(6, 6);
        spike(2, 2) += 0.25;
        k.close("theta of I + d e_s e_s^T", theta(spike), hp(0));

        const hp c = hp(8) / 10 * 2 * (10 - hp(9) / 2 + hp(19) / 5);
        k.close("C(theta)", c_theta(0.8, 0.5, 10.0, 10, 5.0), c);
        k.close("kta jl", kta_bound_jl(10, c_theta(0.8, 0.5, 10.0, 10, 5.0), 1.0),
                2 * exp(-2 * hp(81) / (10 * c * c)));
        const hp dd = hp(2) + hp(1) / 10;
        k.close("D", alignment_deviation(0.0, 11, 3.0, 1.0), dd);
        k.close("kta new", kta_bound_new(alignment_deviation(0.0, 11, 3.0, 1.0), 1.0), 2 * exp(-2 / dd));
    }
    std::string detail = fmt("%d derived values recomputed at 50 digits", k.total);
    if (!k.failed.empty()) {
        detail += "; mismatches: ";
        for (const auto& f : k.failed) {
            detail += f + "; ";
        }
    }
    return {k.failed.empty(), detail};
}

// ------------------------------------------------------------------ AC9

Outcome monotonicity()
{
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> u(0.05, 5.0);
    std::uniform_real_distribution<double> eps_dist(0.0, 3.0);
    std::uniform_int_distribution<Index> n_dist(3, 2000);
    std::vector<std::pair<std::string, std::size_t>> counts;
    std::size_t total_violations = 0;
    auto run = [&](const std::string& name, const std::function<std::function<double(double)>()>& draw) {
        std::size_t violations = 0;
        for (int t = 0; t < 1000; ++t) {
            const auto f = draw();
            std::vector<double> grid(8);
            for (double& e : grid) {
                e = eps_dist(rng);
            }
            std::sort(grid.begin(), grid.end());
            for (std::size_t i = 1; i < grid.size(); ++i) {
                violations += f(grid[i]) > f(grid[i - 1]) ? 1 : 0;
            }
        }
        counts.emplace_back(name, violations);
        total_violations += violations;
    };
    auto random_spectrum = [&] {
        const double a = 10.0 + u(rng);
        const double b = 5.0 + u(rng);
        return spectrum_of({a, b, u(rng)});
    };
    run("trace_uniform", [&] {
        const Index n = n_dist(rng);
        const double r2 = u(rng);
        return [=](double e) { return bound_trace_uniform(n, r2, e); };
    });
    run("theta_top", [&] {
        const double th = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
        const double l1 = u(rng);
        return [=](double e) { return bound_theta(th, l1, e); };
    });
    run("gap", [&] {
        const Index n = n_dist(rng);
        const GapProfile g = gaps(random_spectrum(), 0);
        return [=](double e) { return bound_gap(n, g, e); };
    });
    run("topk_gap", [&] {
        const Index n = n_dist(rng);
        const Spectrum s = random_spectrum();
        return [=](double e) { return bound_topk_sum(n, s, 1, e); };
    });
    run("tail_gap", [&] {
        const Index n = n_dist(rng);
        const Spectrum s = random_spectrum();
        return [=](double e) { return bound_tail_sum(n, s, 2, e); };
    });
    auto cov = [&] { return cov_fixture(u(rng), 5.0 + u(rng), u(rng)); };
    run("covariance_distance", [&] {
        const Index n = n_dist(rng);
        const CovarianceStats c = cov();
        const double lip = u(rng);
        return [=](double e) { return bound_distance(n, c, lip, e); };
    });
    run("covariance_inner", [&] {
        const Index n = n_dist(rng);
        const CovarianceStats c = cov();
        const double lip = u(rng);
        return [=](double e) { return bound_inner(n, c, lip, e); };
    });
    run("second_order", [&] {
        const Index n = n_dist(rng);
        const CovarianceStats c = cov();
        const double lip = u(rng);
        const GapProfile g = gaps(random_spectrum(), 1);
        return [=](double e) { return bound_second_order(n, c, lip, g, e); };
    });
    run("second_order_unsquared", [&] {
        const Index n = n_dist(rng);
        const CovarianceStats c = cov();
        const double lip = u(rng);
        const GapProfile g = gaps(random_spectrum(), 1);
        return [=](double e) { return bound_second_order_unsquared(n, c, lip, g, e); };
    });
    run("eigvec_pointwise", [&] {
        const CovarianceStats c = cov();
        const double lip = u(rng);
        const GapProfile g = gaps(random_spectrum(), 0);
        return [=](double e) { return bound_eigvec_pointwise(c, lip, g, e); };
    });
    run("eigvec_uniform", [&] {
        const Index n = n_dist(rng);
        const CovarianceStats c = cov();
        const double lip = u(rng);
        const GapProfile g = gaps(random_spectrum(), 0);
        return [=](double e) { return bound_eigvec_uniform(n, c, lip, g, e); };
    });
    run("kta_jl", [&] {
        const Index n = n_dist(rng);
        const double a = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
        const double th = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
        const double cth = c_theta(a, th, static_cast<double>(n), n, u(rng));
        return [=](double e) { return kta_bound_jl(n, cth, e); };
    });
    run("kta_new", [&] {
        const Index n = n_dist(rng);
        const double d = alignment_deviation(std::uniform_real_distribution<double>(-1.0, 1.0)(rng), n,
                                             1.0 + u(rng), u(rng));
        return [=](double e) { return kta_bound_new(d, e); };
    });
    run("kta_new_bdiff", [&] {
        const Index n = n_dist(rng);
        const double d = alignment_deviation(std::uniform_real_distribution<double>(-1.0, 1.0)(rng), n,
                                             1.0 + u(rng), u(rng));
        return [=](double e) { return kta_bound_new_bdiff(n, d, e); };
    });
    std::string detail = fmt("%zu bounds x 1000 random tuples x 7 ordered eps pairs, %zu violations",
                             counts.size(), total_violations);
    for (const auto& [name, v] : counts) {
        if (v != 0) {
            detail += "; " + name + ": " + std::to_string(v);
        }
    }
    return {total_violations == 0, detail};
}

// ------------------------------------------------------------------ AC10

int run_tool(const std::string& args)
{
    const std::string cmd = std::string(KCONC_TOOL_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism()
{
    const fs::path root = fs::temp_directory_path() / "kconc_acceptance";
    fs::remove_all(root);
    const std::string workers = std::to_string(hardware_workers());
    const std::string seed = std::to_string(kSeed);
    struct Case {
        std::string name;
        std::string args;
    };
    const std::vector<Case> cases{
        {"simulate-fig2-top", "simulate --preset example1-fig2-top --seed " + seed},
        {"simulate-fig2-bottom", "simulate --preset example1-fig2-bottom --seed " + seed + " --trials 300"},
        {"simulate-inline", "simulate --seed " + seed + " --trials 200 --p 3 --stat eigenvalue --stat topk_sum "
                                                        "--bounds gap --bounds topk_gap --bounds second_order"},
        {"audit", "audit --seed " + seed + " --oracle-trials 500"},
    };
    std::size_t compared = 0;
    std::vector<std::string> diffs;
    for (const auto& c : cases) {
        const fs::path a = root / (c.name + "-w1-a");
        const fs::path b = root / (c.name + "-w1-b");
        const fs::path w = root / (c.name + "-wN");
        for (const auto& [dir, wk] : {std::pair{a, std::string("1")}, {b, std::string("1")}, {w, workers}}) {
            if (run_tool(c.args + " --workers " + wk + " --out " + dir.string()) != 0) {
                return {false, c.name + " exited nonzero"};
            }
        }
        for (const auto& entry : fs::directory_iterator(a)) {
            const auto ext = entry.path().extension();
            if (ext != ".csv" && ext != ".json") {
                continue;
            }
            const std::string ref = slurp(entry.path());
            const auto name = entry.path().filename();
            ++compared;
            if (ref != slurp(b / name) || ref != slurp(w / name)) {
                diffs.push_back(c.name + "/" + name.string());
            }
        }
    }
    std::string detail = fmt("%zu commands x (rerun, 1 vs %s workers), %zu CSV/JSON files compared, %zu differ",
                             cases.size(), workers.c_str(), compared, diffs.size());
    for (const auto& d : diffs) {
        detail += "; " + d;
    }
    return {diffs.empty() && compared > 0, detail};
}

}  // namespace

int main()
{
    report("AC1", "interlacing oracle", 10, interlacing_oracle);
    report("AC2", "Weyl stability oracle", 30, weyl_oracle);
    report("AC3", "conservative error-norm bound", 30, error_norm_oracle);
    report("AC4", "first-order eigenvector quadratic residual", 30, quadratic_residual);
    report("AC5", "gap bound dominance, p=1 preset", 60, fig2_top);
    report("AC6", "covariance bound dominance, p=2 and p=5 presets", 120, fig2_bottom);
    report("AC7", "eigenvalue spread tracks the gap", 60, fig1_boxplot);
    report("AC8", "closed-form regression against 50-digit oracle", 0, closed_forms);
    report("AC9", "monotonicity in epsilon", 0, monotonicity);
    report("AC10", "determinism across reruns and worker counts", 0, determinism);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
