#include "kconc/bounds.hpp"

#include "kconc/error.hpp"

#include <cmath>
#include <sstream>

namespace kconc {

namespace {

void check_eps(double eps)
{
    if (!(eps >= 0.0) || std::isnan(eps)) {
        throw ConfigError("epsilon must be >= 0");
    }
}

void check_n(Index n)
{
    if (n < 1) {
        throw ConfigError("sample size n must be >= 1");
    }
}

void check_lip(double lip)
{
    if (!(lip > 0.0) || !std::isfinite(lip)) {
        throw ConfigError("Lipschitz constant must be positive and finite");
    }
}

double covariance_gap_tolerance(const CovarianceStats& cov)
{
    return 1e-10 * (1.0 + std::abs(cov.lambda_max()));
}

void require_covariance_gap(const CovarianceStats& cov)
{
    if (!(cov.gap_1p > covariance_gap_tolerance(cov))) {
        std::ostringstream msg;
        msg << "covariance gap lambda_1(Sigma) - lambda_p(Sigma) = " << cov.gap_1p
            << " is degenerate; covariance-based bounds need lambda_{1,p} > 0 "
               "(isotropic data makes the printed |E| bound vanish)";
        throw DegenerateError(msg.str());
    }
}

void require_separated(const GapProfile& g)
{
    if (g.degenerate) {
        throw DegenerateError("eigenvalue " + std::to_string(g.index + 1) +
                              " is repeated: theorem assumes distinct eigenvalues");
    }
}

double sq(double v) { return v * v; }

}  // namespace

double bound_trace_uniform(Index n, double r_squared, double eps)
{
    check_n(n);
    check_eps(eps);
    if (!(r_squared > 0.0)) {
        throw ConfigError("R^2 must be positive");
    }
    return 2.0 * std::exp(-2.0 * static_cast<double>(n) * eps * eps / (r_squared * r_squared));
}

double bound_theta(double theta, double lambda_1, double eps)
{
    check_eps(eps);
    if (!(theta > 0.0 && theta <= 1.0)) {
        throw ConfigError("theta must lie in (0, 1]");
    }
    if (!(lambda_1 > 0.0)) {
        throw DegenerateError("largest eigenvalue must be positive");
    }
    return 2.0 * std::exp(-2.0 * eps * eps / sq(theta * lambda_1));
}

double bound_gap_value(Index n, double gap, double eps)
{
    check_n(n);
    check_eps(eps);
    if (!(gap > 0.0)) {
        throw DegenerateError("zero spectral gap: theorem assumes distinct eigenvalues");
    }
    return std::exp(-2.0 * static_cast<double>(n) * eps * eps / (gap * gap));
}

double bound_gap(Index n, const GapProfile& profile, double eps)
{
    if (!profile.gap_next) {
        throw ConfigError("gap bound is defined for eigenvalues 1..n-1 only");
    }
    if (profile.degenerate_next) {
        throw DegenerateError("gap lambda_" + std::to_string(profile.index + 1) + " - lambda_" +
                              std::to_string(profile.index + 2) +
                              " vanishes: theorem assumes distinct eigenvalues");
    }
    return bound_gap_value(n, *profile.gap_next, eps);
}

double bound_topk_sum(Index n, const Spectrum& s, Index k, double eps)
{
    if (k < 1 || k >= s.dim()) {
        throw ConfigError("top-k sum bound needs 1 <= k < n");
    }
    const double gap = range_gap(s, 0, k);
    if (gap < gap_tolerance(s)) {
        throw DegenerateError("lambda_1 - lambda_{k+1} vanishes: theorem assumes distinct eigenvalues");
    }
    return bound_gap_value(n, gap, eps);
}

double bound_tail_sum(Index n, const Spectrum& s, Index k, double eps)
{
    if (k < 1 || k > s.dim()) {
        throw ConfigError("tail sum bound needs 1 <= k <= n");
    }
    const double gap = range_gap(s, k - 1, s.dim() - 1);
    if (gap < gap_tolerance(s)) {
        throw DegenerateError("lambda_k - lambda_n vanishes: theorem assumes distinct eigenvalues");
    }
    return bound_gap_value(n, gap, eps);
}

ErrorNormBound error_norm_bound(ProfileKind kind, const CovarianceStats& cov, double lip, Index n)
{
    check_n(n);
    check_lip(lip);
    const double m2 = sq(cov.whitened_radius);
    const double root_n = std::sqrt(static_cast<double>(n));
    const double printed_coef = kind == ProfileKind::distance ? 6.0 : 2.0;
    const double conservative_coef = kind == ProfileKind::distance ? 12.0 : 4.0;
    return ErrorNormBound{printed_coef * m2 * lip * cov.gap_1p / root_n,
                          conservative_coef * m2 * lip * cov.lambda_max() / root_n};
}

double bound_distance(Index n, const CovarianceStats& cov, double lip, double eps)
{
    check_n(n);
    check_eps(eps);
    check_lip(lip);
    require_covariance_gap(cov);
    const double denom = 18.0 * sq(sq(cov.whitened_radius)) * sq(lip) * sq(cov.gap_1p);
    return std::exp(-sq(static_cast<double>(n)) * eps * eps / denom);
}

double bound_inner(Index n, const CovarianceStats& cov, double lip, double eps)
{
    check_n(n);
    check_eps(eps);
    check_lip(lip);
    require_covariance_gap(cov);
    const double denom = 4.0 * sq(lip) * sq(sq(cov.whitened_radius)) * sq(cov.gap_1p);
    return std::exp(-sq(static_cast<double>(n)) * eps * eps / denom);
}

double bound_covariance(ProfileKind kind, Index n, const CovarianceStats& cov, double lip, double eps)
{
    return kind == ProfileKind::distance ? bound_distance(n, cov, lip, eps)
                                         : bound_inner(n, cov, lip, eps);
}

SecondOrderTerms second_order_terms(Index n, const CovarianceStats& cov, double lip,
                                    const GapProfile& profile, ProfileKind kind)
{
    require_separated(profile);
    require_covariance_gap(cov);
    SecondOrderTerms t;
    t.error_norm = error_norm_bound(kind, cov, lip, n).printed;
    const double e2 = sq(t.error_norm);
    t.gamma = t.error_norm + e2 * profile.inv_gap_sq_sum;
    t.gamma_unsquared = t.error_norm + e2 * profile.resolvent_sum;
    t.expansion_valid = t.error_norm < 0.5 * profile.min_gap;
    return t;
}

double bound_second_order(Index n, const CovarianceStats& cov, double lip,
                          const GapProfile& profile, double eps, ProfileKind kind)
{
    check_eps(eps);
    const auto t = second_order_terms(n, cov, lip, profile, kind);
    return std::exp(-sq(static_cast<double>(n)) * eps * eps / sq(t.gamma));
}

double bound_second_order_unsquared(Index n, const CovarianceStats& cov, double lip,
                                    const GapProfile& profile, double eps, ProfileKind kind)
{
    check_eps(eps);
    const auto t = second_order_terms(n, cov, lip, profile, kind);
    return std::exp(-sq(static_cast<double>(n)) * eps * eps / sq(t.gamma_unsquared));
}

double eigvec_inverse_constant(const CovarianceStats& cov, double lip, const GapProfile& profile,
                               ProfileKind kind)
{
    check_lip(lip);
    require_separated(profile);
    require_covariance_gap(cov);
    const double coef = kind == ProfileKind::distance ? 18.0 : 2.0;
    return coef * sq(sq(cov.whitened_radius)) * sq(lip) * sq(profile.resolvent_sum) * sq(cov.gap_1p);
}

double bound_eigvec_pointwise(const CovarianceStats& cov, double lip, const GapProfile& profile,
                              double eps, ProfileKind kind)
{
    check_eps(eps);
    return std::exp(-eps * eps / eigvec_inverse_constant(cov, lip, profile, kind));
}

double bound_eigvec_uniform(Index n, const CovarianceStats& cov, double lip,
                            const GapProfile& profile, double eps, ProfileKind kind)
{
    check_n(n);
    check_eps(eps);
    const double c = 1.0 / eigvec_inverse_constant(cov, lip, profile, kind);
    return 2.0 * std::exp(2.0 * static_cast<double>(n) - c * eps * eps);
}

std::string to_string(const Statistic& s)
{
    switch (s.kind) {
    case StatisticKind::eigenvalue:
        return "eig:" + std::to_string(s.order);
    case StatisticKind::topk_sum:
        return "topk:" + std::to_string(s.order);
    case StatisticKind::tail_sum:
        return "tail:" + std::to_string(s.order);
    case StatisticKind::eigvec:
        return "vec:" + std::to_string(s.order);
    }
    return {};
}

Statistic parse_statistic(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw ConfigError("statistic '" + text + "' must look like eig:i, topk:k, tail:k or vec:i");
    }
    const std::string head = text.substr(0, colon);
    Statistic s;
    if (head == "eig") {
        s.kind = StatisticKind::eigenvalue;
    } else if (head == "topk") {
        s.kind = StatisticKind::topk_sum;
    } else if (head == "tail") {
        s.kind = StatisticKind::tail_sum;
    } else if (head == "vec") {
        s.kind = StatisticKind::eigvec;
    } else {
        throw ConfigError("unknown statistic '" + head + "'");
    }
    try {
        std::size_t used = 0;
        const std::string tail = text.substr(colon + 1);
        s.order = std::stol(tail, &used);
        if (used != tail.size()) {
            throw std::invalid_argument("trailing characters");
        }
    } catch (const std::exception&) {
        throw ConfigError("statistic '" + text + "' has a non-integer order");
    }
    if (s.order < 1) {
        throw ConfigError("statistic orders are 1-based");
    }
    return s;
}

void validate_epsilons(std::span<const double> epsilons)
{
    if (epsilons.empty()) {
        throw ConfigError("at least one epsilon is required");
    }
    for (std::size_t k = 0; k < epsilons.size(); ++k) {
        if (!(epsilons[k] > 0.0) || !std::isfinite(epsilons[k])) {
            throw ConfigError("epsilons must be strictly positive and finite");
        }
        if (k > 0 && !(epsilons[k] > epsilons[k - 1])) {
            throw ConfigError("epsilons must be strictly ascending");
        }
    }
}

BoundReport evaluate_bounds(const BoundInputs& in, std::span<const Statistic> statistics,
                            std::span<const double> epsilons)
{
    validate_epsilons(epsilons);
    BoundReport report;
    const Spectrum& s = in.spectrum;
    const Index dim = s.dim();
    auto meta = [&](std::string key, double value) { report.metadata.emplace_back(std::move(key), value); };
    auto add = [&](const Statistic& stat, const std::string& theorem, auto&& fn) {
        for (double eps : epsilons) {
            report.entries.push_back(BoundEntry{stat, eps, theorem, fn(eps)});
        }
    };

    meta("n", static_cast<double>(in.n));
    meta("lipschitz", in.lipschitz);
    meta("r_squared", in.r_squared);
    meta("lambda_1", s.eigenvalues(0));
    if (in.cov) {
        meta("whitened_radius", in.cov->whitened_radius);
        meta("lambda_1_sigma", in.cov->lambda_max());
        meta("lambda_p_sigma", in.cov->lambda_min());
        meta("lambda_1p_sigma", in.cov->gap_1p);
        const auto e = error_norm_bound(in.kind, *in.cov, in.lipschitz, in.n);
        meta("error_norm_printed", e.printed);
        meta("error_norm_conservative", e.conservative);
    }
    if (in.theta) {
        meta(in.theta_estimated ? "theta_estimated" : "theta", *in.theta);
    }

    for (const Statistic& stat : statistics) {
        const std::string tag = to_string(stat);
        const Index i = stat.order - 1;
        if (stat.order > dim) {
            throw ConfigError("statistic " + tag + " exceeds n = " + std::to_string(dim));
        }
        switch (stat.kind) {
        case StatisticKind::eigenvalue: {
            const GapProfile g = gaps(s, i);
            add(stat, "trace_uniform", [&](double eps) { return bound_trace_uniform(in.n, in.r_squared, eps); });
            if (in.theta) {
                add(stat, in.theta_estimated ? "theta_top_estimated" : "theta_top",
                    [&](double eps) { return bound_theta(*in.theta, s.eigenvalues(0), eps); });
            }
            if (g.gap_next) {
                meta(tag + ".gap_next", *g.gap_next);
                add(stat, "gap", [&](double eps) { return bound_gap(in.n, g, eps); });
            } else {
                report.notes.push_back(tag + ": gap bound undefined for the last eigenvalue");
            }
            if (in.cov) {
                const std::string cov_id =
                    in.kind == ProfileKind::distance ? "covariance_distance" : "covariance_inner";
                add(stat, cov_id, [&](double eps) {
                    return bound_covariance(in.kind, in.n, *in.cov, in.lipschitz, eps);
                });
                const auto t = second_order_terms(in.n, *in.cov, in.lipschitz, g, in.kind);
                meta(tag + ".inv_gap_sq_sum", g.inv_gap_sq_sum);
                meta(tag + ".resolvent_sum", g.resolvent_sum);
                meta(tag + ".gamma", t.gamma);
                meta(tag + ".gamma_unsquared", t.gamma_unsquared);
                meta(tag + ".expansion_valid", t.expansion_valid ? 1.0 : 0.0);
                add(stat, "second_order", [&](double eps) {
                    return bound_second_order(in.n, *in.cov, in.lipschitz, g, eps, in.kind);
                });
                add(stat, "second_order_unsquared", [&](double eps) {
                    return bound_second_order_unsquared(in.n, *in.cov, in.lipschitz, g, eps, in.kind);
                });
            }
            break;
        }
        case StatisticKind::topk_sum:
            meta(tag + ".range_gap", range_gap(s, 0, std::min(stat.order, dim - 1)));
            add(stat, "topk_gap", [&](double eps) { return bound_topk_sum(in.n, s, stat.order, eps); });
            break;
        case StatisticKind::tail_sum:
            meta(tag + ".range_gap", range_gap(s, i, dim - 1));
            add(stat, "tail_gap", [&](double eps) { return bound_tail_sum(in.n, s, stat.order, eps); });
            break;
        case StatisticKind::eigvec: {
            if (!in.cov) {
                throw ConfigError("eigenvector bounds need covariance statistics of the sample");
            }
            const GapProfile g = gaps(s, i);
            const double inv_c = eigvec_inverse_constant(*in.cov, in.lipschitz, g, in.kind);
            meta(tag + ".resolvent_sum", g.resolvent_sum);
            meta(tag + ".c", 1.0 / inv_c);
            add(stat, "eigvec_pointwise", [&](double eps) {
                return bound_eigvec_pointwise(*in.cov, in.lipschitz, g, eps, in.kind);
            });
            add(stat, "eigvec_uniform", [&](double eps) {
                return bound_eigvec_uniform(in.n, *in.cov, in.lipschitz, g, eps, in.kind);
            });
            break;
        }
        }
    }
    return report;
}

}  // namespace kconc
