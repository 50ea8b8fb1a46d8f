#pragma once

#include "kconc/dataset.hpp"
#include "kconc/kernel.hpp"
#include "kconc/spectral.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

// Closed-form tail bounds P{|statistic - E statistic| > eps} <= value.
// Every function is pure and returns the raw (unclipped) value; eps = 0 gives
// the theorem's prefactor. Preconditions on the statistics throw
// DegenerateError, invalid arguments throw ConfigError.
namespace kconc {

/// 2 exp(-2 n eps^2 / R^4): uniform over eigenvalues, depends only on R^2 = sup k(x, x).
double bound_trace_uniform(Index n, double r_squared, double eps);

/// 2 exp(-2 eps^2 / (theta^2 lambda_1^2)), theta in (0, 1].
double bound_theta(double theta, double lambda_1, double eps);

/// exp(-2 n eps^2 / gap^2) for a positive gap.
double bound_gap_value(Index n, double gap, double eps);

/// Eigenvalue bound driven by the next gap lambda_i - lambda_{i+1}.
double bound_gap(Index n, const GapProfile& profile, double eps);

/// Sum of the top k eigenvalues: gap lambda_1 - lambda_{k+1}, 1 <= k < n.
double bound_topk_sum(Index n, const Spectrum& s, Index k, double eps);

/// Sum of eigenvalues k..n (1-based k): gap lambda_k - lambda_n, 1 <= k <= n.
double bound_tail_sum(Index n, const Spectrum& s, Index k, double eps);

/// Bounds on |E| for one replaced sample in the 1/n-scaled Gram matrix.
/// printed: 6 M^2 |f|_L lambda_{1,p} / sqrt(n) (distance) or 2 M^2 |f|_L lambda_{1,p} / sqrt(n)
/// (inner product). conservative: 12 M^2 |f|_L lambda_1 / sqrt(n) (distance) or
/// 4 M^2 |f|_L lambda_1 / sqrt(n) (inner product); these stay valid for isotropic Sigma,
/// where lambda_{1,p} = 0 but E != 0.
struct ErrorNormBound {
    double printed = 0.0;
    double conservative = 0.0;
};

ErrorNormBound error_norm_bound(ProfileKind kind, const CovarianceStats& cov, double lip, Index n);

/// exp(-n^2 eps^2 / (18 M^4 |f|_L^2 lambda_{1,p}^2)).
double bound_distance(Index n, const CovarianceStats& cov, double lip, double eps);

/// exp(-n^2 eps^2 / (4 |f|_L^2 M^4 lambda_{1,p}^2)).
double bound_inner(Index n, const CovarianceStats& cov, double lip, double eps);

double bound_covariance(ProfileKind kind, Index n, const CovarianceStats& cov, double lip, double eps);

/// gamma = e + e^2 sum_{j != i} 1/(lambda_j - lambda_i)^2 with e the printed |E| bound;
/// gamma_unsquared uses R_i = sum 1/|lambda_j - lambda_i| instead, which is what the
/// second-order eigenvalue expansion itself produces.
struct SecondOrderTerms {
    double error_norm = 0.0;
    double gamma = 0.0;
    double gamma_unsquared = 0.0;
    /// e < half the distance from lambda_i to the rest of the spectrum
    bool expansion_valid = false;
};

SecondOrderTerms second_order_terms(Index n, const CovarianceStats& cov, double lip,
                                    const GapProfile& profile,
                                    ProfileKind kind = ProfileKind::distance);

/// exp(-n^2 eps^2 / gamma^2).
double bound_second_order(Index n, const CovarianceStats& cov, double lip,
                          const GapProfile& profile, double eps,
                          ProfileKind kind = ProfileKind::distance);

/// exp(-n^2 eps^2 / gamma_unsquared^2).
double bound_second_order_unsquared(Index n, const CovarianceStats& cov, double lip,
                                    const GapProfile& profile, double eps,
                                    ProfileKind kind = ProfileKind::distance);

/// 1/c = 18 M^4 |f|_L^2 R_i^2 lambda_{1,p}^2 for distance kernels
/// (2 M^4 ... for inner-product kernels, from |E| <= 2 M^2 |f|_L lambda_{1,p} / sqrt(n)).
double eigvec_inverse_constant(const CovarianceStats& cov, double lip, const GapProfile& profile,
                               ProfileKind kind = ProfileKind::distance);

/// exp(-eps^2 c): projection of u_i on any fixed unit direction w.
double bound_eigvec_pointwise(const CovarianceStats& cov, double lip, const GapProfile& profile,
                              double eps, ProfileKind kind = ProfileKind::distance);

/// 2 exp(2 n - c eps^2): uniform over directions; vacuous (>= 2) while eps^2 < 2n / c.
double bound_eigvec_uniform(Index n, const CovarianceStats& cov, double lip,
                            const GapProfile& profile, double eps,
                            ProfileKind kind = ProfileKind::distance);

enum class StatisticKind { eigenvalue, topk_sum, tail_sum, eigvec };

/// A statistic with its 1-based order: eigenvalue i, top-k sum, tail sum from k,
/// or eigenvector i.
struct Statistic {
    StatisticKind kind = StatisticKind::eigenvalue;
    Index order = 1;

    bool operator==(const Statistic&) const = default;
};

std::string to_string(const Statistic& s);
/// Parses "eig:i", "topk:k", "tail:k" or "vec:i".
Statistic parse_statistic(const std::string& text);

struct BoundEntry {
    Statistic statistic;
    double epsilon = 0.0;
    std::string theorem;
    double raw = 0.0;

    bool vacuous() const { return raw >= 1.0; }
    double clipped() const { return raw < 0.0 ? 0.0 : (raw > 1.0 ? 1.0 : raw); }
};

/// Everything the bounds need, computed once from a sample.
struct BoundInputs {
    Index n = 0;
    Spectrum spectrum;  // of the Gram matrix in the scaling being reported
    GramScaling scaling = GramScaling::raw;
    ProfileKind kind = ProfileKind::distance;
    double lipschitz = 0.0;
    double r_squared = 0.0;
    std::optional<CovarianceStats> cov;
    std::optional<double> theta;
    bool theta_estimated = false;
};

struct BoundReport {
    std::vector<BoundEntry> entries;
    std::vector<std::pair<std::string, double>> metadata;
    std::vector<std::string> notes;
};

/// Evaluates every bound that applies to each statistic over the eps grid
/// (strictly positive, ascending). Throws DegenerateError when a required
/// theorem precondition fails.
BoundReport evaluate_bounds(const BoundInputs& inputs, std::span<const Statistic> statistics,
                            std::span<const double> epsilons);

void validate_epsilons(std::span<const double> epsilons);

}  // namespace kconc
