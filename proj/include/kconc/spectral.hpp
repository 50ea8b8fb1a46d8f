#pragma once

#include "kconc/dataset.hpp"
#include "kconc/kernel.hpp"

#include <Eigen/Dense>

#include <optional>

namespace kconc {

/// Eigenpairs of a symmetric matrix, eigenvalues descending. Column i of
/// `eigenvectors` pairs with eigenvalues(i); each column has its largest
/// magnitude entry positive (lowest index on ties). `eigenvectors` is empty
/// when only eigenvalues were requested.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;

    Index dim() const { return eigenvalues.size(); }
    bool has_vectors() const { return eigenvectors.size() > 0; }
};

Spectrum eig_sym(const Eigen::MatrixXd& a, bool with_vectors = true);
Spectrum eig_sym(const GramMatrix& g, bool with_vectors = true);

/// Flips v so that its largest-magnitude entry is positive.
void canonicalize_sign(Eigen::Ref<Eigen::VectorXd> v);

/// Flips v so that v . reference >= 0.
Eigen::VectorXd align_sign(const Eigen::VectorXd& v, const Eigen::VectorXd& reference);

/// 1e-10 * (1 + |lambda_1|); gaps below this count as degenerate.
double gap_tolerance(const Spectrum& s);

/// Gap statistics around eigenvalue `index` (0-based, descending order).
struct GapProfile {
    Index index = 0;
    std::optional<double> gap_next;  // lambda_i - lambda_{i+1}; absent for the last index
    double resolvent_sum = 0.0;      // R_i = sum_{j != i} 1 / |lambda_i - lambda_j|
    double inv_gap_sq_sum = 0.0;     // sum_{j != i} 1 / (lambda_j - lambda_i)^2
    double min_gap = 0.0;            // min_{j != i} |lambda_i - lambda_j|
    bool degenerate = false;         // some |lambda_i - lambda_j| < tolerance; sums are +inf
    bool degenerate_next = false;
    double tolerance = 0.0;
};

GapProfile gaps(const Spectrum& s, Index index);

/// lambda_i - lambda_{i+1}; throws ConfigError for the last index.
double gap_next(const Spectrum& s, Index index);

/// lambda_a - lambda_b (0-based).
double range_gap(const Spectrum& s, Index a, Index b);

/// Removes row and column `drop` (0-based).
Eigen::MatrixXd principal_submatrix(const Eigen::MatrixXd& a, Index drop);
GramMatrix principal_submatrix(const GramMatrix& g, Index drop);

struct InterlacingResult {
    bool holds = true;
    /// Worst signed violation over mu_i - lambda_i and lambda_{i+1} - mu_i;
    /// non-positive when interlacing holds strictly.
    double max_violation = 0.0;
    double tolerance = 0.0;
};

/// Checks lambda_i >= mu_i >= lambda_{i+1} within 1e-9 * (1 + |lambda_1|).
InterlacingResult interlacing_check(const Spectrum& parent, const Spectrum& child);

/// Gram matrices before and after replacing one sample, with E = perturbed - original.
struct PerturbationPair {
    GramMatrix original;
    GramMatrix perturbed;
    Eigen::MatrixXd e;
    double spectral_norm_e = 0.0;
    Index replaced_index = 0;
};

PerturbationPair perturb_replace(const SampleSet& samples, const KernelSpec& spec, Index index,
                                 const Eigen::VectorXd& replacement, GramScaling scaling);

/// Same as above, reusing an already computed Gram matrix of `samples`.
PerturbationPair perturb_replace(const SampleSet& samples, const GramMatrix& original, Index index,
                                 const Eigen::VectorXd& replacement);

/// Spectral norm of a symmetric matrix (max |eigenvalue|).
double spectral_norm(const Eigen::MatrixXd& symmetric);

/// Spectral norm of a symmetric E supported on row/column `index` only.
/// E restricted to span{e_index, off-diagonal column} is [[d, a], [a, 0]].
double replace_one_spectral_norm(const Eigen::MatrixXd& e, Index index);

struct FirstOrderEigvec {
    Eigen::VectorXd vector;
    /// |E| < half the distance from lambda_i to the rest of the spectrum.
    bool valid = false;
    double perturbation_norm = 0.0;
    double half_min_gap = 0.0;
};

/// First-order prediction of eigenvector `index` of K + E from the spectrum of K:
/// u_i + sum_{j != i} (u_j^T E u_i) / (lambda_i - lambda_j) u_j.
/// Throws DegenerateError when lambda_i is not separated from the rest.
/// `e_norm` skips the dense norm computation when |E| is already known.
FirstOrderEigvec eigvec_first_order(const Spectrum& base, const Eigen::MatrixXd& e, Index index,
                                    std::optional<double> e_norm = std::nullopt);

/// |u_i(K + tE) - first_order(K, tE)|, with the exact eigenvector sign-aligned to u_i(K).
double eigvec_residual(const Eigen::MatrixXd& k, const Spectrum& base, const Eigen::MatrixXd& e,
                       Index index, double t);

}  // namespace kconc
