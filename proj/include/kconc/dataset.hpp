#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace kconc {

using Index = Eigen::Index;

/// Where a sample came from: a file path, or a generator id plus seed.
struct Provenance {
    std::string source;
    std::optional<std::uint64_t> seed;
};

/// n samples in R^p, one per row. Entries are finite, n >= 2 and p >= 1.
class SampleSet {
public:
    SampleSet(Eigen::MatrixXd rows, Provenance provenance);

    const Eigen::MatrixXd& rows() const { return rows_; }
    Index n() const { return rows_.rows(); }
    Index p() const { return rows_.cols(); }
    const Provenance& provenance() const { return provenance_; }

    /// Copy with sample `index` replaced by `replacement`.
    SampleSet with_row(Index index, const Eigen::VectorXd& replacement) const;

private:
    Eigen::MatrixXd rows_;
    Provenance provenance_;
};

/// Numeric CSV contents: optional header names plus an n x c value matrix.
struct CsvTable {
    std::vector<std::string> header;
    Eigen::MatrixXd values;
};

/// Reads a comma- or whitespace-separated numeric table. Blank lines are
/// skipped; every other line must have the same number of finite values.
CsvTable read_csv_table(const std::filesystem::path& path, bool header = false);

SampleSet load_csv(const std::filesystem::path& path, bool header = false);

/// n draws from N(0, I_p). Deterministic for fixed (n, p, seed).
SampleSet gen_gaussian(Index n, Index p, std::uint64_t seed);

/// Second-moment statistics of a sample under the whitening model
/// x_i = Sigma^{1/2} y_i.
struct CovarianceStats {
    Eigen::MatrixXd sigma;
    Eigen::VectorXd eigs_sigma;   // descending
    double gap_1p = 0.0;          // lambda_1(Sigma) - lambda_p(Sigma)
    double whitened_radius = 0.0; // M = max_i |Sigma^{-1/2} (x_i - mean)|
    bool centered = false;
    Eigen::VectorXd mean;         // zero vector in uncentered mode
    Eigen::MatrixXd inv_sqrt;     // Sigma^{-1/2}

    double lambda_max() const { return eigs_sigma(0); }
    double lambda_min() const { return eigs_sigma(eigs_sigma.size() - 1); }

    /// |Sigma^{-1/2} (x - mean)|, e.g. to extend M over a replacement sample.
    double whitened_norm(const Eigen::VectorXd& x) const;
};

/// Relative singularity threshold on lambda_p(Sigma).
inline constexpr double kSingularTolerance = 1e-10;

/// Uncentered mode uses (1/n) X^T X; centered mode subtracts the sample mean
/// first (still divided by n). Throws DegenerateError when
/// lambda_p(Sigma) <= 1e-10 * lambda_1(Sigma).
CovarianceStats covariance_stats(const SampleSet& samples, bool centered = false);

}  // namespace kconc
