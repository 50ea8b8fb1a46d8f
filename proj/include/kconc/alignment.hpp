#pragma once

#include "kconc/kernel.hpp"
#include "kconc/spectral.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace kconc {

/// Binary targets in {-1, +1}.
class LabelVector {
public:
    explicit LabelVector(std::vector<int> labels);

    /// Accepts exact +-1 values only.
    static LabelVector from_values(const Eigen::VectorXd& values);

    Index size() const { return static_cast<Index>(labels_.size()); }
    const std::vector<int>& labels() const { return labels_; }
    Eigen::VectorXd as_vector() const;

private:
    std::vector<int> labels_;
};

/// One-column CSV of +-1 labels.
LabelVector load_labels(const std::filesystem::path& path, bool header = false);

/// A(K) = y^T K y / (n |K|_F), in [-1, 1].
double kta(const Eigen::MatrixXd& k, const LabelVector& y);
double kta(const GramMatrix& g, const LabelVector& y);

/// How row/column s is removed when forming K^s: deleted (n-1 x n-1), or
/// overwritten with zeros (n x n, one extra zero eigenvalue).
enum class ThetaMode { drop, zero };

std::string to_string(ThetaMode mode);
ThetaMode parse_theta_mode(const std::string& text);

/// theta = 1 - max_s min_{i <= n-1} lambda_i(K^s) / lambda_i(K). Needs n >= 3 and
/// lambda_1..lambda_{n-1} of K above the gap tolerance.
double theta(const Eigen::MatrixXd& k, ThetaMode mode = ThetaMode::drop, unsigned workers = 1);

/// C(theta) = |A| / theta * (m - (m - 1) theta + (2n - 1) / |K|_F).
double c_theta(double alignment, double theta, double m, Index n, double frob);

/// 2 exp(-2 eps^2 (n - 1)^2 / (n C(theta)^2)).
double kta_bound_jl(Index n, double c_theta_value, double eps);

/// Per-replacement alignment change bound
/// D = |A| |1/(n-1) - |K|_F / L| + (2 + 1/(n-1)) / L.
double alignment_deviation(double alignment, Index n, double frob_over_l, double l);

/// 2 exp(-2 eps^2 / D), the form with D entering unsquared.
double kta_bound_new(double d, double eps);

/// 2 exp(-2 eps^2 / (n D^2)), the form a bounded-difference argument gives.
double kta_bound_new_bdiff(Index n, double d, double eps);

struct AlignmentEntry {
    double epsilon = 0.0;
    std::optional<double> jl;
    // absent when L vanishes
    std::optional<double> new_printed;
    std::optional<double> new_bdiff;
    std::optional<double> new_printed_approx;
    std::optional<double> new_bdiff_approx;
};

struct AlignmentReport {
    Index n = 0;
    double a_kn = 0.0;
    double l = 0.0;            // sqrt(sum_{i=2}^{n-1} lambda_i^2)
    double frob = 0.0;
    double ratio = 0.0;        // |K|_F / L
    double ratio_approx = 0.0; // lambda_1 / lambda_2
    std::optional<double> theta;
    std::optional<double> c_theta;
    std::string theta_note;
    double m = 0.0;
    std::string l_note;
    std::optional<double> d_exact;
    std::optional<double> d_approx;
    Spectrum spectrum;
    std::vector<AlignmentEntry> entries;
};

/// A failing theta estimate is recorded in theta_note and the C(theta) bound
/// is left out; a vanishing L is recorded in l_note and the D-based bounds are
/// left out.
AlignmentReport alignment_report(const Eigen::MatrixXd& k, const LabelVector& y,
                                 std::span<const double> epsilons,
                                 ThetaMode mode = ThetaMode::drop, unsigned workers = 1);

/// L = sqrt(sum_{i=2}^{n-1} lambda_i^2) for a descending spectrum.
double middle_eigen_norm(const Spectrum& s);

}  // namespace kconc
