#include "kconc/alignment.hpp"

#include "kconc/bounds.hpp"
#include "kconc/dataset.hpp"
#include "kconc/error.hpp"
#include "kconc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace kconc {

LabelVector::LabelVector(std::vector<int> labels) : labels_(std::move(labels))
{
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] != 1 && labels_[i] != -1) {
            throw DataError("label " + std::to_string(i + 1) + " is " + std::to_string(labels_[i]) +
                            ", expected -1 or +1");
        }
    }
}

LabelVector LabelVector::from_values(const Eigen::VectorXd& values)
{
    std::vector<int> labels(values.size());
    for (Index i = 0; i < values.size(); ++i) {
        if (values(i) == 1.0) {
            labels[i] = 1;
        } else if (values(i) == -1.0) {
            labels[i] = -1;
        } else {
            std::ostringstream msg;
            msg << "label " << i + 1 << " is " << values(i) << ", expected -1 or +1";
            throw DataError(msg.str());
        }
    }
    return LabelVector(std::move(labels));
}

Eigen::VectorXd LabelVector::as_vector() const
{
    Eigen::VectorXd y(size());
    for (Index i = 0; i < size(); ++i) {
        y(i) = labels_[i];
    }
    return y;
}

LabelVector load_labels(const std::filesystem::path& path, bool header)
{
    const CsvTable table = read_csv_table(path, header);
    if (table.values.rows() == 0) {
        throw DataError("label file '" + path.string() + "' is empty");
    }
    if (table.values.cols() != 1) {
        throw DataError("label file '" + path.string() + "' must have exactly one column");
    }
    return LabelVector::from_values(table.values.col(0));
}

double kta(const Eigen::MatrixXd& k, const LabelVector& y)
{
    if (k.rows() != y.size() || k.cols() != y.size()) {
        throw ConfigError("label count " + std::to_string(y.size()) + " does not match the " +
                          std::to_string(k.rows()) + "x" + std::to_string(k.cols()) + " kernel matrix");
    }
    const double frob = k.norm();
    if (!(frob > 0.0)) {
        throw DegenerateError("kernel alignment undefined for the zero matrix");
    }
    const Eigen::VectorXd v = y.as_vector();
    return v.dot(k * v) / (static_cast<double>(y.size()) * frob);
}

double kta(const GramMatrix& g, const LabelVector& y)
{
    return kta(g.entries, y);
}

std::string to_string(ThetaMode mode)
{
    return mode == ThetaMode::drop ? "drop" : "zero";
}

ThetaMode parse_theta_mode(const std::string& text)
{
    if (text == "drop") {
        return ThetaMode::drop;
    }
    if (text == "zero") {
        return ThetaMode::zero;
    }
    throw ConfigError("unknown theta mode '" + text + "' (expected drop or zero)");
}

double theta(const Eigen::MatrixXd& k, ThetaMode mode, unsigned workers)
{
    const Index n = k.rows();
    if (n < 3 || k.cols() != n) {
        throw ConfigError("theta needs a square matrix with n >= 3");
    }
    const Spectrum full = eig_sym(k, false);
    const double tol = gap_tolerance(full);
    std::vector<Index> bad;
    for (Index i = 0; i + 1 < n; ++i) {
        if (!(full.eigenvalues(i) > tol)) {
            bad.push_back(i + 1);
        }
    }
    if (!bad.empty()) {
        std::ostringstream msg;
        msg << "theta undefined: eigenvalues near zero at i =";
        for (Index i : bad) {
            msg << ' ' << i;
        }
        throw DegenerateError(msg.str());
    }

    std::vector<double> per_drop(static_cast<std::size_t>(n));
    parallel_for(per_drop.size(), workers, [&](std::size_t s) {
        Eigen::MatrixXd sub;
        if (mode == ThetaMode::drop) {
            sub = principal_submatrix(k, static_cast<Index>(s));
        } else {
            sub = k;
            sub.row(static_cast<Index>(s)).setZero();
            sub.col(static_cast<Index>(s)).setZero();
        }
        const Spectrum child = eig_sym(sub, false);
        double worst = std::numeric_limits<double>::infinity();
        for (Index i = 0; i + 1 < n; ++i) {
            worst = std::min(worst, child.eigenvalues(i) / full.eigenvalues(i));
        }
        per_drop[s] = worst;
    });
    double best = -std::numeric_limits<double>::infinity();
    for (double v : per_drop) {
        best = std::max(best, v);
    }
    return std::clamp(1.0 - best, 0.0, 1.0);
}

double c_theta(double alignment, double theta_value, double m, Index n, double frob)
{
    if (!(theta_value > 0.0)) {
        throw DegenerateError("C(theta) undefined at theta = 0");
    }
    if (!(frob > 0.0)) {
        throw DegenerateError("C(theta) needs a nonzero kernel matrix");
    }
    return std::abs(alignment) / theta_value *
           (m - (m - 1.0) * theta_value + (2.0 * static_cast<double>(n) - 1.0) / frob);
}

double kta_bound_jl(Index n, double c_theta_value, double eps)
{
    if (n < 2) {
        throw ConfigError("alignment bound needs n >= 2");
    }
    const double nm1 = static_cast<double>(n - 1);
    return 2.0 * std::exp(-2.0 * eps * eps * nm1 * nm1 /
                          (static_cast<double>(n) * c_theta_value * c_theta_value));
}

double alignment_deviation(double alignment, Index n, double frob_over_l, double l)
{
    if (n < 2) {
        throw ConfigError("alignment bound needs n >= 2");
    }
    if (!(l > 0.0)) {
        throw DegenerateError("L = sqrt(sum_{i=2}^{n-1} lambda_i^2) vanishes");
    }
    const double inv = 1.0 / static_cast<double>(n - 1);
    return std::abs(alignment) * std::abs(inv - frob_over_l) + (2.0 + inv) / l;
}

double kta_bound_new(double d, double eps)
{
    return 2.0 * std::exp(-2.0 * eps * eps / d);
}

double kta_bound_new_bdiff(Index n, double d, double eps)
{
    return 2.0 * std::exp(-2.0 * eps * eps / (static_cast<double>(n) * d * d));
}

double middle_eigen_norm(const Spectrum& s)
{
    double sum = 0.0;
    for (Index i = 1; i + 1 < s.dim(); ++i) {
        sum += s.eigenvalues(i) * s.eigenvalues(i);
    }
    return std::sqrt(sum);
}

AlignmentReport alignment_report(const Eigen::MatrixXd& k, const LabelVector& y,
                                 std::span<const double> epsilons, ThetaMode mode, unsigned workers)
{
    validate_epsilons(epsilons);
    AlignmentReport r;
    r.n = k.rows();
    if (r.n < 3) {
        throw ConfigError("alignment report needs n >= 3");
    }
    r.a_kn = kta(k, y);
    r.spectrum = eig_sym(k, false);
    r.frob = k.norm();
    r.l = middle_eigen_norm(r.spectrum);
    const bool l_ok = r.l > 1e-12 * r.frob;
    if (l_ok) {
        r.ratio = r.frob / r.l;
    } else {
        r.ratio = std::numeric_limits<double>::infinity();
        r.l_note = "L = sqrt(sum_{i=2}^{n-1} lambda_i^2) vanishes; the D-based bounds need at least "
                   "one nonzero middle eigenvalue";
    }
    const double lambda_2 = r.spectrum.eigenvalues(1);
    r.ratio_approx = lambda_2 > 0.0 ? r.spectrum.eigenvalues(0) / lambda_2
                                    : std::numeric_limits<double>::infinity();
    r.m = static_cast<double>(r.n);
    try {
        r.theta = theta(k, mode, workers);
        r.c_theta = c_theta(r.a_kn, *r.theta, r.m, r.n, r.frob);
    } catch (const DegenerateError& e) {
        r.theta_note = e.what();
    }
    if (l_ok) {
        r.d_exact = alignment_deviation(r.a_kn, r.n, r.ratio, r.l);
        r.d_approx = alignment_deviation(r.a_kn, r.n, r.ratio_approx, r.l);
    }
    for (double eps : epsilons) {
        AlignmentEntry e;
        e.epsilon = eps;
        if (r.c_theta) {
            e.jl = kta_bound_jl(r.n, *r.c_theta, eps);
        }
        if (l_ok) {
            e.new_printed = kta_bound_new(*r.d_exact, eps);
            e.new_bdiff = kta_bound_new_bdiff(r.n, *r.d_exact, eps);
            e.new_printed_approx = kta_bound_new(*r.d_approx, eps);
            e.new_bdiff_approx = kta_bound_new_bdiff(r.n, *r.d_approx, eps);
        }
        r.entries.push_back(e);
    }
    return r;
}

}  // namespace kconc
