#include "kconc/spectral.hpp"

#include "kconc/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace kconc {

void canonicalize_sign(Eigen::Ref<Eigen::VectorXd> v)
{
    Index best = 0;
    for (Index k = 1; k < v.size(); ++k) {
        if (std::abs(v(k)) > std::abs(v(best))) {
            best = k;
        }
    }
    if (v.size() > 0 && v(best) < 0.0) {
        v = -v;
    }
}

Eigen::VectorXd align_sign(const Eigen::VectorXd& v, const Eigen::VectorXd& reference)
{
    return v.dot(reference) < 0.0 ? Eigen::VectorXd(-v) : v;
}

Spectrum eig_sym(const Eigen::MatrixXd& a, bool with_vectors)
{
    if (a.rows() != a.cols()) {
        throw ConfigError("eig_sym needs a square matrix");
    }
    if (!a.allFinite()) {
        throw DataError("eig_sym input has non-finite entries");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        a, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "symmetric eigensolver did not converge (n = " << a.rows()
            << ", |A|_F = " << a.norm() << ", max |a_ij| = " << a.cwiseAbs().maxCoeff()
            << ", asymmetry = " << (a - a.transpose()).cwiseAbs().maxCoeff() << ")";
        throw DegenerateError(msg.str());
    }
    Spectrum s;
    s.eigenvalues = solver.eigenvalues().reverse();
    if (with_vectors) {
        s.eigenvectors = solver.eigenvectors().rowwise().reverse();
        for (Index c = 0; c < s.eigenvectors.cols(); ++c) {
            canonicalize_sign(s.eigenvectors.col(c));
        }
    }
    return s;
}

Spectrum eig_sym(const GramMatrix& g, bool with_vectors)
{
    return eig_sym(g.entries, with_vectors);
}

double gap_tolerance(const Spectrum& s)
{
    return 1e-10 * (1.0 + std::abs(s.eigenvalues(0)));
}

GapProfile gaps(const Spectrum& s, Index index)
{
    const Index n = s.dim();
    if (index < 0 || index >= n) {
        throw ConfigError("eigenvalue index " + std::to_string(index + 1) + " outside 1.." +
                          std::to_string(n));
    }
    GapProfile g;
    g.index = index;
    g.tolerance = gap_tolerance(s);
    g.min_gap = std::numeric_limits<double>::infinity();
    const double li = s.eigenvalues(index);
    for (Index j = 0; j < n; ++j) {
        if (j == index) {
            continue;
        }
        const double d = std::abs(li - s.eigenvalues(j));
        g.min_gap = std::min(g.min_gap, d);
        if (d < g.tolerance) {
            g.degenerate = true;
        }
        g.resolvent_sum += 1.0 / d;
        g.inv_gap_sq_sum += 1.0 / (d * d);
    }
    if (g.degenerate) {
        g.resolvent_sum = std::numeric_limits<double>::infinity();
        g.inv_gap_sq_sum = std::numeric_limits<double>::infinity();
    }
    if (index + 1 < n) {
        g.gap_next = li - s.eigenvalues(index + 1);
        g.degenerate_next = *g.gap_next < g.tolerance;
    }
    return g;
}

double gap_next(const Spectrum& s, Index index)
{
    if (index < 0 || index + 1 >= s.dim()) {
        throw ConfigError("gap lambda_i - lambda_{i+1} needs i <= n - 1 (got i = " +
                          std::to_string(index + 1) + ", n = " + std::to_string(s.dim()) + ")");
    }
    return s.eigenvalues(index) - s.eigenvalues(index + 1);
}

double range_gap(const Spectrum& s, Index a, Index b)
{
    if (a < 0 || b < 0 || a >= s.dim() || b >= s.dim()) {
        throw ConfigError("eigenvalue range index out of bounds");
    }
    return s.eigenvalues(a) - s.eigenvalues(b);
}

Eigen::MatrixXd principal_submatrix(const Eigen::MatrixXd& a, Index drop)
{
    const Index n = a.rows();
    if (n < 2 || a.cols() != n) {
        throw ConfigError("principal submatrix needs a square matrix with n >= 2");
    }
    if (drop < 0 || drop >= n) {
        throw ConfigError("drop index " + std::to_string(drop + 1) + " outside 1.." + std::to_string(n));
    }
    Eigen::MatrixXd b(n - 1, n - 1);
    const Index tail = n - drop - 1;
    b.topLeftCorner(drop, drop) = a.topLeftCorner(drop, drop);
    b.topRightCorner(drop, tail) = a.topRightCorner(drop, tail);
    b.bottomLeftCorner(tail, drop) = a.bottomLeftCorner(tail, drop);
    b.bottomRightCorner(tail, tail) = a.bottomRightCorner(tail, tail);
    return b;
}

GramMatrix principal_submatrix(const GramMatrix& g, Index drop)
{
    return GramMatrix{principal_submatrix(g.entries, drop), g.scaling, g.kernel};
}

InterlacingResult interlacing_check(const Spectrum& parent, const Spectrum& child)
{
    if (child.dim() + 1 != parent.dim()) {
        throw ConfigError("interlacing check needs child dimension = parent dimension - 1");
    }
    InterlacingResult r;
    r.tolerance = 1e-9 * (1.0 + std::abs(parent.eigenvalues(0)));
    r.max_violation = -std::numeric_limits<double>::infinity();
    const auto& lam = parent.eigenvalues;
    const auto& mu = child.eigenvalues;
    for (Index i = 0; i < child.dim(); ++i) {
        r.max_violation = std::max({r.max_violation, mu(i) - lam(i), lam(i + 1) - mu(i)});
    }
    r.holds = r.max_violation <= r.tolerance;
    return r;
}

double spectral_norm(const Eigen::MatrixXd& symmetric)
{
    if (symmetric.size() == 0) {
        return 0.0;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw DegenerateError("spectral norm: eigensolver did not converge");
    }
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double replace_one_spectral_norm(const Eigen::MatrixXd& e, Index index)
{
    if (e.rows() < 4) {
        return spectral_norm(e);
    }
    const double d = e(index, index);
    Eigen::VectorXd off = e.col(index);
    off(index) = 0.0;
    const double a = off.norm();
    return 0.5 * (std::abs(d) + std::sqrt(d * d + 4.0 * a * a));
}

PerturbationPair perturb_replace(const SampleSet& samples, const GramMatrix& original, Index index,
                                 const Eigen::VectorXd& replacement)
{
    const Index n = samples.n();
    if (original.n() != n) {
        throw ConfigError("Gram matrix does not match the sample set");
    }
    if (index < 0 || index >= n) {
        throw ConfigError("replacement index " + std::to_string(index + 1) + " outside 1.." +
                          std::to_string(n));
    }
    if (replacement.size() != samples.p()) {
        throw ConfigError("replacement has dimension " + std::to_string(replacement.size()) +
                          ", samples have p = " + std::to_string(samples.p()));
    }
    const double divisor =
        original.scaling == GramScaling::one_over_n ? static_cast<double>(n) : 1.0;
    PerturbationPair pair{original, original, Eigen::MatrixXd::Zero(n, n), 0.0, index};
    const auto& x = samples.rows();
    for (Index j = 0; j < n; ++j) {
        const double v = j == index ? original.kernel(replacement, replacement)
                                    : original.kernel(replacement, x.row(j).transpose());
        if (!std::isfinite(v)) {
            throw DataError("non-finite kernel value at pair (" + std::to_string(index) + ", " +
                            std::to_string(j) + ")");
        }
        pair.perturbed.entries(index, j) = v / divisor;
        pair.perturbed.entries(j, index) = v / divisor;
    }
    pair.e.row(index) = pair.perturbed.entries.row(index) - original.entries.row(index);
    pair.e.col(index) = pair.e.row(index).transpose();
    pair.spectral_norm_e = replace_one_spectral_norm(pair.e, index);
    return pair;
}

PerturbationPair perturb_replace(const SampleSet& samples, const KernelSpec& spec, Index index,
                                 const Eigen::VectorXd& replacement, GramScaling scaling)
{
    return perturb_replace(samples, gram(samples, spec, scaling), index, replacement);
}

FirstOrderEigvec eigvec_first_order(const Spectrum& base, const Eigen::MatrixXd& e, Index index,
                                    std::optional<double> e_norm)
{
    if (!base.has_vectors()) {
        throw ConfigError("first-order expansion needs eigenvectors");
    }
    const Index n = base.dim();
    if (e.rows() != n || e.cols() != n) {
        throw ConfigError("perturbation dimension does not match the spectrum");
    }
    const GapProfile g = gaps(base, index);
    if (g.degenerate) {
        throw DegenerateError("eigenvalue " + std::to_string(index + 1) +
                              " is not separated from the rest of the spectrum; the expansion "
                              "requires |E| < half the distance to the other eigenvalues");
    }
    FirstOrderEigvec out;
    out.perturbation_norm = e_norm ? *e_norm : spectral_norm(e);
    out.half_min_gap = 0.5 * g.min_gap;
    out.valid = out.perturbation_norm < out.half_min_gap;

    const Eigen::VectorXd& ui = base.eigenvectors.col(index);
    const Eigen::VectorXd coupling = base.eigenvectors.transpose() * (e * ui);
    const double li = base.eigenvalues(index);
    out.vector = ui;
    for (Index j = 0; j < n; ++j) {
        if (j != index) {
            out.vector += (coupling(j) / (li - base.eigenvalues(j))) * base.eigenvectors.col(j);
        }
    }
    out.vector = align_sign(out.vector, ui);
    return out;
}

double eigvec_residual(const Eigen::MatrixXd& k, const Spectrum& base, const Eigen::MatrixXd& e,
                       Index index, double t)
{
    const Eigen::MatrixXd scaled = t * e;
    const Spectrum exact = eig_sym(Eigen::MatrixXd(k + scaled));
    const Eigen::VectorXd u = align_sign(exact.eigenvectors.col(index), base.eigenvectors.col(index));
    return (u - eigvec_first_order(base, scaled, index).vector).norm();
}

}  // namespace kconc
