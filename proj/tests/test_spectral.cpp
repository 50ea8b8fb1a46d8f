#include "kconc/dataset.hpp"
#include "kconc/error.hpp"
#include "kconc/spectral.hpp"

#include "hp_oracle.hpp"

#include <gtest/gtest.h>

#include <random>

namespace kconc {
namespace {

using test::hp;

Spectrum spectrum_of(std::initializer_list<double> values)
{
    Spectrum s;
    s.eigenvalues = Eigen::Map<const Eigen::VectorXd>(values.begin(), static_cast<Index>(values.size()));
    return s;
}

Eigen::MatrixXd random_orthogonal(Index n, std::mt19937_64& rng)
{
    std::normal_distribution<double> nd;
    Eigen::MatrixXd a(n, n);
    for (Index i = 0; i < a.size(); ++i) {
        a(i) = nd(rng);
    }
    return Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
}

TEST(EigSym, DiagonalMatrixSortedDescending)
{
    const Spectrum s = eig_sym(Eigen::Vector3d(3, 1, 2).asDiagonal().toDenseMatrix());
    EXPECT_EQ(s.eigenvalues, Eigen::Vector3d(3, 2, 1));
    const Eigen::MatrixXd abs_vecs = s.eigenvectors.cwiseAbs();
    Eigen::MatrixXd perm(3, 3);
    perm << 1, 0, 0, 0, 0, 1, 0, 1, 0;
    EXPECT_LT((abs_vecs - perm).norm(), 1e-14);
}

TEST(EigSym, TwoByTwoHandDecomposition)
{
    Eigen::Matrix2d a;
    a << 2, 1, 1, 2;
    const Spectrum s = eig_sym(Eigen::MatrixXd(a));
    const double r = test::to_double(1 / boost::multiprecision::sqrt(hp(2)));
    EXPECT_NEAR(s.eigenvalues(0), 3.0, 1e-14);
    EXPECT_NEAR(s.eigenvalues(1), 1.0, 1e-14);
    EXPECT_LT((s.eigenvectors.col(0) - Eigen::Vector2d(r, r)).norm(), 1e-14);
    // the largest-magnitude entry is made positive; ties go to the first index
    EXPECT_LT((s.eigenvectors.col(1) - Eigen::Vector2d(r, -r)).norm(), 1e-14);
}

TEST(EigSym, ConstructedSpectrumRoundTrip)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const Index n = 4 + trial;
        Eigen::VectorXd lam(n);
        for (Index i = 0; i < n; ++i) {
            lam(i) = static_cast<double>(n + 1 - i);
        }
        const Eigen::MatrixXd q = random_orthogonal(n, rng);
        const Eigen::MatrixXd a = q * lam.asDiagonal() * q.transpose();
        const Spectrum s = eig_sym(Eigen::MatrixXd((a + a.transpose()) / 2));
        EXPECT_LT((s.eigenvalues - lam).cwiseAbs().maxCoeff(), 1e-9);
        for (Index i = 0; i < n; ++i) {
            EXPECT_NEAR(std::abs(s.eigenvectors.col(i).dot(q.col(i))), 1.0, 1e-9);
        }
    }
}

TEST(EigSym, RejectsNonSquareAndNonFinite)
{
    EXPECT_THROW(eig_sym(Eigen::MatrixXd(2, 3)), ConfigError);
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
    a(0, 1) = a(1, 0) = std::nan("");
    EXPECT_THROW(eig_sym(a), DataError);
}

TEST(Gaps, ResolventAndNextGap)
{
    const GapProfile g = gaps(spectrum_of({3, 2, 1}), 0);
    ASSERT_TRUE(g.gap_next.has_value());
    EXPECT_DOUBLE_EQ(*g.gap_next, 1.0);
    EXPECT_TRUE(test::rel_close(g.resolvent_sum, hp(3) / 2));
    EXPECT_DOUBLE_EQ(g.min_gap, 1.0);
    EXPECT_FALSE(g.degenerate);
}

TEST(Gaps, InverseSquaredGapSum)
{
    const GapProfile g = gaps(spectrum_of({4, 2, 1}), 1);
    EXPECT_TRUE(test::rel_close(g.inv_gap_sq_sum, hp(5) / 4));
}

TEST(Gaps, EqualEigenvaluesAreDegenerate)
{
    const GapProfile g = gaps(spectrum_of({1, 1}), 0);
    EXPECT_TRUE(g.degenerate);
    EXPECT_TRUE(g.degenerate_next);
    EXPECT_TRUE(std::isinf(g.resolvent_sum));
    EXPECT_FALSE(gaps(spectrum_of({1, 1}), 1).gap_next.has_value());
    EXPECT_THROW(gap_next(spectrum_of({1, 1}), 1), ConfigError);
}

TEST(PrincipalSubmatrix, Deletion)
{
    Eigen::Matrix3d a;
    a << 2, 1, 0, 1, 2, 1, 0, 1, 2;
    Eigen::Matrix2d expected;
    expected << 2, 1, 1, 2;
    EXPECT_EQ(principal_submatrix(Eigen::MatrixXd(a), 2), Eigen::MatrixXd(expected));
    for (Index d = 0; d < 3; ++d) {
        EXPECT_EQ(principal_submatrix(Eigen::MatrixXd::Identity(3, 3), d), Eigen::MatrixXd::Identity(2, 2));
    }
    Eigen::Matrix2d b;
    b << 5, 1, 1, 7;
    EXPECT_EQ(principal_submatrix(Eigen::MatrixXd(b), 1), Eigen::MatrixXd::Constant(1, 1, 5));
}

TEST(Interlacing, HandExamples)
{
    EXPECT_TRUE(interlacing_check(spectrum_of({3, 2, 1}), spectrum_of({2.5, 1.5})).holds);
    const InterlacingResult bad = interlacing_check(spectrum_of({3, 2, 1}), spectrum_of({3.5, 1}));
    EXPECT_FALSE(bad.holds);
    EXPECT_DOUBLE_EQ(bad.max_violation, 0.5);
}

TEST(Interlacing, RandomSymmetricMatricesAllDropIndices)
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> size(3, 40);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = size(rng);
        Eigen::MatrixXd a(n, n);
        for (Index i = 0; i < a.size(); ++i) {
            a(i) = nd(rng);
        }
        a = (a + a.transpose()).eval();
        const Spectrum parent = eig_sym(a, false);
        for (Index d = 0; d < n; ++d) {
            EXPECT_TRUE(interlacing_check(parent, eig_sym(principal_submatrix(a, d), false)).holds);
        }
    }
}

TEST(PerturbReplace, IdentityReplacementGivesZero)
{
    const SampleSet s = gen_gaussian(20, 3, 2);
    const auto pair = perturb_replace(s, KernelSpec::gaussian(1.0), 4, s.rows().row(4).transpose(),
                                      GramScaling::one_over_n);
    EXPECT_EQ(pair.e.norm(), 0.0);
    EXPECT_EQ(pair.spectral_norm_e, 0.0);
}

TEST(PerturbReplace, TwoPointLinearExample)
{
    const SampleSet s(Eigen::MatrixXd::Identity(2, 2), {});
    const auto raw = perturb_replace(s, KernelSpec::linear(), 1, Eigen::Vector2d(1, 0), GramScaling::raw);
    Eigen::Matrix2d expected;
    expected << 0, 1, 1, 0;
    EXPECT_EQ(raw.e, Eigen::MatrixXd(expected));
    EXPECT_DOUBLE_EQ(raw.spectral_norm_e, 1.0);
    const auto scaled =
        perturb_replace(s, KernelSpec::linear(), 1, Eigen::Vector2d(1, 0), GramScaling::one_over_n);
    EXPECT_DOUBLE_EQ(scaled.e(0, 1), 0.5);
    EXPECT_DOUBLE_EQ(scaled.e(1, 1), 0.0);
    EXPECT_DOUBLE_EQ(scaled.spectral_norm_e, 0.5);
}

TEST(PerturbReplace, NormMatchesDenseEigendecomposition)
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const SampleSet draws = gen_gaussian(31, 4, 100 + trial);
        const SampleSet s(draws.rows().topRows(30), {});
        const Index idx = static_cast<Index>(rng() % 30);
        const auto pair = perturb_replace(s, KernelSpec::gaussian(1.0), idx, draws.rows().row(30).transpose(),
                                          GramScaling::one_over_n);
        const GramMatrix fresh = gram(s.with_row(idx, draws.rows().row(30).transpose()), KernelSpec::gaussian(1.0),
                                      GramScaling::one_over_n);
        EXPECT_LT((fresh.entries - pair.perturbed.entries).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_NEAR(pair.spectral_norm_e, spectral_norm(pair.e), 1e-10);
    }
}

TEST(FirstOrder, ZeroPerturbationReturnsEigenvector)
{
    const Spectrum base = eig_sym(Eigen::MatrixXd(Eigen::Vector3d(3, 2, 1).asDiagonal()));
    const auto r = eigvec_first_order(base, Eigen::MatrixXd::Zero(3, 3), 1);
    EXPECT_LT((r.vector - base.eigenvectors.col(1)).norm(), 1e-15);
    EXPECT_TRUE(r.valid);
}

TEST(FirstOrder, DiagonalTwoByTwoExpansion)
{
    // K + E with K = diag(2, 1), E = [[0, d], [d, 0]]: the top eigenvector tilts towards +e2.
    const double d = 1e-3;
    const Spectrum base = eig_sym(Eigen::MatrixXd(Eigen::Vector2d(2, 1).asDiagonal()));
    Eigen::Matrix2d e;
    e << 0, d, d, 0;
    const auto r = eigvec_first_order(base, e, 0);
    EXPECT_NEAR(r.vector(0), 1.0, 1e-15);
    EXPECT_NEAR(r.vector(1), d, 1e-15);
    const Spectrum exact = eig_sym(Eigen::MatrixXd(Eigen::Vector2d(2, 1).asDiagonal().toDenseMatrix() + e));
    EXPECT_LT((align_sign(exact.eigenvectors.col(0), base.eigenvectors.col(0)) - r.vector).norm(), 2 * d * d);
}

TEST(FirstOrder, ResidualScalesQuadratically)
{
    std::mt19937_64 rng(31);
    std::normal_distribution<double> nd;
    int passes = 0;
    const int cases = 40;
    for (int c = 0; c < cases; ++c) {
        const Index n = 8;
        Eigen::VectorXd lam(n);
        for (Index i = 0; i < n; ++i) {
            lam(i) = static_cast<double>(n - i);
        }
        const Eigen::MatrixXd q = random_orthogonal(n, rng);
        Eigen::MatrixXd k = q * lam.asDiagonal() * q.transpose();
        k = ((k + k.transpose()) / 2).eval();
        Eigen::MatrixXd e(n, n);
        for (Index i = 0; i < e.size(); ++i) {
            e(i) = nd(rng);
        }
        e = ((e + e.transpose()) / 2).eval();
        e /= spectral_norm(e);
        const Spectrum base = eig_sym(k);
        const double t = 0.05;
        const double full = eigvec_residual(k, base, e, 2, t);
        const double half = eigvec_residual(k, base, e, 2, t / 2);
        passes += half <= 0.35 * full ? 1 : 0;
    }
    EXPECT_GE(passes, 38);
}

TEST(FirstOrder, RepeatedEigenvalueIsDegenerate)
{
    const Spectrum base = eig_sym(Eigen::MatrixXd::Identity(3, 3));
    EXPECT_THROW(eigvec_first_order(base, Eigen::MatrixXd::Zero(3, 3), 0), DegenerateError);
}

TEST(AlignSign, FlipsToReference)
{
    EXPECT_EQ(align_sign(Eigen::Vector2d(-1, 0), Eigen::Vector2d(1, 1)), Eigen::VectorXd(Eigen::Vector2d(1, 0)));
    EXPECT_EQ(align_sign(Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 1)), Eigen::VectorXd(Eigen::Vector2d(1, 0)));
}

}  // namespace
}  // namespace kconc
