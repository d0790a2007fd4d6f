#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "toda/errors.hpp"
#include "toda/sampling.hpp"
#include "toda/tnn.hpp"

using namespace toda;

namespace {

Matrix from_dense(const oracle::Dense& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) m(i, j) = d[i][j];
    return m;
}

}  // namespace

TEST(Exhaustive, Examples) {
    EXPECT_TRUE(is_tnn_exhaustive(Matrix{{2, 1}, {1, 2}}).is_tnn);
    EXPECT_TRUE(is_tnn_exhaustive(Matrix{{1, 1}, {1, 1}}).is_tnn);

    const TnnReport r = is_tnn_exhaustive(Matrix{{0, 1}, {1, 0}});
    EXPECT_FALSE(r.is_tnn);
    EXPECT_EQ(r.method, TnnMethod::exhaustive);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->rows, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(r.witness->cols, (std::vector<std::size_t>{0, 1}));
    EXPECT_DOUBLE_EQ(r.witness->value, -1.0);
}

TEST(Exhaustive, WitnessIsFirstNegativeInEnumerationOrder) {
    // Entry (2,3) is the first negative 1x1 minor in row-major order.
    const TnnReport r = is_tnn_exhaustive(Matrix{{1, 1, 0}, {1, 1, -1}, {-2, 1, 1}});
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->rows, (std::vector<std::size_t>{1}));
    EXPECT_EQ(r.witness->cols, (std::vector<std::size_t>{2}));
}

TEST(Exhaustive, ToleranceAndSizeGate) {
    EXPECT_FALSE(is_tnn_exhaustive(Matrix{{1, 1}, {1, 1 - 1e-13}}).is_tnn);
    EXPECT_TRUE(is_tnn_exhaustive(Matrix{{1, 1}, {1, 1 - 1e-13}}, 1e-12).is_tnn);
    EXPECT_THROW(is_tnn_exhaustive(Matrix(9, 9, 1.0)), TooLarge);
}

TEST(Exhaustive, AgreesWithBruteForceOracle) {
    Rng rng = sample_rng(4, 0, 0);
    std::uniform_real_distribution<double> u(-0.3, 2.0);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 2 + trial % 3;
        oracle::Dense d(n, std::vector<double>(n));
        for (auto& row : d)
            for (double& v : row) v = u(rng);
        EXPECT_EQ(is_tnn_exhaustive(from_dense(d)).is_tnn, oracle::min_minor(d) >= 0.0);
    }
}

TEST(Tridiagonal, Examples) {
    const TnnReport r1 = is_tnn_tridiagonal(LaxMatrix({2, 2}, {1}));
    EXPECT_TRUE(r1.is_tnn);
    EXPECT_EQ(r1.method, TnnMethod::tridiagonal_criterion);

    const TnnReport r2 = is_tnn_tridiagonal(LaxMatrix({1, 1}, {2}));
    EXPECT_FALSE(r2.is_tnn);
    ASSERT_TRUE(r2.witness.has_value());
    EXPECT_DOUBLE_EQ(r2.witness->value, -1.0);
    EXPECT_EQ(r2.witness->rows, (std::vector<std::size_t>{0, 1}));

    EXPECT_TRUE(is_tnn_tridiagonal(LaxMatrix({2, 2, 2}, {1, 1})).is_tnn);
}

TEST(Tridiagonal, RejectsNonTridiagonal) {
    EXPECT_THROW(is_tnn_tridiagonal(Matrix{{1, 0, 1}, {0, 1, 0}, {0, 0, 1}}), NotTridiagonal);
}

TEST(Tridiagonal, NegativeEntryWitness) {
    const TnnReport r = is_tnn_tridiagonal(LaxMatrix({2, 2}, {-1}));
    EXPECT_FALSE(r.is_tnn);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->rows, (std::vector<std::size_t>{1}));
    EXPECT_EQ(r.witness->cols, (std::vector<std::size_t>{0}));
}

TEST(TotallyPositive, Examples) {
    EXPECT_TRUE(is_totally_positive(Matrix{{5, 4}, {4, 5}}));
    EXPECT_FALSE(is_totally_positive(Matrix{{1, 1}, {1, 1}}));
    EXPECT_TRUE(is_totally_positive(Matrix{{2, 1}, {1, 2}}));
    EXPECT_THROW(is_totally_positive(Matrix(9, 9, 1.0)), TooLarge);
}

TEST(Irreducible, Examples) {
    // Every minor of [[2,1],[1,2]] is positive, so the first power already works.
    const IrreducibilityResult r = is_irreducible_tnn(LaxMatrix({2, 2}, {1}));
    EXPECT_TRUE(r.irreducible);
    EXPECT_EQ(r.power, 1);
    EXPECT_EQ(r.k_max, 4);

    const IrreducibilityResult rank1 = is_irreducible_tnn(Matrix{{1, 1}, {1, 1}});
    EXPECT_FALSE(rank1.irreducible);
    EXPECT_FALSE(rank1.power.has_value());

    const IrreducibilityResult k1 = is_irreducible_tnn(LaxMatrix({2, 2}, {1}), 1);
    EXPECT_TRUE(k1.irreducible);
    EXPECT_EQ(k1.power, 1);

    EXPECT_THROW(is_irreducible_tnn(Matrix{{0, 1}, {1, 0}}), NotTnn);
}

TEST(Irreducible, TridiagonalNeedsHigherPower) {
    // A 3x3 tridiagonal matrix has zero corner entries, so L itself is never TP.
    const IrreducibilityResult r = is_irreducible_tnn(LaxMatrix({2, 2, 2}, {1, 1}));
    EXPECT_TRUE(r.irreducible);
    EXPECT_EQ(r.power, 2);
}

TEST(Interlacing, SpectraExamples) {
    const InterlacingData d3 = interlacing_spectra(LaxMatrix({2, 2, 2}, {1, 1}));
    EXPECT_NEAR(d3.lambdas[0], 2 - std::sqrt(2.0), 1e-14);
    ASSERT_EQ(d3.mus.size(), 2u);
    EXPECT_NEAR(d3.mus[0], 1.0, 1e-14);
    EXPECT_NEAR(d3.mus[1], 3.0, 1e-14);
    EXPECT_NEAR(d3.mus_prime[0], 1.0, 1e-14);
    EXPECT_NEAR(d3.mus_prime[1], 3.0, 1e-14);
    EXPECT_TRUE(check_interlacing(d3));

    const InterlacingData d2 = interlacing_spectra(LaxMatrix({2, 2}, {1}));
    EXPECT_EQ(d2.mus, std::vector<double>{2.0});
    EXPECT_EQ(d2.mus_prime, std::vector<double>{2.0});

    const InterlacingData swap = interlacing_spectra(LaxMatrix({0, 0}, {1}));
    EXPECT_NEAR(swap.lambdas[0], -1.0, 1e-14);
    EXPECT_EQ(swap.mus, std::vector<double>{0.0});
    EXPECT_FALSE(check_interlacing(swap));
}

TEST(Interlacing, CheckExamples) {
    EXPECT_TRUE(strictly_interlaces({1, 3}, {2}));
    EXPECT_FALSE(strictly_interlaces({-1, 1}, {0}));
    EXPECT_TRUE(strictly_interlaces({0.586, 2, 3.414}, {1, 3}));
    EXPECT_FALSE(strictly_interlaces({1, 3}, {3}));
    EXPECT_FALSE(strictly_interlaces({1, 3}, {}));
}

TEST(Interlacing, Method) {
    EXPECT_EQ(is_tnn_interlacing(LaxMatrix({2, 2}, {1})).method, TnnMethod::interlacing);
    EXPECT_FALSE(is_tnn_interlacing(LaxMatrix({2, 2}, {-1})).is_tnn);
}

TEST(Properties, TripleEquivalenceOnPositiveOffdiagonals) {
    int tnn_count = 0;
    for (std::uint64_t i = 0; i < 2000; ++i) {
        Rng rng = sample_rng(17, 0, i);
        const LaxMatrix l = sample_positive_offdiagonal(rng, 2 + i % 5);
        const bool ex = is_tnn_exhaustive(l.dense()).is_tnn;
        const bool tri = is_tnn_tridiagonal(l).is_tnn;
        const bool inter = is_tnn_interlacing(l).is_tnn;
        EXPECT_EQ(ex, tri) << "sample " << i;
        EXPECT_EQ(ex, inter) << "sample " << i;
        tnn_count += ex;
    }
    // The generator must exercise both outcomes.
    EXPECT_GT(tnn_count, 200);
    EXPECT_LT(tnn_count, 1800);
}

TEST(Properties, SylvesterConsistency) {
    // det L >= 0, trailing block TNN and nonnegative off-diagonals imply TNN.
    for (std::uint64_t i = 0; i < 500; ++i) {
        Rng rng = sample_rng(23, 0, i);
        const LaxMatrix l = sample_positive_offdiagonal(rng, 2 + i % 5);
        const std::size_t n = l.size();
        const std::vector<double> a(l.a().begin() + 1, l.a().end());
        const std::vector<double> b(l.b().begin() + 1, l.b().end());
        const bool trailing = (n == 2) ? a[0] >= 0 : is_tnn_tridiagonal(LaxMatrix(a, b)).is_tnn;
        if (determinant(l.dense()) >= 0 && trailing) EXPECT_TRUE(is_tnn_tridiagonal(l).is_tnn) << "sample " << i;
    }
}

TEST(Properties, TotallyPositiveImpliesTnn) {
    for (std::uint64_t i = 0; i < 300; ++i) {
        Rng rng = sample_rng(29, 0, i);
        std::uniform_real_distribution<double> u(0.1, 2.0);
        const std::size_t n = 2 + i % 3;
        Matrix m(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) m(r, c) = u(rng);
        if (is_totally_positive(m)) EXPECT_TRUE(is_tnn_exhaustive(m).is_tnn);
    }
}

TEST(Properties, GantmacherKrein) {
    int irreducible = 0;
    for (std::uint64_t i = 0; i < 300; ++i) {
        Rng rng = sample_rng(31, 0, i);
        const LaxMatrix l = sample_tnn_lax(rng, 2 + i % 5);
        const IrreducibilityResult r = is_irreducible_tnn(l);
        if (!r.irreducible) continue;
        ++irreducible;
        const Spectrum s = spectrum(l);
        EXPECT_GT(s.min(), 0.0);
    }
    EXPECT_EQ(irreducible, 300);
}
