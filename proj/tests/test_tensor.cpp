#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "lrtc/error.hpp"
#include "lrtc/tensor.hpp"

namespace {

using lrtc::ObservationMask;
using lrtc::Shape;
using lrtc::Tensor3;

Tensor3 random_tensor(const Shape& dims, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> v(lrtc::element_count(dims));
    for (auto& x : v) x = n(rng);
    return Tensor3(dims, std::move(v));
}

// Independent oracle: enumerates the columns of the mode-k unfolding by
// looping over the remaining indices with the lower-numbered one fastest.
Eigen::MatrixXd unfold_by_loops(const Tensor3& x, int mode) {
    const auto& d = x.dims();
    const int k = mode - 1;
    const int a = k == 0 ? 1 : 0;
    const int b = k == 2 ? 1 : 2;
    Eigen::MatrixXd m(d[k], d[a] * d[b]);
    std::array<std::size_t, 3> i{};
    for (i[k] = 0; i[k] < d[k]; ++i[k]) {
        std::size_t col = 0;
        for (i[b] = 0; i[b] < d[b]; ++i[b])
            for (i[a] = 0; i[a] < d[a]; ++i[a]) m(i[k], col++) = x(i[0], i[1], i[2]);
    }
    return m;
}

TEST(Tensor3, RejectsWrongLengthAndNonFinite) {
    EXPECT_THROW(Tensor3({2, 2, 2}, std::vector<double>(7)), lrtc::DimensionError);
    std::vector<double> v(8, 1.0);
    v[3] = std::nan("");
    EXPECT_THROW(Tensor3({2, 2, 2}, v), lrtc::InvalidInputError);
}

TEST(Unfold, SingleElementEveryMode) {
    const Tensor3 x({1, 1, 1}, {4.5});
    for (int k = 1; k <= 3; ++k) {
        const auto u = lrtc::unfold(x, k);
        ASSERT_EQ(u.entries.rows(), 1);
        ASSERT_EQ(u.entries.cols(), 1);
        EXPECT_EQ(u.entries(0, 0), 4.5);
    }
}

TEST(Unfold, TwoByTwoByTwoModeOne) {
    // x[i1,i2,i3] = 4 i1 + 2 i2 + i3 (0-based), so the linear layout is 0..7.
    std::vector<double> v(8);
    for (std::size_t i = 0; i < 8; ++i) v[i] = double(i);
    const Tensor3 x({2, 2, 2}, v);
    const auto u = lrtc::unfold(x, 1).entries;
    // Column j = i2 + 2 i3: (0,0), (1,0), (0,1), (1,1).
    Eigen::MatrixXd expected(2, 4);
    expected << 0, 2, 1, 3,
                4, 6, 5, 7;
    EXPECT_EQ(u, expected);
}

TEST(Unfold, MatchesLoopOracleAllModes) {
    std::mt19937_64 rng(11);
    const Tensor3 x = random_tensor({3, 4, 5}, rng);
    for (int k = 1; k <= 3; ++k) EXPECT_EQ(lrtc::unfold(x, k).entries, unfold_by_loops(x, k)) << "mode " << k;
}

TEST(Unfold, ColumnIndexIsABijection) {
    const Shape d{3, 4, 5};
    for (int k = 1; k <= 3; ++k) {
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (std::size_t a = 0; a < d[0]; ++a)
            for (std::size_t b = 0; b < d[1]; ++b)
                for (std::size_t c = 0; c < d[2]; ++c) {
                    const std::size_t row = k == 1 ? a : k == 2 ? b : c;
                    const std::size_t col = lrtc::unfolding_column(d, k, a, b, c);
                    ASSERT_LT(col, lrtc::unfolding_cols(d, k));
                    seen.emplace(row, col);
                }
        EXPECT_EQ(seen.size(), lrtc::element_count(d));
    }
}

TEST(Unfold, RejectsBadMode) {
    const Tensor3 x({2, 2, 2});
    EXPECT_THROW(lrtc::unfold(x, 0), lrtc::ModeError);
    EXPECT_THROW(lrtc::unfold(x, 4), lrtc::ModeError);
}

TEST(Fold, RoundtripIsExact) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> ext(1, 9);
    for (int trial = 0; trial < 40; ++trial) {
        const Tensor3 x = random_tensor({ext(rng), ext(rng), ext(rng)}, rng);
        for (int k = 1; k <= 3; ++k) EXPECT_EQ(lrtc::fold(lrtc::unfold(x, k), x.dims()), x);
    }
}

TEST(Fold, SingleRowIsReshape) {
    Eigen::MatrixXd row(1, 6);
    row << 1, 2, 3, 4, 5, 6;
    const Tensor3 t = lrtc::fold(row, 1, {1, 2, 3});
    // Column j = i2 + 2 i3.
    EXPECT_EQ(t(0, 0, 0), 1);
    EXPECT_EQ(t(0, 1, 0), 2);
    EXPECT_EQ(t(0, 0, 1), 3);
    EXPECT_EQ(t(0, 1, 2), 6);
}

TEST(Fold, ZeroMatrixGivesZeroTensor) {
    const Tensor3 t = lrtc::fold(Eigen::MatrixXd::Zero(4, 6), 2, {2, 4, 3});
    EXPECT_EQ(t, Tensor3({2, 4, 3}));
}

TEST(Fold, ShapeMismatchThrows) {
    EXPECT_THROW(lrtc::fold(Eigen::MatrixXd::Zero(3, 6), 1, {2, 2, 3}), lrtc::DimensionError);
}

TEST(Projection, FullAndSingleSupport) {
    std::mt19937_64 rng(3);
    const Tensor3 x = random_tensor({2, 3, 4}, rng);
    EXPECT_EQ(lrtc::project_omega(x, ObservationMask(x.dims(), true)), x);
    EXPECT_EQ(lrtc::project_omega_complement(x, ObservationMask(x.dims(), true)), Tensor3(x.dims()));

    ObservationMask one(x.dims(), false);
    one.set(7, true);
    const Tensor3 p = lrtc::project_omega(x, one);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(p[i], i == 7 ? x[7] : 0.0);
}

TEST(Projection, DecompositionAndInvolution) {
    std::mt19937_64 rng(8);
    const Tensor3 x = random_tensor({4, 5, 6}, rng);
    std::vector<std::uint8_t> f(x.size());
    std::bernoulli_distribution coin(0.5);
    for (auto& b : f) b = coin(rng);
    const ObservationMask m(x.dims(), f);

    const Tensor3 a = lrtc::project_omega(x, m);
    const Tensor3 b = lrtc::project_omega_complement(x, m);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(a[i] + b[i], x[i]);
    EXPECT_EQ(lrtc::project_omega_complement(x, m.complement()), a);
    EXPECT_EQ(m.complement().complement(), m);
}

TEST(Norm, HandValues) {
    EXPECT_EQ(lrtc::frobenius_norm(Tensor3({3, 2, 2})), 0.0);
    EXPECT_EQ(lrtc::frobenius_norm(Tensor3({1, 1, 1}, {-3.0})), 3.0);
    EXPECT_EQ(lrtc::frobenius_norm(Tensor3({2, 1, 1}, {3.0, 4.0})), 5.0);
}

TEST(Norm, InvariantUnderUnfolding) {
    std::mt19937_64 rng(21);
    const Tensor3 x = random_tensor({7, 8, 9}, rng);
    const double n = lrtc::frobenius_norm(x);
    for (int k = 1; k <= 3; ++k) EXPECT_NEAR(unfold_by_loops(x, k).norm(), n, 1e-12 * n);
}

TEST(Mask, IntersectAndCount) {
    const ObservationMask a({1, 1, 4}, std::vector<std::uint8_t>{1, 1, 0, 1});
    const ObservationMask b({1, 1, 4}, std::vector<std::uint8_t>{0, 1, 1, 1});
    const ObservationMask c = lrtc::intersect(a, b);
    EXPECT_EQ(c.observed_count(), 2u);
    EXPECT_TRUE(c.observed(1));
    EXPECT_TRUE(c.observed(3));
    EXPECT_THROW(lrtc::intersect(a, ObservationMask({2, 1, 2}, true)), lrtc::DimensionError);
}

} // namespace
