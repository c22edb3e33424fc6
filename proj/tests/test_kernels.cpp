#include <gtest/gtest.h>

#include <random>

#include "lrtc/kernels.hpp"

namespace {

namespace ks = lrtc::kernels::serial;
namespace ko = lrtc::kernels::omp;

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d(0.0, 3.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

std::vector<std::uint8_t> random_flags(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.6);
    std::vector<std::uint8_t> f(n);
    for (auto& b : f) b = coin(rng);
    return f;
}

// Large enough to cross the parallel threshold.
constexpr lrtc::Shape kDims{37, 23, 41};
constexpr std::size_t kSize = 37 * 23 * 41;

TEST(Kernels, UnfoldFoldAgree) {
    const auto x = random_values(kSize, 1);
    for (int k = 1; k <= 3; ++k) {
        Eigen::MatrixXd a, b;
        ks::unfold(x, kDims, k, a);
        ko::unfold(x, kDims, k, b);
        ASSERT_EQ(a, b);
        std::vector<double> fa(kSize), fb(kSize);
        ks::fold(a, kDims, k, fa);
        ko::fold(a, kDims, k, fb);
        EXPECT_EQ(fa, x);
        EXPECT_EQ(fb, x);
    }
}

TEST(Kernels, ElementwiseBitwiseIdentical) {
    const auto x1 = random_values(kSize, 2), x2 = random_values(kSize, 3), x3 = random_values(kSize, 4);
    const auto t1 = random_values(kSize, 5), t2 = random_values(kSize, 6), t3 = random_values(kSize, 7);
    const auto flags = random_flags(kSize, 8);
    const double rho = 0.37;

    std::vector<double> a(kSize), b(kSize);
    for (bool keep : {true, false}) {
        ks::masked_copy(x1, flags, keep, a);
        ko::masked_copy(x1, flags, keep, b);
        EXPECT_EQ(a, b);
    }
    a = x2;
    b = x2;
    ks::overwrite_observed(x1, flags, a);
    ko::overwrite_observed(x1, flags, b);
    EXPECT_EQ(a, b);

    ks::shifted_by_dual(x1, t1, rho, a);
    ko::shifted_by_dual(x1, t1, rho, b);
    EXPECT_EQ(a, b);

    ks::consensus_average(x1, x2, x3, t1, t2, t3, rho, a);
    ko::consensus_average(x1, x2, x3, t1, t2, t3, rho, b);
    EXPECT_EQ(a, b);

    a = t1;
    b = t1;
    ks::dual_ascent(a, x1, x2, rho);
    ko::dual_ascent(b, x1, x2, rho);
    EXPECT_EQ(a, b);
}

TEST(Kernels, ReductionsMatchWithinRounding) {
    const auto x = random_values(kSize, 9), y = random_values(kSize, 10);
    const double s = ks::sum_squares(x);
    EXPECT_NEAR(ko::sum_squares(x), s, 1e-12 * s);
    const double d = ks::diff_sum_squares(x, y);
    EXPECT_NEAR(ko::diff_sum_squares(x, y), d, 1e-12 * d);
}

TEST(Kernels, ConsensusAverageHandValue) {
    // X_k = 0 and T_k = rho everywhere give (3 rho) / (3 rho) = 1.
    const double rho = 2.5;
    const std::vector<double> zero(6, 0.0), t(6, rho);
    std::vector<double> out(6);
    ks::consensus_average(zero, zero, zero, t, t, t, rho, out);
    for (double v : out) EXPECT_EQ(v, 1.0);
}

TEST(Kernels, DualAscentHandValue) {
    std::vector<double> t(4, 0.0);
    const std::vector<double> x{3, 3, 3, 3}, m{2, 2, 2, 2};
    ks::dual_ascent(t, x, m, 2.0);
    for (double v : t) EXPECT_EQ(v, 2.0);
}

} // namespace
