#include <gtest/gtest.h>

#include <cmath>

#include "lrtc/error.hpp"
#include "lrtc/masks.hpp"
#include "lrtc/metrics.hpp"

namespace {

using lrtc::MissingPattern;

double observed_fraction(const lrtc::ObservationMask& m) { return double(m.observed_count()) / double(m.size()); }

TEST(RmMask, VanishingRateKeepsEverything) {
    const auto m = lrtc::generate_rm_mask({4, 5, 6}, 1e-9, 1);
    EXPECT_EQ(m.observed_count(), 120u);
}

TEST(RmMask, BinomialConcentration) {
    const auto m = lrtc::generate_rm_mask({100, 100, 100}, 0.4, 17);
    EXPECT_NEAR(observed_fraction(m), 0.6, 0.01);
}

TEST(RmMask, Deterministic) {
    const lrtc::Shape d{10, 11, 12};
    EXPECT_EQ(lrtc::generate_rm_mask(d, 0.3, 5), lrtc::generate_rm_mask(d, 0.3, 5));
    EXPECT_NE(lrtc::generate_rm_mask(d, 0.3, 5), lrtc::generate_rm_mask(d, 0.3, 6));
}

TEST(NmMask, SingleFiber) {
    const lrtc::Shape d{2, 2, 9};
    bool found = false;
    for (std::uint64_t seed = 0; seed < 200 && !found; ++seed) {
        const auto m = lrtc::generate_nm_mask(d, 0.25, seed);
        if (m.size() - m.observed_count() != 9) continue;
        found = true;
        std::size_t first = m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            if (!m.observed(i)) {
                first = i;
                break;
            }
        ASSERT_EQ(first % 9, 0u);
        for (std::size_t t = 0; t < 9; ++t) EXPECT_FALSE(m.observed(first + t));
    }
    EXPECT_TRUE(found);
}

TEST(NmMask, FibersAreAllOrNothing) {
    const lrtc::Shape d{13, 7, 11};
    const auto m = lrtc::generate_nm_mask(d, 0.4, 3);
    for (std::size_t p = 0; p < d[0] * d[1]; ++p)
        for (std::size_t t = 1; t < d[2]; ++t) ASSERT_EQ(m.observed(p * d[2] + t), m.observed(p * d[2]));
}

TEST(NmMask, MissingFractionMatchesRateOnAverage) {
    const lrtc::Shape d{50, 40, 10};
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) total += 1.0 - observed_fraction(lrtc::generate_nm_mask(d, 0.3, seed));
    EXPECT_NEAR(total / 20.0, 0.3, 0.01);
}

TEST(Scenario, ValidationAndParsing) {
    EXPECT_THROW(lrtc::validate(lrtc::MissingScenario{MissingPattern::random, 0.0, 0}), lrtc::ConfigError);
    EXPECT_THROW(lrtc::validate(lrtc::MissingScenario{MissingPattern::fiber, 1.0, 0}), lrtc::ConfigError);
    EXPECT_EQ(lrtc::parse_pattern("RM"), MissingPattern::random);
    EXPECT_EQ(lrtc::parse_pattern("nm"), MissingPattern::fiber);
    EXPECT_THROW(lrtc::parse_pattern("xm"), lrtc::ConfigError);
    EXPECT_EQ(lrtc::to_string(MissingPattern::fiber), "nm");
    const lrtc::MissingScenario nm{MissingPattern::fiber, 0.2, 4};
    EXPECT_EQ(lrtc::generate_mask({5, 5, 5}, nm), lrtc::generate_nm_mask({5, 5, 5}, 0.2, 4));
}

TEST(Mape, HandValues) {
    const std::vector<double> t1{10}, e1{9};
    EXPECT_EQ(lrtc::mape(t1, e1), 10.0);
    const std::vector<double> t2{10, 20}, e2{9, 22};
    EXPECT_EQ(lrtc::mape(t2, e2), 10.0);
    EXPECT_EQ(lrtc::mape(t2, t2), 0.0);
}

TEST(Mape, SkipsZeroTruth) {
    const std::vector<double> t{0.0, 10.0}, e{5.0, 9.0};
    EXPECT_EQ(lrtc::mape(t, e), 10.0);
    const std::vector<double> z{0.0, 0.0};
    EXPECT_THROW(lrtc::mape(z, e), lrtc::DegenerateError);
    EXPECT_THROW(lrtc::mape(std::vector<double>{}, std::vector<double>{}), lrtc::DegenerateError);
    EXPECT_THROW(lrtc::mape(t, std::vector<double>{1.0}), lrtc::DimensionError);
}

TEST(Rmse, HandValues) {
    const std::vector<double> t{0, 0}, e{3, 4};
    EXPECT_EQ(lrtc::rmse(t, e), std::sqrt(12.5));
    EXPECT_EQ(lrtc::rmse(e, e), 0.0);
    EXPECT_EQ(lrtc::rmse(std::vector<double>{1.5}, std::vector<double>{-0.5}), 2.0);
    EXPECT_THROW(lrtc::rmse(std::vector<double>{}, std::vector<double>{}), lrtc::DegenerateError);
}

} // namespace
