#include <gtest/gtest.h>

#include <oversparse/error.hpp>
#include <oversparse/metrics.hpp>

#include <cmath>
#include <limits>

#include "test_support.hpp"

namespace os = oversparse;

TEST(RmsError, IdenticalImagesGiveZero) {
    const os::Image a(os::testing::random_grid(16, 8, 1));
    EXPECT_EQ(os::rms_error(a, a), 0.0);
    EXPECT_EQ(os::snr_db(a, a), std::numeric_limits<double>::infinity());
}

TEST(RmsError, ConstantOffset) {
    const os::Image a(os::testing::random_grid(16, 8, 1));
    for (double d : {0.25, -0.125, 3.0}) {
        os::RealGrid shifted = a.pixels;
        for (auto& v : shifted.values()) v += d;
        EXPECT_NEAR(os::rms_error(a, os::Image(shifted)), std::abs(d), 1e-15);
    }
}

TEST(RmsError, MatchesDirectFormula) {
    const os::Image a(os::testing::random_grid(8, 8, 1)), b(os::testing::random_grid(8, 8, 2));
    double s = 0;
    for (std::size_t i = 0; i < 64; ++i) s += (a.pixels[i] - b.pixels[i]) * (a.pixels[i] - b.pixels[i]);
    EXPECT_NEAR(os::rms_error(a, b), std::sqrt(s / 64), 1e-15);
}

TEST(Snr, ZeroReconstructionGivesZeroDecibels) {
    const os::Image a(os::testing::random_grid(16, 16, 3));
    EXPECT_NEAR(os::snr_db(a, os::Image(16, 16)), 0.0, 1e-12);
}

TEST(Snr, ConsistentWithRmse) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const os::Image a(os::testing::random_grid(16, 16, seed)), b(os::testing::random_grid(16, 16, seed + 99));
        EXPECT_NEAR(20 * std::log10(os::rms(a)) - os::snr_db(a, b), 20 * std::log10(os::rms_error(a, b)), 1e-9);
        EXPECT_NEAR(os::snr_from_rms(os::rms(a), os::rms_error(a, b)), os::snr_db(a, b), 1e-12);
    }
}

TEST(Snr, ScaleCovariance) {
    const os::Image a(os::testing::random_grid(16, 16, 4)), b(os::testing::random_grid(16, 16, 5));
    for (double alpha : {0.01, 2.0, 255.0}) {
        const os::Image sa(a.pixels * alpha), sb(b.pixels * alpha);
        EXPECT_NEAR(os::snr_db(sa, sb), os::snr_db(a, b), 1e-9);
        EXPECT_NEAR(os::rms_error(sa, sb), alpha * os::rms_error(a, b), 1e-12 * alpha);
    }
}

// Each published (RMSE, SNR) row implies a reference RMS of RMSE * 10^(SNR/20);
// one reference per table reproduces every printed SNR.
TEST(Snr, PublishedTablesShareOneReference) {
    struct Row {
        double rmse, snr;
    };
    const Row freq[] = {{0.0246, 19.30}, {0.0239, 19.55}, {0.0246, 19.28}, {0.0246, 19.29}, {0.0249, 19.20}};
    const Row phys[] = {{5.13, 30.78}, {4.48, 31.94}, {4.85, 31.25}, {5.35, 30.41}, {5.43, 30.28}};
    for (const Row& r : freq) EXPECT_NEAR(os::snr_from_rms(0.227, r.rmse), r.snr, 0.05) << r.rmse;
    for (const Row& r : phys) EXPECT_NEAR(os::snr_from_rms(177.0, r.rmse), r.snr, 0.05) << r.rmse;
    EXPECT_NEAR(0.0246 * std::pow(10, 19.30 / 20), 0.227, 0.001);
    EXPECT_NEAR(5.13 * std::pow(10, 30.78 / 20), 177.5, 0.1);
}

TEST(RmsError, Errors) {
    const os::Image a(os::testing::random_grid(8, 8, 1));
    EXPECT_THROW(os::rms_error(a, os::Image(os::testing::random_grid(8, 4, 1))), os::DimensionError);
    EXPECT_THROW(os::rms_error(a, os::Image(a.pixels, os::ValueScale::EightBit)), os::ArgumentError);
    EXPECT_THROW(os::rms(os::Image()), os::DimensionError);
}

TEST(TraceSummary, Examples) {
    const auto single = os::trace_summary({1e-4}, 1e-3);
    EXPECT_EQ(single.knee, 1);
    EXPECT_EQ(single.final_change, 1e-4);
    EXPECT_TRUE(single.monotone_after_knee);

    const auto dec = os::trace_summary({0.5, 0.1, 0.02, 0.009, 0.001, 0.0005}, 1e-3);
    EXPECT_EQ(dec.knee, 4);
    EXPECT_TRUE(dec.monotone_after_knee);

    const auto bump = os::trace_summary({0.5, 0.005, 0.007, 0.0001}, 1e-3);
    EXPECT_EQ(bump.knee, 2);
    EXPECT_FALSE(bump.monotone_after_knee);

    EXPECT_EQ(os::trace_summary({0.5, 0.4}, 1e-3).knee, 0);
    EXPECT_THROW(os::trace_summary({}, 1e-3), os::ArgumentError);
}
