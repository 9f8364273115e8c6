#include <gtest/gtest.h>

#include <oversparse/error.hpp>
#include <oversparse/filters.hpp>

#include <cmath>
#include <numeric>

namespace os = oversparse;
using os::TransformKind;

namespace {

double tap_norm(const std::vector<double>& h) { return std::sqrt(std::inner_product(h.begin(), h.end(), h.begin(), 0.0)); }
double tap_sum(const std::vector<double>& h) { return std::accumulate(h.begin(), h.end(), 0.0); }

// Perfect reconstruction of one analysis/synthesis stage on a periodic impulse.
double impulse_reconstruction_error(const os::FilterBank& bank, std::size_t n, std::size_t at) {
    std::vector<double> x(n, 0.0), y(n, 0.0);
    x[at] = 1.0;
    for (const auto& h : bank.channels) {
        std::vector<double> sub(n / 2, 0.0);
        for (std::size_t k = 0; k < n / 2; ++k)
            for (std::size_t i = 0; i < h.size(); ++i) sub[k] += h[i] * x[(2 * k + i) % n];
        for (std::size_t k = 0; k < n / 2; ++k)
            for (std::size_t i = 0; i < h.size(); ++i) y[(2 * k + i) % n] += h[i] * sub[k];
    }
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(y[i] - x[i]));
    return worst;
}

}  // namespace

TEST(BuiltinFilters, DwtPairIsOrthonormal) {
    const auto& f = os::builtin_filters(TransformKind::DWT);
    ASSERT_EQ(f.trees.size(), 1u);
    for (const auto& h : f.trees[0].first.channels) EXPECT_NEAR(tap_norm(h), 1.0, 1e-12);
}

TEST(BuiltinFilters, HighpassTapsSumToZero) {
    for (auto kind : os::kAllKinds)
        for (const auto& tree : os::builtin_filters(kind).trees)
            for (const auto* bank : {&tree.first, &tree.later})
                for (std::size_t ch = 1; ch < bank->channel_count(); ++ch)
                    EXPECT_NEAR(tap_sum(bank->channels[ch]), 0.0, 1e-12) << os::to_string(kind);
}

TEST(BuiltinFilters, LowpassHasDcGainSqrt2) {
    for (auto kind : os::kAllKinds)
        for (const auto& tree : os::builtin_filters(kind).trees)
            EXPECT_NEAR(tap_sum(tree.later.lowpass()), std::sqrt(2.0), 1e-12) << os::to_string(kind);
}

TEST(BuiltinFilters, EveryStageReconstructsImpulses) {
    for (auto kind : os::kAllKinds)
        for (const auto& tree : os::builtin_filters(kind).trees)
            for (const auto* bank : {&tree.first, &tree.later}) {
                EXPECT_LT(os::tight_frame_defect(*bank), 1e-12);
                for (std::size_t at : {0u, 5u, 31u}) EXPECT_LT(impulse_reconstruction_error(*bank, 32, at), 1e-10);
            }
}

TEST(BuiltinFilters, DualTreeFirstStageDiffers) {
    for (auto kind : {TransformKind::DT_COMPLEX, TransformKind::DD_DT_COMPLEX}) {
        const auto& f = os::builtin_filters(kind);
        ASSERT_EQ(f.trees.size(), 2u);
        for (const auto& t : f.trees) EXPECT_NE(t.first.channels, t.later.channels);
        EXPECT_NE(f.trees[0].later.channels, f.trees[1].later.channels);
    }
}

TEST(BuiltinFilters, RealAndComplexDoubleDensityDualTreeShareFilters) {
    const auto& a = os::builtin_filters(TransformKind::DD_DT_REAL);
    const auto& b = os::builtin_filters(TransformKind::DD_DT_COMPLEX);
    ASSERT_EQ(a.trees.size(), b.trees.size());
    for (std::size_t t = 0; t < a.trees.size(); ++t) {
        EXPECT_EQ(a.trees[t].first.channels, b.trees[t].first.channels);
        EXPECT_EQ(a.trees[t].later.channels, b.trees[t].later.channels);
    }
}

TEST(BuiltinFilters, SameValuesOnEveryCall) {
    const auto* first = &os::builtin_filters(TransformKind::DT_COMPLEX);
    EXPECT_EQ(first, &os::builtin_filters(TransformKind::DT_COMPLEX));
}

TEST(FilterTable, ProjectionMovesPublishedTapsOnlySlightly) {
    const auto entries = os::parse_filter_table(os::builtin_filter_table());
    const auto& dt = os::builtin_filters(TransformKind::DT_COMPLEX);
    for (const auto& e : entries) {
        if (e.set != "dtcwt" || e.stage != "later") continue;
        const auto& bank = dt.trees[e.tree == "h" ? 0 : 1].later;
        const auto& taps = bank.channels[e.band == "lo" ? 0 : 1];
        ASSERT_EQ(taps.size(), e.taps.size());
        for (std::size_t i = 0; i < taps.size(); ++i) {
            EXPECT_NEAR(taps[i], e.taps[i], 1e-8);
            if (e.taps[i] == 0.0) {
                EXPECT_EQ(taps[i], 0.0);
            }
        }
    }
}

TEST(FilterTable, ProjectionRepairsPerturbedBank) {
    os::FilterBank bank = os::builtin_filters(TransformKind::DWT).trees[0].first;
    for (auto& h : bank.channels)
        for (auto& t : h)
            if (t != 0.0) t += 3e-7;
    EXPECT_GT(os::tight_frame_defect(bank), 1e-8);
    EXPECT_LT(os::tight_frame_defect(os::project_to_tight_frame(bank)), 1e-14);
}

TEST(FilterTable, ParsesCommentsAndBlankLines) {
    const auto e = os::parse_filter_table("# header\n\nx all h lo 1, 2.5,-3e-1\n  # indented comment\n");
    ASSERT_EQ(e.size(), 1u);
    EXPECT_EQ(e[0].set, "x");
    EXPECT_EQ(e[0].band, "lo");
    EXPECT_EQ(e[0].taps, (std::vector<double>{1.0, 2.5, -0.3}));
}

TEST(FilterTable, MalformedLinesReportOffsets) {
    try {
        os::parse_filter_table("a b c d 1,2\na b c d 1,zz\n");
        FAIL() << "expected ParseError";
    } catch (const os::ParseError& e) {
        EXPECT_GT(e.offset(), 12u);
    }
    EXPECT_THROW(os::parse_filter_table("a b c\n"), os::ParseError);
    EXPECT_THROW(os::parse_filter_table("a b c d 1,,2\n"), os::ParseError);
}

TEST(Kinds, NamesRoundTrip) {
    for (auto k : os::kAllKinds) {
        EXPECT_EQ(os::parse_kind(os::to_string(k)), k);
        EXPECT_EQ(os::parse_kind(os::display_name(k)), k);
    }
    EXPECT_EQ(os::parse_kind("DT-CoWT"), TransformKind::DT_COMPLEX);
    EXPECT_THROW(os::parse_kind("curvelet"), os::ArgumentError);
    EXPECT_EQ(os::tree_count(TransformKind::DD_DT_REAL), 2);
    EXPECT_EQ(os::channel_count(TransformKind::DD_DWT), 3);
    EXPECT_TRUE(os::is_complex(TransformKind::DD_DT_COMPLEX));
    EXPECT_FALSE(os::is_complex(TransformKind::DD_DT_REAL));
}
