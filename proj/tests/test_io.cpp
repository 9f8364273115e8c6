#include <gtest/gtest.h>

#include <oversparse/error.hpp>
#include <oversparse/io.hpp>
#include <oversparse/sensing.hpp>

#include <cmath>
#include <filesystem>
#include <limits>

#include "test_support.hpp"

namespace os = oversparse;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    const fs::path p = fs::temp_directory_path() / ("oversparse_io_" + std::string(info->name()));
    fs::create_directories(p);
    return p;
}

os::Image integer_image(std::size_t w, std::size_t h, int maxval, os::ValueScale scale, std::uint64_t seed) {
    os::Rng rng(seed);
    os::Image img(w, h, scale);
    for (auto& v : img.pixels.values()) v = static_cast<double>(rng.below(static_cast<std::uint64_t>(maxval) + 1));
    return img;
}

}  // namespace

TEST(Pgm, EightBitRoundTripIsExact) {
    const auto img = integer_image(13, 7, 255, os::ValueScale::EightBit, 1);
    const auto path = scratch_dir() / "a.pgm";
    os::write_pgm(path, img);
    const auto back = os::read_pgm(path);
    EXPECT_EQ(back.scale, os::ValueScale::EightBit);
    EXPECT_EQ(back.pixels, img.pixels);
}

TEST(Pgm, SixteenBitRoundTripIsExact) {
    const auto img = integer_image(9, 5, 65535, os::ValueScale::SixteenBit, 2);
    const auto back = os::parse_pgm(os::encode_pgm(img));
    EXPECT_EQ(back.scale, os::ValueScale::SixteenBit);
    EXPECT_EQ(back.pixels, img.pixels);
}

TEST(Pgm, UnitImagesAreScaledAndClamped) {
    os::Image img(4, 1);
    img.pixels[0] = 0.0;
    img.pixels[1] = 1.0;
    img.pixels[2] = 1.7;
    img.pixels[3] = -0.2;
    const auto back = os::parse_pgm(os::encode_pgm(img));
    EXPECT_EQ(back.pixels[0], 0.0);
    EXPECT_EQ(back.pixels[1], 255.0);
    EXPECT_EQ(back.pixels[2], 255.0);
    EXPECT_EQ(back.pixels[3], 0.0);
}

TEST(Pgm, HeaderCommentsAreSkipped) {
    const std::string bytes = std::string("P5\n# made by hand\n2 1\n255\n") + '\x07' + '\xff';
    const auto img = os::parse_pgm(bytes);
    EXPECT_EQ(img.width(), 2u);
    EXPECT_EQ(img.pixels[0], 7.0);
    EXPECT_EQ(img.pixels[1], 255.0);
}

TEST(Pgm, TruncationReportsOffset) {
    const auto full = os::encode_pgm(integer_image(8, 8, 255, os::ValueScale::EightBit, 3));
    const std::string cut = full.substr(0, full.size() - 10);
    try {
        os::parse_pgm(cut);
        FAIL() << "no error";
    } catch (const os::ParseError& e) {
        EXPECT_EQ(e.offset(), cut.size());
    }
    EXPECT_THROW(os::parse_pgm("P2\n1 1\n255\n0"), os::ParseError);
    EXPECT_THROW(os::parse_pgm(""), os::ParseError);
}

TEST(Pgm, MissingFileIsAnIoError) {
    EXPECT_THROW(os::read_pgm(scratch_dir() / "does_not_exist.pgm"), os::IoError);
    EXPECT_THROW(os::write_pgm(scratch_dir() / "no_dir" / "x.pgm", os::Image(2, 2)), os::IoError);
}

TEST(Raw, RealAndComplexRoundTrips) {
    os::RawGrid g;
    g.real = os::testing::random_grid(5, 3, 4);
    g.real[0] = -0.0;
    g.real[1] = 1e-310;
    g.scale = os::ValueScale::EightBit;
    const auto back = os::parse_raw(os::encode_raw(g));
    EXPECT_FALSE(back.is_complex());
    EXPECT_EQ(back.scale, os::ValueScale::EightBit);
    EXPECT_EQ(back.real, g.real);
    EXPECT_TRUE(std::signbit(back.real[0]));

    os::RawGrid c;
    c.flags = os::RawGrid::kComplex | os::RawGrid::kFrequency;
    c.complex = os::fft2(os::testing::random_grid(4, 4, 5));
    const auto path = scratch_dir() / "c.raw";
    os::write_raw(path, c);
    const auto cb = os::read_raw(path);
    EXPECT_TRUE(cb.is_complex());
    EXPECT_EQ(cb.flags & os::RawGrid::kFrequency, os::RawGrid::kFrequency);
    EXPECT_EQ(cb.complex, c.complex);
}

TEST(Raw, HeaderLayout) {
    os::RawGrid g;
    g.real = os::RealGrid(3, 2, 1.0);
    const auto bytes = os::encode_raw(g);
    ASSERT_EQ(bytes.size(), 24u + 6 * 8);
    EXPECT_EQ(bytes.substr(0, 8), "OVSPRAW1");
    EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 3);
    EXPECT_EQ(static_cast<unsigned char>(bytes[12]), 2);
    EXPECT_THROW(os::parse_raw(bytes.substr(0, 30)), os::ParseError);
    EXPECT_THROW(os::parse_raw("NOTRAW01" + bytes.substr(8)), os::ParseError);
}

TEST(ReadImage, DetectsFormat) {
    const auto dir = scratch_dir();
    const auto img = integer_image(4, 4, 255, os::ValueScale::EightBit, 6);
    os::write_pgm(dir / "a.pgm", img);
    os::RawGrid g;
    g.real = img.pixels;
    g.scale = os::ValueScale::EightBit;
    os::write_raw(dir / "a.raw", g);
    EXPECT_EQ(os::read_image(dir / "a.pgm").pixels, img.pixels);
    EXPECT_EQ(os::read_image(dir / "a.raw").pixels, img.pixels);
}

TEST(Mask, PbmRoundTripKeepsMetadata) {
    for (auto scheme : {os::MaskScheme::Uniform, os::MaskScheme::VariableDensity}) {
        const auto m = os::make_mask(16, 8, 0.3, os::Domain::Frequency, scheme, 99, 3.5);
        const auto back = os::parse_mask(os::encode_mask(m));
        EXPECT_EQ(back.kept, m.kept);
        EXPECT_EQ(back.domain, m.domain);
        EXPECT_EQ(back.scheme, m.scheme);
        EXPECT_EQ(back.ratio, m.ratio);
        EXPECT_EQ(back.seed, m.seed);
        if (scheme == os::MaskScheme::VariableDensity) {
            EXPECT_EQ(back.density_power, 3.5);
        }
    }
    const auto p = os::make_mask(8, 8, 0.8, os::Domain::Physical, os::MaskScheme::Uniform, 5);
    const auto path = scratch_dir() / "m.pbm";
    os::write_mask(path, p);
    EXPECT_EQ(os::read_mask(path).kept, p.kept);
    EXPECT_THROW(os::parse_mask("P1\n2 2\n1 0 1"), os::ParseError);
    EXPECT_THROW(os::parse_mask("P1\n1 1\n2"), os::ParseError);
}

TEST(FormatDouble, ShortestRoundTrip) {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.0, -2.5, 0.0}) EXPECT_EQ(std::stod(os::format_double(v)), v);
    EXPECT_EQ(os::format_double(0.1), "0.1");
    EXPECT_EQ(os::format_double(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(os::format_double(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(os::format_double(std::nan("")), "nan");
}

TEST(Files, AtomicWriteLeavesNoTemporary) {
    const auto dir = scratch_dir();
    os::write_file(dir / "x.txt", "hello");
    os::write_file(dir / "x.txt", "bye");
    EXPECT_EQ(os::read_file(dir / "x.txt"), "bye");
    std::size_t n = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++n;
    EXPECT_EQ(n, 1u);
}
