#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "oversparse/grid.hpp"
#include "oversparse/sensing.hpp"

namespace oversparse {

/// Binary PGM (P5). maxval <= 255 reads as EightBit, larger as SixteenBit
/// (two bytes per sample, most significant first). Pixel values are kept in
/// their native range.
Image read_pgm(const std::filesystem::path& path);
Image parse_pgm(std::string_view bytes);

/// Writes 8-bit for Unit and EightBit images (Unit is scaled by 255) and
/// 16-bit for SixteenBit. Values are rounded and clamped to the format range.
void write_pgm(const std::filesystem::path& path, const Image& img);
std::string encode_pgm(const Image& img);

/// Raw grid file: a 24-byte header (8-byte magic "OVSPRAW1", u32 width,
/// u32 height, u64 flags) followed by little-endian float64 samples, real
/// values or interleaved (re, im) pairs.
struct RawGrid {
    static constexpr std::uint64_t kComplex = 1;
    static constexpr std::uint64_t kFrequency = 2;

    std::uint64_t flags = 0;
    ValueScale scale = ValueScale::Unit;  // stored in bits 8..15 of flags
    RealGrid real;
    ComplexGrid complex;

    bool is_complex() const noexcept { return (flags & kComplex) != 0; }
};

std::string encode_raw(const RawGrid& g);
RawGrid parse_raw(std::string_view bytes);
void write_raw(const std::filesystem::path& path, const RawGrid& g);
RawGrid read_raw(const std::filesystem::path& path);

/// Measurements as a raw grid (complex for frequency data, real for physical).
void write_measurements(const std::filesystem::path& path, const Measurements& m);

/// Loads PGM or raw real grids, chosen by content.
Image read_image(const std::filesystem::path& path);

/// Plain PBM (P1) with one comment line
///   # domain=<d> ratio=<r> seed=<s> scheme=<name> [power=<p>]
std::string encode_mask(const SamplingMask& mask);
SamplingMask parse_mask(std::string_view text);
void write_mask(const std::filesystem::path& path, const SamplingMask& mask);
SamplingMask read_mask(const std::filesystem::path& path);

/// Shortest decimal that reads back to the same double; "inf", "-inf", "nan"
/// for non-finite values.
std::string format_double(double v);

/// Whole-file helpers. Writes go through a temporary file and a rename so a
/// reader never sees a partial file. Throw IoError.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace oversparse
