#pragma once

#include <cstdint>
#include <string_view>

#include "oversparse/grid.hpp"

namespace oversparse {

enum class Domain { Frequency, Physical };
enum class MaskScheme { Uniform, VariableDensity };

std::string_view to_string(Domain d);
std::string_view to_string(MaskScheme s);
Domain parse_domain(std::string_view text);
MaskScheme parse_scheme(std::string_view text);

/// Default radial density exponent of the variable-density scheme.
inline constexpr double kDefaultDensityPower = 4.0;

/// Binary selection grid. For frequency masks index (0, 0) is DC.
struct SamplingMask {
    Grid<std::uint8_t> kept;
    Domain domain = Domain::Frequency;
    MaskScheme scheme = MaskScheme::Uniform;
    double ratio = 1.0;
    std::uint64_t seed = 0;
    double density_power = kDefaultDensityPower;

    std::size_t width() const noexcept { return kept.width(); }
    std::size_t height() const noexcept { return kept.height(); }
    std::size_t kept_count() const;
    bool operator==(const SamplingMask&) const = default;
};

/// Number of kept samples for a ratio: round(ratio * width * height).
std::size_t kept_count_for(std::size_t width, std::size_t height, double ratio);

/// Uniform: kept positions drawn uniformly without replacement.
/// Variable density (frequency only): weighted sampling without replacement
/// with weight (1 - r)^power, r the radial frequency normalised to 1 at the
/// corners; DC is always kept.
SamplingMask make_mask(std::size_t width, std::size_t height, double ratio, Domain domain,
                       MaskScheme scheme, std::uint64_t seed, double density_power = kDefaultDensityPower);

/// Zero-filled measurements. Frequency data lives in `spectrum`, physical data
/// in `pixels`; the other grid is empty.
struct Measurements {
    Domain domain = Domain::Frequency;
    ComplexGrid spectrum;
    RealGrid pixels;
    SamplingMask mask;
    double sigma = 0.0;
    ValueScale scale = ValueScale::Unit;
};

/// Unitary DFT of the image, complex Gaussian noise (std sigma per real and
/// imaginary part) at kept positions, zeros elsewhere.
Measurements sense_frequency(const Image& img, const SamplingMask& mask, double sigma, std::uint64_t seed);

/// Kept pixels plus real Gaussian noise; discarded pixels are 0.
Measurements sense_physical(const Image& img, const SamplingMask& mask, double sigma, std::uint64_t seed);

/// Zeroes every entry outside the mask.
template <typename T>
Grid<T> restrict_to(const Grid<T>& g, const SamplingMask& mask) {
    if (g.width() != mask.width() || g.height() != mask.height())
        throw DimensionError("grid and mask shapes differ");
    Grid<T> out = g;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!mask.kept[i]) out[i] = T{};
    return out;
}

}  // namespace oversparse
