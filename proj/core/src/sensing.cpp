#include "oversparse/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "oversparse/error.hpp"
#include "oversparse/fft.hpp"
#include "oversparse/rng.hpp"

namespace oversparse {

std::string_view to_string(Domain d) { return d == Domain::Frequency ? "frequency" : "physical"; }
std::string_view to_string(MaskScheme s) { return s == MaskScheme::Uniform ? "uniform" : "variable-density"; }

Domain parse_domain(std::string_view text) {
    if (text == "frequency" || text == "f") return Domain::Frequency;
    if (text == "physical" || text == "p") return Domain::Physical;
    throw ArgumentError("unknown domain '" + std::string(text) + "' (expected frequency or physical)");
}

MaskScheme parse_scheme(std::string_view text) {
    if (text == "uniform") return MaskScheme::Uniform;
    if (text == "variable-density" || text == "vd") return MaskScheme::VariableDensity;
    throw ArgumentError("unknown mask scheme '" + std::string(text) + "' (expected uniform or variable-density)");
}

std::size_t SamplingMask::kept_count() const {
    return static_cast<std::size_t>(std::count(kept.values().begin(), kept.values().end(), std::uint8_t{1}));
}

std::size_t kept_count_for(std::size_t width, std::size_t height, double ratio) {
    return static_cast<std::size_t>(std::llround(ratio * static_cast<double>(width * height)));
}

namespace {

void uniform_positions(Grid<std::uint8_t>& kept, std::size_t count, Rng& rng) {
    // Partial Fisher-Yates over the flat index range.
    std::vector<std::size_t> idx(kept.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(idx.size() - i));
        std::swap(idx[i], idx[j]);
        kept[idx[i]] = 1;
    }
}

// Signed frequency in cycles per sample for DFT index k of an n-point axis.
double frequency(std::size_t k, std::size_t n) {
    const long kk = static_cast<long>(k), nn = static_cast<long>(n);
    return static_cast<double>(kk < (nn + 1) / 2 ? kk : kk - nn) / static_cast<double>(nn);
}

void variable_density_positions(Grid<std::uint8_t>& kept, std::size_t count, double power, Rng& rng) {
    const std::size_t W = kept.width(), H = kept.height();
    // Efraimidis-Spirakis: keep the `count` largest keys log(u) / w.
    std::vector<std::pair<double, std::size_t>> keys(W * H);
    for (std::size_t r = 0; r < H; ++r) {
        const double fy = frequency(r, H);
        for (std::size_t c = 0; c < W; ++c) {
            const double fx = frequency(c, W);
            const double radius = std::min(1.0, std::sqrt(fx * fx + fy * fy) / std::sqrt(0.5));
            const double w = std::pow(1.0 - radius, power) + 1e-9;
            double u = rng.uniform();
            if (u == 0.0) u = std::numeric_limits<double>::min();
            keys[r * W + c] = {std::log(u) / w, r * W + c};
        }
    }
    keys[0].first = std::numeric_limits<double>::infinity();
    std::partial_sort(keys.begin(), keys.begin() + static_cast<long>(count), keys.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
    for (std::size_t i = 0; i < count; ++i) kept[keys[i].second] = 1;
}

void check_shapes(const Image& img, const SamplingMask& mask, Domain expected) {
    if (mask.domain != expected)
        throw ArgumentError("mask domain is " + std::string(to_string(mask.domain)) + ", expected " +
                            std::string(to_string(expected)));
    if (img.width() != mask.width() || img.height() != mask.height())
        throw DimensionError("image and mask shapes differ");
}

}  // namespace

SamplingMask make_mask(std::size_t width, std::size_t height, double ratio, Domain domain, MaskScheme scheme,
                       std::uint64_t seed, double density_power) {
    if (width == 0 || height == 0) throw DimensionError("mask dimensions must be positive");
    if (!(ratio > 0.0 && ratio <= 1.0)) throw ArgumentError("ratio must lie in (0, 1]");
    if (scheme == MaskScheme::VariableDensity && domain == Domain::Physical)
        throw ArgumentError("variable-density masks are only defined in the frequency domain");
    if (!(density_power >= 0.0) || !std::isfinite(density_power))
        throw ArgumentError("density power must be finite and non-negative");

    SamplingMask m;
    m.kept = Grid<std::uint8_t>(width, height, 0);
    m.domain = domain;
    m.scheme = scheme;
    m.ratio = ratio;
    m.seed = seed;
    m.density_power = density_power;
    const std::size_t count = kept_count_for(width, height, ratio);
    if (count == 0) throw ArgumentError("ratio keeps no samples on a grid this small");
    Rng rng(seed);
    if (count == width * height) {
        m.kept.fill(1);
    } else if (scheme == MaskScheme::Uniform) {
        uniform_positions(m.kept, count, rng);
    } else {
        variable_density_positions(m.kept, count, density_power, rng);
    }
    return m;
}

Measurements sense_frequency(const Image& img, const SamplingMask& mask, double sigma, std::uint64_t seed) {
    check_shapes(img, mask, Domain::Frequency);
    if (!(sigma >= 0.0)) throw ArgumentError("sigma must be non-negative");
    Measurements m;
    m.domain = Domain::Frequency;
    m.mask = mask;
    m.sigma = sigma;
    m.scale = img.scale;
    m.spectrum = restrict_to(fft2(img.pixels), mask);
    if (sigma > 0.0) {
        Rng rng(seed);
        for (std::size_t i = 0; i < m.spectrum.size(); ++i) {
            if (!mask.kept[i]) continue;
            const double re = rng.normal(), im = rng.normal();
            m.spectrum[i] += cplx(sigma * re, sigma * im);
        }
    }
    return m;
}

Measurements sense_physical(const Image& img, const SamplingMask& mask, double sigma, std::uint64_t seed) {
    check_shapes(img, mask, Domain::Physical);
    if (!(sigma >= 0.0)) throw ArgumentError("sigma must be non-negative");
    Measurements m;
    m.domain = Domain::Physical;
    m.mask = mask;
    m.sigma = sigma;
    m.scale = img.scale;
    m.pixels = restrict_to(img.pixels, mask);
    if (sigma > 0.0) {
        Rng rng(seed);
        for (std::size_t i = 0; i < m.pixels.size(); ++i)
            if (mask.kept[i]) m.pixels[i] += sigma * rng.normal();
    }
    return m;
}

}  // namespace oversparse
