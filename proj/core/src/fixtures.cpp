#include "oversparse/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oversparse/error.hpp"
#include "oversparse/rng.hpp"

namespace oversparse {

namespace {

constexpr double kPi = std::numbers::pi;

Image phantom(std::size_t n) {
    Rng rng(7);
    Image img(n, n);
    auto& p = img.pixels;
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const double x = static_cast<double>(c) * inv, y = static_cast<double>(r) * inv;
            p(r, c) = 0.35 + 0.075 * std::sin(2 * kPi * (0.7 * x + 0.3 * y)) + 0.2 * x;
        }
    for (int e = 0; e < 14; ++e) {
        const double cx = 0.1 + 0.8 * rng.uniform(), cy = 0.1 + 0.8 * rng.uniform();
        const double a = 0.04 + 0.21 * rng.uniform(), b = 0.04 + 0.21 * rng.uniform();
        const double th = kPi * rng.uniform();
        const double level = 0.1 + 0.8 * rng.uniform();
        const double ct = std::cos(th), st = std::sin(th);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                const double x = static_cast<double>(c) * inv - cx, y = static_cast<double>(r) * inv - cy;
                const double xr = x * ct + y * st, yr = -x * st + y * ct;
                if ((xr / a) * (xr / a) + (yr / b) * (yr / b) < 1.0) p(r, c) = level + 0.15 * (xr / a);
            }
    }
    for (auto& v : p.values()) v = std::clamp(v, 0.0, 1.0);
    return img;
}

// Bilinearly interpolated random lattice, periodic over the image.
RealGrid value_noise(std::size_t n, std::size_t cells, Rng& rng) {
    RealGrid lattice(cells, cells);
    for (auto& v : lattice.values()) v = rng.uniform();
    RealGrid out(n, n);
    const double step = static_cast<double>(cells) / static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) {
        const double fy = static_cast<double>(r) * step;
        const std::size_t y0 = static_cast<std::size_t>(fy) % cells, y1 = (y0 + 1) % cells;
        const double ty = fy - std::floor(fy), sy = ty * ty * (3 - 2 * ty);
        for (std::size_t c = 0; c < n; ++c) {
            const double fx = static_cast<double>(c) * step;
            const std::size_t x0 = static_cast<std::size_t>(fx) % cells, x1 = (x0 + 1) % cells;
            const double tx = fx - std::floor(fx), sx = tx * tx * (3 - 2 * tx);
            const double top = lattice(y0, x0) * (1 - sx) + lattice(y0, x1) * sx;
            const double bot = lattice(y1, x0) * (1 - sx) + lattice(y1, x1) * sx;
            out(r, c) = top * (1 - sy) + bot * sy;
        }
    }
    return out;
}

Image texture(std::size_t n) {
    Rng rng(11);
    Image img(n, n);
    double amp = 0.5;
    for (std::size_t cells = 4; cells <= std::min<std::size_t>(32, n); cells *= 2, amp *= 0.5) {
        RealGrid octave = value_noise(n, cells, rng);
        octave *= amp;
        img.pixels += octave;
    }
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const double x = static_cast<double>(c) * inv, y = static_cast<double>(r) * inv;
            img.pixels(r, c) += 0.12 * std::sin(2 * kPi * (9 * x + 5 * y)) + 0.08 * std::sin(2 * kPi * (-4 * x + 13 * y));
        }
    for (auto& v : img.pixels.values()) v = std::clamp(v - 0.15, 0.0, 1.0);
    return img;
}

}  // namespace

std::vector<std::string> fixture_names() { return {"phantom", "texture"}; }

Image make_fixture(std::string_view name, std::size_t size) {
    if (!is_power_of_two(size) || size < 8) throw DimensionError("fixture size must be a power of two >= 8");
    if (name == "phantom") return phantom(size);
    if (name == "texture") return texture(size);
    throw ArgumentError("unknown fixture '" + std::string(name) + "' (expected phantom or texture)");
}

}  // namespace oversparse
