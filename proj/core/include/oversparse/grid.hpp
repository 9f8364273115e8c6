#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "oversparse/error.hpp"

namespace oversparse {

using cplx = std::complex<double>;

/// Dense row-major 2-D array. `width` counts columns, `height` counts rows.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(std::size_t width, std::size_t height, T fill = T{})
        : width_(width), height_(height), data_(width * height, fill) {}

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t row, std::size_t col) { return data_[row * width_ + col]; }
    const T& operator()(std::size_t row, std::size_t col) const { return data_[row * width_ + col]; }

    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    std::span<T> row(std::size_t r) { return {data_.data() + r * width_, width_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * width_, width_}; }

    std::span<T> values() { return data_; }
    std::span<const T> values() const { return data_; }
    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    bool same_shape(const Grid& o) const noexcept { return width_ == o.width_ && height_ == o.height_; }

    void fill(T v) { std::fill(data_.begin(), data_.end(), v); }

    Grid& operator+=(const Grid& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Grid& operator-=(const Grid& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Grid& operator*=(double s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    void require_same_shape(const Grid& o) const {
        if (!same_shape(o)) throw DimensionError("grid shape mismatch");
    }

    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<T> data_;
};

using RealGrid = Grid<double>;
using ComplexGrid = Grid<cplx>;

template <typename T>
Grid<T> operator+(Grid<T> a, const Grid<T>& b) { return a += b; }
template <typename T>
Grid<T> operator-(Grid<T> a, const Grid<T>& b) { return a -= b; }
template <typename T>
Grid<T> operator*(Grid<T> a, double s) { return a *= s; }

template <typename T>
double squared_norm(const Grid<T>& g) {
    double s = 0.0;
    for (const auto& v : g.values()) s += std::norm(v);
    return s;
}

template <typename T>
double l2_norm(const Grid<T>& g) { return std::sqrt(squared_norm(g)); }

template <typename T>
double max_abs(const Grid<T>& g) {
    double m = 0.0;
    for (const auto& v : g.values()) m = std::max(m, static_cast<double>(std::abs(v)));
    return m;
}

/// Circular shift: out(r, c) = in(r - dr, c - dc) with wraparound.
template <typename T>
Grid<T> circshift(const Grid<T>& in, long dr, long dc) {
    Grid<T> out(in.width(), in.height());
    const long h = static_cast<long>(in.height());
    const long w = static_cast<long>(in.width());
    for (long r = 0; r < h; ++r) {
        const long rr = ((r + dr) % h + h) % h;
        for (long c = 0; c < w; ++c) {
            const long cc = ((c + dc) % w + w) % w;
            out(rr, cc) = in(r, c);
        }
    }
    return out;
}

/// Value convention of an image's samples.
enum class ValueScale { Unit, EightBit, SixteenBit };

/// Real-valued image. Pixels must be finite.
struct Image {
    RealGrid pixels;
    ValueScale scale = ValueScale::Unit;

    Image() = default;
    Image(std::size_t width, std::size_t height, ValueScale s = ValueScale::Unit)
        : pixels(width, height), scale(s) {}
    Image(RealGrid g, ValueScale s = ValueScale::Unit) : pixels(std::move(g)), scale(s) {}

    std::size_t width() const noexcept { return pixels.width(); }
    std::size_t height() const noexcept { return pixels.height(); }
};

const char* to_string(ValueScale s);

constexpr bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace oversparse
