#include "oversparse/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "oversparse/error.hpp"

namespace oversparse {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

using Taps = std::vector<double>;

// y(k, :) = sum_n h[n] x((2k + n) mod H, :)
RealGrid analyze_cols(const RealGrid& x, const Taps& h) {
    const std::size_t H = x.height(), W = x.width();
    RealGrid y(W, H / 2);
    for (std::size_t k = 0; k < H / 2; ++k) {
        auto out = y.row(k);
        for (std::size_t n = 0; n < h.size(); ++n) {
            if (h[n] == 0.0) continue;
            const auto in = x.row((2 * k + n) % H);
            const double c = h[n];
            for (std::size_t j = 0; j < W; ++j) out[j] += c * in[j];
        }
    }
    return y;
}

// y(:, k) = sum_n h[n] x(:, (2k + n) mod W)
RealGrid analyze_rows(const RealGrid& x, const Taps& h) {
    const std::size_t H = x.height(), W = x.width(), L = h.size();
    RealGrid y(W / 2, H);
    std::vector<double> ext(W + L);
    for (std::size_t r = 0; r < H; ++r) {
        const auto in = x.row(r);
        for (std::size_t i = 0; i < ext.size(); ++i) ext[i] = in[i % W];
        auto out = y.row(r);
        for (std::size_t k = 0; k < W / 2; ++k) {
            double s = 0.0;
            const double* e = ext.data() + 2 * k;
            for (std::size_t n = 0; n < L; ++n) s += h[n] * e[n];
            out[k] = s;
        }
    }
    return y;
}

// Adjoint of analyze_cols, accumulated into out (height 2 * y.height()).
void synthesize_cols_add(const RealGrid& y, const Taps& h, RealGrid& out) {
    const std::size_t H = out.height(), W = out.width();
    for (std::size_t k = 0; k < y.height(); ++k) {
        const auto in = y.row(k);
        for (std::size_t n = 0; n < h.size(); ++n) {
            if (h[n] == 0.0) continue;
            auto o = out.row((2 * k + n) % H);
            const double c = h[n];
            for (std::size_t j = 0; j < W; ++j) o[j] += c * in[j];
        }
    }
}

// Adjoint of analyze_rows, accumulated into out (width 2 * y.width()).
void synthesize_rows_add(const RealGrid& y, const Taps& h, RealGrid& out) {
    const std::size_t W = out.width(), L = h.size();
    std::vector<double> ext(W + L);
    for (std::size_t r = 0; r < out.height(); ++r) {
        std::fill(ext.begin(), ext.end(), 0.0);
        const auto in = y.row(r);
        for (std::size_t k = 0; k < y.width(); ++k) {
            const double v = in[k];
            if (v == 0.0) continue;
            double* e = ext.data() + 2 * k;
            for (std::size_t n = 0; n < L; ++n) e[n] += h[n] * v;
        }
        auto o = out.row(r);
        for (std::size_t i = 0; i < ext.size(); ++i) o[i % W] += ext[i];
    }
}

// Bands of one level of a separable tree, indexed i * C + k with i the column
// channel and k the row channel. Slot 0 (the lowpass) is unused.
using LevelBands = std::vector<RealGrid>;

struct TreeOutput {
    std::vector<LevelBands> levels;
    RealGrid low;
};

TreeOutput forward_tree(RealGrid x, const TreeFilters& col, const TreeFilters& row, int J) {
    TreeOutput out;
    for (int j = 1; j <= J; ++j) {
        const FilterBank& fc = col.at_level(j);
        const FilterBank& fr = row.at_level(j);
        const std::size_t C = fc.channel_count();
        LevelBands bands(C * C);
        for (std::size_t i = 0; i < C; ++i) {
            const RealGrid colpass = analyze_cols(x, fc.channels[i]);
            for (std::size_t k = 0; k < C; ++k) bands[i * C + k] = analyze_rows(colpass, fr.channels[k]);
        }
        x = std::move(bands[0]);
        bands[0] = RealGrid();
        out.levels.push_back(std::move(bands));
    }
    out.low = std::move(x);
    return out;
}

RealGrid inverse_tree(const std::vector<const LevelBands*>& levels, const RealGrid& low, const TreeFilters& col,
                      const TreeFilters& row) {
    RealGrid a = low;
    for (int j = static_cast<int>(levels.size()); j >= 1; --j) {
        const FilterBank& fc = col.at_level(j);
        const FilterBank& fr = row.at_level(j);
        const std::size_t C = fc.channel_count();
        const LevelBands& bands = *levels[static_cast<std::size_t>(j - 1)];
        RealGrid x(a.width() * 2, a.height() * 2);
        for (std::size_t i = 0; i < C; ++i) {
            RealGrid colpass(a.width() * 2, a.height());
            for (std::size_t k = 0; k < C; ++k) {
                const RealGrid& b = (i == 0 && k == 0) ? a : bands[i * C + k];
                synthesize_rows_add(b, fr.channels[k], colpass);
            }
            synthesize_cols_add(colpass, fc.channels[i], x);
        }
        a = std::move(x);
    }
    return a;
}

std::string channel_name(std::size_t channel, std::size_t count) {
    if (channel == 0) return "L";
    if (count == 2) return "H";
    return "H" + std::to_string(channel);
}

// Subbands stored per (level, orientation).
int parts_per_orientation(TransformKind kind) {
    switch (kind) {
        case TransformKind::DWT:
        case TransformKind::DD_DWT: return 1;
        case TransformKind::DT_COMPLEX:
        case TransformKind::DD_DT_COMPLEX: return 2;
        case TransformKind::DD_DT_REAL: return 4;
    }
    return 1;
}

std::size_t subband_index(TransformKind kind, int level, std::size_t band, int tree) {
    const std::size_t C = static_cast<std::size_t>(channel_count(kind));
    const std::size_t per_level = C * C - 1;
    const std::size_t P = static_cast<std::size_t>(parts_per_orientation(kind));
    return ((static_cast<std::size_t>(level - 1) * per_level) + (band - 1)) * P + static_cast<std::size_t>(tree);
}

std::size_t orientation_band(TransformKind kind, const std::string& orientation) {
    const auto labels = orientation_labels(kind);
    const auto it = std::find(labels.begin(), labels.end(), orientation);
    if (it == labels.end()) throw ArgumentError("unknown orientation '" + orientation + "'");
    return static_cast<std::size_t>(it - labels.begin()) + 1;
}

}  // namespace

std::vector<std::string> orientation_labels(TransformKind kind) {
    const std::size_t C = static_cast<std::size_t>(channel_count(kind));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < C; ++i)
        for (std::size_t k = 0; k < C; ++k)
            if (i != 0 || k != 0) labels.push_back(channel_name(i, C) + channel_name(k, C));
    return labels;
}

bool is_diagonal(const std::string& orientation) { return orientation.find('L') == std::string::npos; }

Subband& WaveletCoeffs::find(int level, const std::string& orientation, int tree) {
    return const_cast<Subband&>(std::as_const(*this).find(level, orientation, tree));
}

const Subband& WaveletCoeffs::find(int level, const std::string& orientation, int tree) const {
    if (level < 1 || level > levels) throw ArgumentError("level " + std::to_string(level) + " out of range");
    if (tree < 0 || tree >= parts_per_orientation(kind)) throw ArgumentError("tree index out of range");
    const std::size_t idx = subband_index(kind, level, orientation_band(kind, orientation), tree);
    if (idx >= subbands.size()) throw ArgumentError("coefficient layout is incomplete");
    return subbands[idx];
}

std::size_t WaveletCoeffs::coefficient_count() const {
    std::size_t n = 0;
    for (const auto& s : subbands) n += s.re.size() + s.im.size();
    for (const auto& l : lowpass) n += l.size();
    return n;
}

double WaveletCoeffs::energy() const {
    double e = 0.0;
    for (const auto& s : subbands) e += squared_norm(s.re) + squared_norm(s.im);
    for (const auto& l : lowpass) e += squared_norm(l);
    return e;
}

double WaveletCoeffs::max_detail_magnitude() const {
    double m = 0.0;
    for (const auto& s : subbands) {
        if (s.is_complex()) {
            for (std::size_t i = 0; i < s.re.size(); ++i) m = std::max(m, std::hypot(s.re[i], s.im[i]));
        } else {
            m = std::max(m, max_abs(s.re));
        }
    }
    return m;
}

WaveletCoeffs& WaveletCoeffs::operator*=(double s) {
    for (auto& b : subbands) {
        b.re *= s;
        b.im *= s;
    }
    for (auto& l : lowpass) l *= s;
    return *this;
}

void validate_shape(std::size_t width, std::size_t height, int levels) {
    if (levels < 1) throw ArgumentError("levels must be at least 1");
    if (!is_power_of_two(width) || !is_power_of_two(height))
        throw DimensionError("image dimensions must be powers of two, got " + std::to_string(width) + "x" +
                             std::to_string(height));
    const std::size_t smallest = std::min(width, height);
    if ((smallest >> levels) == 0)
        throw DimensionError(std::to_string(levels) + " levels exceed log2 of the smaller dimension (" +
                             std::to_string(smallest) + ")");
}

std::size_t expected_coefficient_count(TransformKind kind, int levels, std::size_t width, std::size_t height) {
    validate_shape(width, height, levels);
    const std::size_t C = static_cast<std::size_t>(channel_count(kind));
    const std::size_t pairs = tree_count(kind) == 1 ? 1 : 4;
    std::size_t n = 0;
    for (int j = 1; j <= levels; ++j) n += (C * C - 1) * (width >> j) * (height >> j);
    n += (width >> levels) * (height >> levels);
    return pairs * n;
}

WaveletCoeffs zero_coeffs(TransformKind kind, int levels, std::size_t width, std::size_t height) {
    validate_shape(width, height, levels);
    WaveletCoeffs c;
    c.kind = kind;
    c.levels = levels;
    c.width = width;
    c.height = height;
    const auto labels = orientation_labels(kind);
    const int P = parts_per_orientation(kind);
    const bool cx = is_complex(kind);
    for (int j = 1; j <= levels; ++j) {
        for (const auto& label : labels) {
            for (int t = 0; t < P; ++t) {
                Subband s;
                s.level = j;
                s.orientation = label;
                s.tree = t;
                s.re = RealGrid(width >> j, height >> j);
                if (cx) s.im = RealGrid(width >> j, height >> j);
                c.subbands.push_back(std::move(s));
            }
        }
    }
    const std::size_t pairs = tree_count(kind) == 1 ? 1 : 4;
    for (std::size_t p = 0; p < pairs; ++p) c.lowpass.emplace_back(width >> levels, height >> levels);
    return c;
}

WaveletCoeffs forward(const RealGrid& image, TransformKind kind, int levels) {
    validate_shape(image.width(), image.height(), levels);
    for (double v : image.values())
        if (!std::isfinite(v)) throw NumericalError("image contains non-finite values");

    const FilterSet& fs = builtin_filters(kind);
    WaveletCoeffs c;
    c.kind = kind;
    c.levels = levels;
    c.width = image.width();
    c.height = image.height();
    const auto labels = orientation_labels(kind);

    if (tree_count(kind) == 1) {
        TreeOutput t = forward_tree(image, fs.trees[0], fs.trees[0], levels);
        for (int j = 1; j <= levels; ++j)
            for (std::size_t b = 1; b <= labels.size(); ++b) {
                Subband s;
                s.level = j;
                s.orientation = labels[b - 1];
                s.re = std::move(t.levels[static_cast<std::size_t>(j - 1)][b]);
                c.subbands.push_back(std::move(s));
            }
        c.lowpass.push_back(std::move(t.low));
        return c;
    }

    const RealGrid half = image * 0.5;
    // Tree pairs (column tree, row tree): 00, 01, 10, 11.
    TreeOutput t00 = forward_tree(half, fs.trees[0], fs.trees[0], levels);
    TreeOutput t01 = forward_tree(half, fs.trees[0], fs.trees[1], levels);
    TreeOutput t10 = forward_tree(half, fs.trees[1], fs.trees[0], levels);
    TreeOutput t11 = forward_tree(half, fs.trees[1], fs.trees[1], levels);
    const bool cx = is_complex(kind);

    for (int j = 1; j <= levels; ++j) {
        const std::size_t lj = static_cast<std::size_t>(j - 1);
        for (std::size_t b = 1; b <= labels.size(); ++b) {
            const RealGrid& hh = t00.levels[lj][b];
            const RealGrid& hg = t01.levels[lj][b];
            const RealGrid& gh = t10.levels[lj][b];
            const RealGrid& gg = t11.levels[lj][b];
            RealGrid parts[4] = {(hh - gg) * kInvSqrt2, (hg + gh) * kInvSqrt2, (hh + gg) * kInvSqrt2,
                                 (hg - gh) * kInvSqrt2};
            auto make = [&](int tree, RealGrid re, RealGrid im) {
                Subband s;
                s.level = j;
                s.orientation = labels[b - 1];
                s.tree = tree;
                s.re = std::move(re);
                s.im = std::move(im);
                c.subbands.push_back(std::move(s));
            };
            if (cx) {
                make(0, std::move(parts[0]), std::move(parts[1]));
                make(1, std::move(parts[2]), std::move(parts[3]));
            } else {
                for (int t = 0; t < 4; ++t) make(t, std::move(parts[t]), RealGrid());
            }
        }
    }
    c.lowpass.push_back(std::move(t00.low));
    c.lowpass.push_back(std::move(t01.low));
    c.lowpass.push_back(std::move(t10.low));
    c.lowpass.push_back(std::move(t11.low));
    return c;
}

RealGrid inverse(const WaveletCoeffs& coeffs) {
    const TransformKind kind = coeffs.kind;
    validate_shape(coeffs.width, coeffs.height, coeffs.levels);
    const std::size_t C = static_cast<std::size_t>(channel_count(kind));
    const std::size_t bands_per_level = C * C - 1;
    const std::size_t P = static_cast<std::size_t>(parts_per_orientation(kind));
    const std::size_t L = static_cast<std::size_t>(coeffs.levels);
    const std::size_t pairs = tree_count(kind) == 1 ? 1 : 4;
    if (coeffs.subbands.size() != L * bands_per_level * P || coeffs.lowpass.size() != pairs)
        throw DimensionError("coefficient layout does not match its kind and levels");
    for (const auto& s : coeffs.subbands) {
        const std::size_t w = coeffs.width >> s.level, h = coeffs.height >> s.level;
        if (s.re.width() != w || s.re.height() != h || (is_complex(kind) != s.is_complex()) ||
            (s.is_complex() && !s.re.same_shape(s.im)))
            throw DimensionError("subband " + s.orientation + " at level " + std::to_string(s.level) +
                                 " has an inconsistent shape");
    }
    for (const auto& l : coeffs.lowpass)
        if (l.width() != (coeffs.width >> L) || l.height() != (coeffs.height >> L))
            throw DimensionError("lowpass residual has an inconsistent shape");

    const FilterSet& fs = builtin_filters(kind);

    if (pairs == 1) {
        std::vector<LevelBands> levels(L, LevelBands(C * C));
        for (std::size_t j = 0; j < L; ++j)
            for (std::size_t b = 1; b <= bands_per_level; ++b)
                levels[j][b] = coeffs.subbands[j * bands_per_level + b - 1].re;
        std::vector<const LevelBands*> ptrs;
        for (const auto& l : levels) ptrs.push_back(&l);
        return inverse_tree(ptrs, coeffs.lowpass[0], fs.trees[0], fs.trees[0]);
    }

    std::vector<LevelBands> t00(L, LevelBands(C * C)), t01 = t00, t10 = t00, t11 = t00;
    for (std::size_t j = 0; j < L; ++j) {
        for (std::size_t b = 1; b <= bands_per_level; ++b) {
            const std::size_t base = (j * bands_per_level + b - 1) * P;
            const RealGrid *c0, *c1, *c2, *c3;
            if (P == 2) {
                c0 = &coeffs.subbands[base].re;
                c1 = &coeffs.subbands[base].im;
                c2 = &coeffs.subbands[base + 1].re;
                c3 = &coeffs.subbands[base + 1].im;
            } else {
                c0 = &coeffs.subbands[base].re;
                c1 = &coeffs.subbands[base + 1].re;
                c2 = &coeffs.subbands[base + 2].re;
                c3 = &coeffs.subbands[base + 3].re;
            }
            t00[j][b] = (*c0 + *c2) * kInvSqrt2;
            t11[j][b] = (*c2 - *c0) * kInvSqrt2;
            t01[j][b] = (*c1 + *c3) * kInvSqrt2;
            t10[j][b] = (*c1 - *c3) * kInvSqrt2;
        }
    }
    auto ptrs = [](const std::vector<LevelBands>& v) {
        std::vector<const LevelBands*> p;
        for (const auto& l : v) p.push_back(&l);
        return p;
    };
    RealGrid x = inverse_tree(ptrs(t00), coeffs.lowpass[0], fs.trees[0], fs.trees[0]);
    x += inverse_tree(ptrs(t01), coeffs.lowpass[1], fs.trees[0], fs.trees[1]);
    x += inverse_tree(ptrs(t10), coeffs.lowpass[2], fs.trees[1], fs.trees[0]);
    x += inverse_tree(ptrs(t11), coeffs.lowpass[3], fs.trees[1], fs.trees[1]);
    x *= 0.5;
    return x;
}

RealGrid delta_response(TransformKind kind, int levels, const SubbandSelector& sel, std::size_t row, std::size_t col,
                        std::size_t width, std::size_t height) {
    WaveletCoeffs c = zero_coeffs(kind, levels, width, height);
    Subband& s = c.find(sel.level, sel.orientation, sel.tree);
    if (row >= s.re.height() || col >= s.re.width())
        throw ArgumentError("position (" + std::to_string(row) + ", " + std::to_string(col) +
                            ") outside subband of size " + std::to_string(s.re.height()) + "x" +
                            std::to_string(s.re.width()));
    if (sel.imaginary && !s.is_complex()) throw ArgumentError("imaginary part requested for a real subband");
    (sel.imaginary ? s.im : s.re)(row, col) = 1.0;
    return inverse(c);
}

Image atom(TransformKind kind, int levels, const SubbandSelector& sel, std::size_t row, std::size_t col,
           std::size_t width, std::size_t height) {
    RealGrid g = delta_response(kind, levels, sel, row, col, width, height);
    const double n = l2_norm(g);
    if (n == 0.0) throw NumericalError("atom has zero norm");
    g *= 1.0 / n;
    return Image(std::move(g));
}

namespace {

std::vector<SubbandSelector> selectors(TransformKind kind, int level, bool diagonal_only) {
    std::vector<SubbandSelector> out;
    for (const auto& label : orientation_labels(kind)) {
        if (diagonal_only && !is_diagonal(label)) continue;
        for (int t = 0; t < parts_per_orientation(kind); ++t) {
            out.push_back({level, label, t, false});
            if (is_complex(kind)) out.push_back({level, label, t, true});
        }
    }
    return out;
}

}  // namespace

std::vector<SubbandSelector> diagonal_selectors(TransformKind kind, int level) { return selectors(kind, level, true); }
std::vector<SubbandSelector> all_selectors(TransformKind kind, int level) { return selectors(kind, level, false); }

std::vector<double> wavelet_1d(TransformKind kind, int tree, int level, std::size_t channel, std::size_t length,
                               std::size_t position) {
    if (level < 1 || (length >> level) == 0 || (length >> level) << level != length)
        throw DimensionError("length must be divisible by 2^level");
    const FilterSet& fs = builtin_filters(kind);
    if (tree < 0 || tree >= static_cast<int>(fs.trees.size())) throw ArgumentError("tree index out of range");
    const TreeFilters& tf = fs.trees[static_cast<std::size_t>(tree)];
    if (channel >= tf.first.channel_count()) throw ArgumentError("channel out of range");
    std::vector<double> y(length >> level, 0.0);
    if (position >= y.size()) throw ArgumentError("position out of range");
    y[position] = 1.0;
    for (int j = level; j >= 1; --j) {
        const Taps& h = tf.at_level(j).channels[j == level ? channel : 0];
        std::vector<double> x(y.size() * 2, 0.0);
        for (std::size_t k = 0; k < y.size(); ++k)
            for (std::size_t n = 0; n < h.size(); ++n) x[(2 * k + n) % x.size()] += h[n] * y[k];
        y = std::move(x);
    }
    return y;
}

}  // namespace oversparse
