#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "oversparse/filters.hpp"
#include "oversparse/grid.hpp"
#include "oversparse/kind.hpp"

namespace oversparse {

/// One detail subband. Real kinds leave `im` empty.
///
/// `orientation` names the column (vertical) filter first, then the row
/// filter: "HL" is highpass down the columns and lowpass along rows. Two-channel
/// banks use L/H, three-channel banks L/H1/H2.
///
/// `tree` distinguishes subbands sharing a level and orientation: always 0 for
/// DWT and DD_DWT; 0/1 for the two complex subbands (the +45 and -45 style
/// orientation pair) of the complex kinds; 0..3 for the four real
/// combinations of DD_DT_REAL.
struct Subband {
    int level = 1;
    std::string orientation;
    int tree = 0;
    RealGrid re;
    RealGrid im;

    bool is_complex() const noexcept { return !im.empty(); }
};

struct WaveletCoeffs {
    TransformKind kind{};
    int levels = 0;
    std::size_t width = 0;
    std::size_t height = 0;
    /// Ordered by level (finest first), then orientation, then tree.
    std::vector<Subband> subbands;
    /// Lowpass residual of each tree pair (1 for single-tree kinds, 4 otherwise).
    std::vector<RealGrid> lowpass;

    Subband& find(int level, const std::string& orientation, int tree = 0);
    const Subband& find(int level, const std::string& orientation, int tree = 0) const;

    /// Real values held, counting a complex coefficient as two.
    std::size_t coefficient_count() const;
    /// Sum of squares over every coefficient, lowpass included.
    double energy() const;
    /// Largest detail magnitude (complex magnitude for complex subbands).
    double max_detail_magnitude() const;

    WaveletCoeffs& operator*=(double s);
};

/// Checks dimensions for a transform with `levels` levels. Throws DimensionError
/// or ArgumentError.
void validate_shape(std::size_t width, std::size_t height, int levels);

/// Exact real-coefficient count of `forward` for a width x height image.
std::size_t expected_coefficient_count(TransformKind kind, int levels, std::size_t width, std::size_t height);

/// All-zero coefficients with the layout `forward` produces.
WaveletCoeffs zero_coeffs(TransformKind kind, int levels, std::size_t width, std::size_t height);

WaveletCoeffs forward(const RealGrid& image, TransformKind kind, int levels);
inline WaveletCoeffs forward(const Image& image, TransformKind kind, int levels) {
    return forward(image.pixels, kind, levels);
}

RealGrid inverse(const WaveletCoeffs& coeffs);

/// Orientation labels of one level in storage order.
std::vector<std::string> orientation_labels(TransformKind kind);

/// True when neither filter of `orientation` is the lowpass ("HH", "H1H2", ...).
bool is_diagonal(const std::string& orientation);

struct SubbandSelector {
    int level = 1;
    std::string orientation;
    int tree = 0;
    bool imaginary = false;
};

/// Inverse transform of a single unit coefficient at (row, col) of the selected
/// subband, not normalized.
RealGrid delta_response(TransformKind kind, int levels, const SubbandSelector& sel, std::size_t row, std::size_t col,
                        std::size_t width, std::size_t height);

/// `delta_response` scaled to unit Euclidean norm: one dictionary atom.
Image atom(TransformKind kind, int levels, const SubbandSelector& sel, std::size_t row, std::size_t col,
           std::size_t width, std::size_t height);

/// Every real-valued component of the diagonal (HH-type) subbands at `level`.
std::vector<SubbandSelector> diagonal_selectors(TransformKind kind, int level);
/// Every real-valued component of every detail subband at `level`.
std::vector<SubbandSelector> all_selectors(TransformKind kind, int level);

/// 1-D synthesis of a unit coefficient placed in channel `channel` at level
/// `level` of tree `tree`, on a periodic signal of `length` samples. The
/// coefficient sits at index `position` of its subband. Used to inspect the
/// wavelets themselves (analyticity, inter-tree delay).
std::vector<double> wavelet_1d(TransformKind kind, int tree, int level, std::size_t channel, std::size_t length,
                               std::size_t position);

}  // namespace oversparse
