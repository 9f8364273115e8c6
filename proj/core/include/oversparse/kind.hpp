#pragma once

#include <array>
#include <string>
#include <string_view>

namespace oversparse {

/// The five transform configurations. The two DD_DT variants share one filter
/// bank and one coefficient layout; they differ only in how coefficients are
/// grouped when thresholded (independent reals vs. complex magnitudes).
enum class TransformKind { DWT, DT_COMPLEX, DD_DWT, DD_DT_REAL, DD_DT_COMPLEX };

inline constexpr std::array<TransformKind, 5> kAllKinds = {
    TransformKind::DWT, TransformKind::DT_COMPLEX, TransformKind::DD_DWT,
    TransformKind::DD_DT_REAL, TransformKind::DD_DT_COMPLEX};

/// Short CLI name: dwt, dt, dd, ddt-real, ddt-complex.
std::string_view to_string(TransformKind kind);

/// Display name as used in result tables ("DT-CoWT", "Co DD-DT-DWT", ...).
std::string_view display_name(TransformKind kind);

/// Accepts the short name or the display name (case-insensitive).
TransformKind parse_kind(std::string_view text);

/// Number of trees in the filter bank (1 for DWT/DD_DWT, 2 for dual-tree kinds).
int tree_count(TransformKind kind);

/// Channels per filter bank: 2 for the critically sampled kinds, 3 for double-density.
int channel_count(TransformKind kind);

/// True when subbands carry complex values (magnitude thresholding).
bool is_complex(TransformKind kind);

}  // namespace oversparse
