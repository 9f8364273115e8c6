#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "oversparse/grid.hpp"

namespace oversparse {

/// Deterministic synthetic test images with values in [0, 1] (ValueScale::Unit).
///
///  - "phantom": piecewise-smooth scene of overlapping shaded ellipses at
///    random orientations over a gentle gradient, standing in for an MR slice.
///  - "texture": multi-octave value noise under two oriented gratings, the
///    photographic-style image (dense mid-frequency detail). Default of the CLI.
Image make_fixture(std::string_view name, std::size_t size = 256);

std::vector<std::string> fixture_names();

}  // namespace oversparse
