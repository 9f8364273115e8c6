#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "oversparse/kind.hpp"

namespace oversparse {

/// Analysis taps of a decimate-by-two filter bank. Channel 0 is the lowpass.
///
/// Taps act by periodic correlation, y[k] = sum_n taps[n] x[(2k + n) mod N].
/// Synthesis is the adjoint of analysis (equivalently, convolution with the
/// time-reversed taps), which reconstructs exactly because every built-in bank
/// is a tight frame.
struct FilterBank {
    std::vector<std::vector<double>> channels;

    std::size_t channel_count() const noexcept { return channels.size(); }
    std::size_t length() const noexcept;
    const std::vector<double>& lowpass() const { return channels.front(); }
};

/// Filters used by one tree: `first` at level 1, `later` at every coarser level.
struct TreeFilters {
    FilterBank first;
    FilterBank later;

    const FilterBank& at_level(int level) const { return level <= 1 ? first : later; }
};

/// All filters needed by a transform kind: one tree, or two trees (h, g) for
/// the dual-tree constructions.
struct FilterSet {
    TransformKind kind{};
    std::vector<TreeFilters> trees;
};

/// Embedded coefficient tables, projected onto exact perfect reconstruction.
/// Returns a reference to a process-wide immutable instance.
const FilterSet& builtin_filters(TransformKind kind);

/// The raw text resource the tables are parsed from.
std::string_view builtin_filter_table();

struct FilterTableEntry {
    std::string set;
    std::string stage;
    std::string tree;
    std::string band;
    std::vector<double> taps;
};

/// Parses the `<set> <stage> <tree> <band> <taps>` text format. Blank lines and
/// lines starting with '#' are skipped. Throws ParseError on malformed lines.
std::vector<FilterTableEntry> parse_filter_table(std::string_view text);

/// Largest violation of the tight-frame conditions
///   sum_i sum_n h_i[n] h_i[n+k]        = 2 delta[k]
///   sum_i sum_n (-1)^n h_i[n] h_i[n+k] = 0
/// over all lags k.
double tight_frame_defect(const FilterBank& bank);

/// Minimum-norm Gauss-Newton correction of the nonzero taps until the bank is
/// a tight frame with vanishing highpass DC gain (to machine precision).
/// Zero taps stay zero. Used to lift tables published with few decimals.
FilterBank project_to_tight_frame(const FilterBank& bank, int max_iterations = 8);

}  // namespace oversparse
