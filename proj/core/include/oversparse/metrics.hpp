#pragma once

#include <cstddef>
#include <vector>

#include "oversparse/grid.hpp"

namespace oversparse {

/// sqrt(mean((ref - rec)^2)) in the images' own value scale.
double rms_error(const Image& ref, const Image& rec);

/// Root mean square of the pixel values.
double rms(const Image& img);

/// 20 log10(rms(ref) / rms_error(ref, rec)). +infinity when the images are equal.
///
/// Both result tables this reproduces are consistent with exactly this
/// definition: every (RMSE, SNR) row implies the same reference RMS within a
/// table (about 0.227 for unit-range images, 177 for 8-bit ones).
double snr_db(const Image& ref, const Image& rec);

/// SNR from an RMSE and a reference RMS, the same formula as snr_db.
double snr_from_rms(double reference_rms, double rmse);

struct TraceSummary {
    /// First 1-based iteration whose change is below 10 * epsilon; 0 if none.
    int knee = 0;
    double final_change = 0.0;
    /// The trace never increases from the knee onward.
    bool monotone_after_knee = false;
};

/// Throws ArgumentError on an empty trace.
TraceSummary trace_summary(const std::vector<double>& trace, double epsilon);

}  // namespace oversparse
