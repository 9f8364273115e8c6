#include "oversparse/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "oversparse/error.hpp"

namespace oversparse {

namespace {

void check_compatible(const Image& a, const Image& b) {
    if (!a.pixels.same_shape(b.pixels)) throw DimensionError("images differ in shape");
    if (a.scale != b.scale)
        throw ArgumentError(std::string("images differ in value scale (") + to_string(a.scale) + " vs " +
                            to_string(b.scale) + ")");
    if (a.pixels.empty()) throw DimensionError("empty image");
}

}  // namespace

double rms_error(const Image& ref, const Image& rec) {
    check_compatible(ref, rec);
    double s = 0.0;
    for (std::size_t i = 0; i < ref.pixels.size(); ++i) {
        const double d = ref.pixels[i] - rec.pixels[i];
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(ref.pixels.size()));
}

double rms(const Image& img) {
    if (img.pixels.empty()) throw DimensionError("empty image");
    return std::sqrt(squared_norm(img.pixels) / static_cast<double>(img.pixels.size()));
}

double snr_from_rms(double reference_rms, double rmse) {
    if (rmse == 0.0) return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(reference_rms / rmse);
}

double snr_db(const Image& ref, const Image& rec) { return snr_from_rms(rms(ref), rms_error(ref, rec)); }

TraceSummary trace_summary(const std::vector<double>& trace, double epsilon) {
    if (trace.empty()) throw ArgumentError("empty convergence trace");
    TraceSummary s;
    s.final_change = trace.back();
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace[i] < 10.0 * epsilon) {
            s.knee = static_cast<int>(i) + 1;
            break;
        }
    }
    if (s.knee > 0) {
        s.monotone_after_knee = true;
        for (std::size_t i = static_cast<std::size_t>(s.knee); i < trace.size(); ++i)
            if (trace[i] > trace[i - 1]) s.monotone_after_knee = false;
    }
    return s;
}

}  // namespace oversparse
