#include "oversparse/recon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "oversparse/error.hpp"
#include "oversparse/fft.hpp"

namespace oversparse {

void ReconParams::validate() const {
    if (levels < 1 || levels > 30) throw ArgumentError("levels must lie in [1, 30]");
    if (lambda && !(*lambda >= 0.0 && std::isfinite(*lambda))) throw ArgumentError("lambda must be finite and >= 0");
    if (!(lambda_factor >= 0.0 && std::isfinite(lambda_factor)))
        throw ArgumentError("lambda factor must be finite and >= 0");
    if (!(final_fraction >= 0.0 && final_fraction <= 1.0)) throw ArgumentError("decay fraction must lie in [0, 1]");
    if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be positive");
    if (max_iter < 1) throw ArgumentError("max_iter must be at least 1");
}

double soft_threshold(double y, double lambda) {
    if (y > lambda) return y - lambda;
    if (y < -lambda) return y + lambda;
    return 0.0;
}

WaveletCoeffs threshold_coeffs(WaveletCoeffs coeffs, double lambda) {
    if (!(lambda >= 0.0)) throw ArgumentError("lambda must be non-negative");
    if (lambda == 0.0) return coeffs;
    for (auto& s : coeffs.subbands) {
        if (s.is_complex()) {
            for (std::size_t i = 0; i < s.re.size(); ++i) {
                const double mag = std::hypot(s.re[i], s.im[i]);
                const double f = mag > lambda ? (mag - lambda) / mag : 0.0;
                s.re[i] *= f;
                s.im[i] *= f;
            }
        } else {
            for (auto& v : s.re.values()) v = soft_threshold(v, lambda);
        }
    }
    return coeffs;
}

namespace {

template <typename T>
Grid<T> consistency(const Grid<T>& current, const Grid<T>& measured, const SamplingMask& mask) {
    if (!current.same_shape(measured) || current.width() != mask.width() || current.height() != mask.height())
        throw DimensionError("iterate, measurements and mask shapes differ");
    Grid<T> out = current;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (mask.kept[i]) out[i] = measured[i];
    return out;
}

template <typename T>
double relative_change(const Grid<T>& next, const Grid<T>& prev) {
    double diff = 0.0, base = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
        diff += std::norm(next[i] - prev[i]);
        base += std::norm(prev[i]);
    }
    if (base == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::sqrt(diff / base);
}

double rmse(const RealGrid& a, const RealGrid& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s / static_cast<double>(a.size()));
}

}  // namespace

ComplexGrid data_consistency(const ComplexGrid& current, const Measurements& y) {
    if (y.domain != Domain::Frequency) throw ArgumentError("frequency iterate with physical measurements");
    return consistency(current, y.spectrum, y.mask);
}

RealGrid data_consistency(const RealGrid& current, const Measurements& y) {
    if (y.domain != Domain::Physical) throw ArgumentError("physical iterate with frequency measurements");
    return consistency(current, y.pixels, y.mask);
}

double scheduled_lambda(const ReconParams& params, double lambda0, int iteration) {
    if (params.schedule == LambdaSchedule::Fixed || params.max_iter <= 1) return lambda0;
    const double t = static_cast<double>(iteration - 1) / static_cast<double>(params.max_iter - 1);
    return lambda0 * (1.0 - (1.0 - params.final_fraction) * std::min(1.0, t));
}

RealGrid zero_filled_image(const Measurements& meas) {
    return meas.domain == Domain::Frequency ? real_part(ifft2(meas.spectrum)) : meas.pixels;
}

ReconResult pocs_reconstruct(const Measurements& meas, const ReconParams& params, const Image* reference) {
    params.validate();
    if (meas.domain != params.domain)
        throw ArgumentError("measurements are in the " + std::string(to_string(meas.domain)) +
                            " domain but reconstruction was asked for " + std::string(to_string(params.domain)));
    const std::size_t W = meas.mask.width(), H = meas.mask.height();
    validate_shape(W, H, params.levels);
    if (reference && (reference->width() != W || reference->height() != H))
        throw DimensionError("reference image shape differs from the measurements");

    ReconResult result;
    result.params = params;

    const RealGrid x0 = zero_filled_image(meas);
    const double lambda0 = params.lambda ? *params.lambda
                                         : params.lambda_factor * forward(x0, params.kind, params.levels).max_detail_magnitude();
    if (!std::isfinite(lambda0)) throw NumericalError("threshold is not finite");
    result.lambda = lambda0;

    auto shrink = [&](const RealGrid& x, int it) {
        return inverse(threshold_coeffs(forward(x, params.kind, params.levels), scheduled_lambda(params, lambda0, it)));
    };
    auto record = [&](double change, const RealGrid& image) {
        if (!std::isfinite(change)) throw NumericalError("reconstruction diverged at iteration " +
                                                         std::to_string(result.trace.size() + 1));
        result.trace.push_back(change);
        if (reference) result.rmse_trace.push_back(rmse(image, reference->pixels));
    };

    if (meas.domain == Domain::Frequency) {
        ComplexGrid X = meas.spectrum;
        RealGrid image = x0;
        for (int it = 1; it <= params.max_iter; ++it) {
            ComplexGrid next = data_consistency(fft2(shrink(real_part(ifft2(X)), it)), meas);
            const double change = relative_change(next, X);
            X = std::move(next);
            const ComplexGrid spatial = ifft2(X);
            image = real_part(spatial);
            result.discarded_imag_energy = squared_norm(imag_part(spatial));
            record(change, image);
            if (change < params.epsilon) {
                result.converged = true;
                break;
            }
        }
        result.image = Image(std::move(image), meas.scale);
    } else {
        RealGrid X = meas.pixels;
        for (int it = 1; it <= params.max_iter; ++it) {
            RealGrid next = data_consistency(shrink(X, it), meas);
            const double change = relative_change(next, X);
            X = std::move(next);
            record(change, X);
            if (change < params.epsilon) {
                result.converged = true;
                break;
            }
        }
        result.image = Image(std::move(X), meas.scale);
    }
    result.iterations = static_cast<int>(result.trace.size());
    return result;
}

}  // namespace oversparse
