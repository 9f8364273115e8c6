#pragma once

#include <optional>
#include <vector>

#include "oversparse/grid.hpp"
#include "oversparse/kind.hpp"
#include "oversparse/sensing.hpp"
#include "oversparse/transforms.hpp"

namespace oversparse {

inline constexpr double kDefaultLambdaFactor = 0.025;
inline constexpr double kDefaultEpsilon = 1e-3;
inline constexpr int kDefaultMaxIter = 100;
inline constexpr int kDefaultLevels = 3;

enum class LambdaSchedule { Fixed, LinearDecay };

struct ReconParams {
    TransformKind kind = TransformKind::DT_COMPLEX;
    int levels = kDefaultLevels;
    /// Absolute threshold. When unset, lambda_factor times the largest detail
    /// magnitude of the zero-filled estimate.
    std::optional<double> lambda;
    double lambda_factor = kDefaultLambdaFactor;
    LambdaSchedule schedule = LambdaSchedule::Fixed;
    /// Linear decay reaches lambda * final_fraction at iteration max_iter.
    double final_fraction = 0.1;
    double epsilon = kDefaultEpsilon;
    int max_iter = kDefaultMaxIter;
    Domain domain = Domain::Frequency;

    void validate() const;
};

struct ReconResult {
    Image image;
    int iterations = 0;
    /// Relative change ||X_{i+1} - X_i|| / ||X_i|| in the measurement domain.
    std::vector<double> trace;
    /// Per-iteration RMSE against the reference, when one was given.
    std::vector<double> rmse_trace;
    bool converged = false;
    /// Initial threshold actually used.
    double lambda = 0.0;
    /// Energy of the imaginary part dropped when the final frequency-domain
    /// iterate is taken back to a real image (0 in the physical domain).
    double discarded_imag_energy = 0.0;
    ReconParams params;
};

/// y + lambda below -lambda, 0 inside [-lambda, lambda], y - lambda above.
double soft_threshold(double y, double lambda);

/// Soft thresholding of every detail coefficient. Complex subbands shrink the
/// magnitude and keep the phase. Lowpass residuals are untouched.
WaveletCoeffs threshold_coeffs(WaveletCoeffs coeffs, double lambda);

/// Entries at kept mask positions come from the measurements, the rest from
/// `current`. Membership is decided by the mask, never by testing for zero.
ComplexGrid data_consistency(const ComplexGrid& current, const Measurements& y);
RealGrid data_consistency(const RealGrid& current, const Measurements& y);

/// Threshold in effect at 1-based iteration `iteration`.
double scheduled_lambda(const ReconParams& params, double lambda0, int iteration);

/// POCS soft-thresholding reconstruction. Throws NumericalError when the
/// iterate stops being finite.
ReconResult pocs_reconstruct(const Measurements& meas, const ReconParams& params,
                             const Image* reference = nullptr);

/// Inverse DFT (frequency) or copy (physical) of the zero-filled data.
RealGrid zero_filled_image(const Measurements& meas);

}  // namespace oversparse
