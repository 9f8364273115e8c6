#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "oversparse/kind.hpp"
#include "oversparse/sensing.hpp"
#include "oversparse/transforms.hpp"

namespace oversparse {

/// Largest N accepted by mutual_coherence_exact.
inline constexpr Eigen::Index kExactCoherenceMaxN = 4096;

/// sqrt(N) * max |<phi_k, psi_j>| over unit-normalised columns of an N x N
/// orthobasis phi and an N x K basis or frame psi.
///
/// Keeps the sqrt(N) factor, so an identical pair scores sqrt(N) and the
/// spike/Fourier pair scores 1. estimate_coherence_mc reports the unscaled
/// normalised Gram instead.
double mutual_coherence_exact(const Eigen::MatrixXcd& phi, const Eigen::MatrixXcd& psi);

struct CoherenceOptions {
    int levels = 3;
    int trials = 200;
    /// Distinct atoms per trial. Zero or anything at least the candidate count
    /// means every candidate in one batch (each trial is then identical).
    int batch = 16;
    /// Atoms come from the diagonal subbands of `level` by default, or from
    /// every detail subband of every level.
    int level = 1;
    bool all_subbands = false;
    std::uint64_t seed = 1;
};

struct CoherenceEstimate {
    TransformKind kind{};
    double ratio = 0.0;
    int trials = 0;
    int batch = 0;
    std::uint64_t seed = 0;
    /// Per-trial max off-diagonal magnitude of the normalised batch Gram.
    std::vector<double> v;
    double mu_tilde = 0.0;
    /// Draws discarded because the atom vanished under the mask.
    int rejected = 0;
};

/// Monte-Carlo coherence of the dictionary `kind` under the masked unitary DFT.
///
/// Each trial draws `batch` distinct atoms (subband, position), measures them
/// (A = W R F psi^T, W normalising every column), and records the largest
/// off-diagonal |A^H A| entry. Trials use seeds derived from options.seed, so
/// the result does not depend on evaluation order.
CoherenceEstimate estimate_coherence_mc(TransformKind kind, std::size_t width, std::size_t height,
                                        const SamplingMask& mask, const CoherenceOptions& options);

enum class RipMethod { Exhaustive, Randomized };

/// Largest number of subsets the exhaustive RIP probe will enumerate.
inline constexpr std::uint64_t kRipExhaustiveLimit = 2'000'000;

struct RipEstimate {
    int sparsity = 0;
    std::uint64_t trials = 0;
    double delta = 0.0;
    RipMethod method = RipMethod::Exhaustive;
};

/// delta_S = max(1 - s_min^2, s_max^2 - 1) over S-column submatrices with
/// unit-normalised columns: all of them (exhaustive) or `trials` random ones
/// (randomized, a lower bound on the exhaustive value).
RipEstimate estimate_rip(const Eigen::MatrixXd& a, int sparsity, RipMethod method, std::uint64_t trials = 0,
                         std::uint64_t seed = 1);

/// n choose k, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace oversparse
