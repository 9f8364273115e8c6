#pragma once

#include <cstdint>
#include <random>

namespace oversparse {

/// Portable random source. The engine is mt19937_64, whose output sequence is
/// fixed by the C++ standard; the uniform and normal variates are computed here
/// rather than through <random> distributions, which differ between standard
/// libraries. Same seed, same numbers, on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// Standard normal variate (Marsaglia polar method).
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer of base + stream * golden ratio: independent seeds for
/// trials and noise streams derived from one user seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace oversparse
