#pragma once

#include <cstdint>
#include <random>

namespace semfeat {

/// Seeded generator with portable output.
///
/// Wraps std::mt19937_64, whose sequence is fixed by the C++ standard, and
/// maps raw 64-bit draws to reals and integers with explicit arithmetic
/// instead of the implementation-defined <random> distributions. A given seed
/// yields the same stream on every conforming toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi] (inclusive), unbiased by rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via the Box-Muller transform (one value per call).
    double normal();

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; decorrelates per-sample seeds derived from one base seed.
std::uint64_t mix_seed(std::uint64_t value);

/// Seed of sample `index` under `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return mix_seed(base + 0x9e3779b97f4a7c15ULL * (index + 1));
}

}  // namespace semfeat
