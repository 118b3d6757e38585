#pragma once

#include <cstdint>

namespace lqrl {

// splitmix64 generator. Output is bit-identical across platforms and
// standard libraries; the byte-reproducibility contract of every seeded
// artifact relies on that.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 bits of mantissa.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Rademacher +-1 draw (for SPSA perturbation vectors).
    double sign() { return (next() & 1u) ? 1.0 : -1.0; }

private:
    std::uint64_t state_;
};

// Stateless mixing of a root seed with a stream index, so derived seeds
// (per-episode, per-purpose) are decorrelated but fully determined.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed ^ (0xD1B54A32D192ED03ull * (stream + 1)));
    return g.next();
}

}  // namespace lqrl
