#pragma once

#include <cstdint>
#include <random>

namespace qjump {

/// Fixed 64-bit mixing of a global seed with a trajectory index (splitmix64
/// finalizer). Trajectory streams are independent of scheduling: results only
/// depend on (global_seed, index).
inline std::uint64_t mix_seed(std::uint64_t global_seed, std::uint64_t index) {
    std::uint64_t z = global_seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Uniform doubles in [0,1) with platform-independent output.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

} // namespace qjump
