#pragma once

#include <cstdint>
#include <random>

namespace ilmsa {

/// Deterministic uniform sampling on top of mt19937_64. The standard
/// distributions are implementation-defined, so benchmark seeds would not be
/// portable through them; this maps the raw 64-bit stream directly.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace ilmsa
