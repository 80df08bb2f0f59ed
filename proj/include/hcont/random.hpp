#pragma once

#include "hcont/scalar.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace hcont {

/// Seeded generator for every random choice in the library. Distributions
/// are computed by hand from raw 64-bit draws so results do not depend on
/// the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// exp(i theta), theta uniform in [0, 2 pi).
    Complex unitComplex() {
        const double theta = 2.0 * std::numbers::pi * uniform();
        return {std::cos(theta), std::sin(theta)};
    }

    /// Seed for an independent child generator.
    std::uint64_t split() { return engine_() ^ 0x9e3779b97f4a7c15ULL; }

private:
    std::mt19937_64 engine_;
};

} // namespace hcont
