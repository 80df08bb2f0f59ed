#pragma once

#include "hcont/polynomial.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hcont {

/// Exponent vectors of one polynomial: distinct and nonempty.
struct SupportSet {
    std::vector<ExponentVector> points;
};

struct LiftedSupport {
    SupportSet base;
    std::vector<double> lifts;
};

/// Fine mixed cell of type (1, ..., 1): one edge (pair of point indices into
/// the corresponding support) per support, and the inner normal v such that
/// both edge points minimize <(v, 1), (p, lift(p))> over their support.
struct MixedCell {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<double> innerNormal;
    std::int64_t volume = 0; ///< |det(b_1 - a_1, ..., b_n - a_n)|
};

struct MixedSubdivision {
    std::vector<LiftedSupport> supports;
    std::vector<MixedCell> cells;
    std::uint64_t mixedVolume = 0;
    std::uint64_t seed = 0; ///< seed of the lifting actually used
};

/// Support i is the set of exponent vectors of polynomial i, sorted.
std::vector<SupportSet> extractSupports(const PolySystem& s);

/// Mixed cells of a random regular subdivision, by depth-first extension of
/// partial edge selections pruned with LP feasibility. Degenerate liftings
/// are retried with fresh seeds up to five times.
MixedSubdivision enumerateMixedCells(std::span<const SupportSet> supports, std::uint64_t seed);

/// Mixed volume of the supports of s. With stable = true every support is
/// augmented with the origin first, which bounds solutions with zero
/// coordinates too.
std::uint64_t mixedVolume(const PolySystem& s, bool stable, std::uint64_t seed);

std::uint64_t mixedVolume(std::span<const SupportSet> supports, bool stable, std::uint64_t seed);

/// |det| of a square integer matrix by fraction-free elimination.
/// Throws Error if an intermediate value overflows 128 bits.
std::int64_t integerAbsDeterminant(std::vector<std::vector<std::int64_t>> m);

} // namespace hcont
