#pragma once

#include "hcont/mixed_volume.hpp"
#include "hcont/polynomial.hpp"
#include "hcont/tracker.hpp"

#include <cstdint>
#include <vector>

namespace hcont {

/// x^{A_i} = c_i for every row A_i of an integer n x n matrix.
struct BinomialSystem {
    std::vector<std::vector<std::int64_t>> exponentMatrix;
    std::vector<Complex> rightHandSide;
};

/// Upper triangular H = U A with U unimodular, computed exactly.
struct HermiteForm {
    std::vector<std::vector<std::int64_t>> h;
    std::vector<std::vector<std::int64_t>> u;
};

/// Throws HermiteOverflowError when an entry overflows 128-bit arithmetic
/// and Error when A is singular.
HermiteForm hermiteForm(const std::vector<std::vector<std::int64_t>>& a);

/// All |det A| toric solutions. The equations are combined with U into the
/// triangular system y^H = c^U, which is solved by back substitution in
/// logarithmic coordinates taking every branch of each root.
std::vector<std::vector<Complex>> solveBinomialSystem(const BinomialSystem& b);

/// Everything produced by a two-stage polyhedral solve.
struct PolyhedralRun {
    MixedSubdivision subdivision;
    PolySystem randomSystem;              ///< same supports, random unit coefficients
    std::vector<PathResult> cellPaths;    ///< stage one: cells to the random system
    std::vector<std::size_t> pathCell;    ///< cell index of each stage-one path
    std::vector<PathResult> paths;        ///< stage two: random system to the target
};

/// Stage one tracks every cell's binomial start solutions to a random system
/// with the same supports through a polyhedral homotopy; stage two follows
/// a gamma-trick linear homotopy to s. Exactly mixedVolume paths are
/// returned, in cell order.
PolyhedralRun polyhedralTrack(const PolySystem& s, const TrackerSettings& cfg, unsigned tasks, std::uint64_t seed);

/// Endpoints of polyhedralTrack.
std::vector<SolutionPoint> polyhedralSolve(const PolySystem& s, const TrackerSettings& cfg, std::uint64_t seed,
                                           unsigned tasks = 1);

} // namespace hcont
